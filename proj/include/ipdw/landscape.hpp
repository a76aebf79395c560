#pragma once

#include "ipdw/cost_surface.hpp"
#include "ipdw/raster.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ipdw {

// Land/water boundary length (m) per hectare of valid landscape, counting
// rook-adjacent pairs of differing valid cells. The raster perimeter is not an edge.
double edge_density(const CostSurface &cost);

// Number of rook-adjacent valid cell pairs whose values differ.
std::size_t count_class_edges(const RasterGrid &raster);

struct ScalogramRow {
  double cellsize = 0.0;
  double metric_value = 0.0;
};

struct Scalogram {
  std::string metric_name = "edge_density";
  std::string units = "m/ha";
  std::vector<ScalogramRow> rows;
};

Scalogram scalogram(const PolygonSet &polygons, const Extent &extent,
                    std::vector<double> cellsizes, unsigned threads = 1);

struct KneeCandidate {
  double cellsize = 0.0;
  double score = 0.0; // |second difference| at the candidate row
  bool flat = false;  // every second difference is zero
};

// Row with the largest absolute second difference of the metric. Ties
// (within 1e-9 relative) go to the coarser cellsize. Advisory only.
std::optional<KneeCandidate> knee_candidate(const Scalogram &s);

} // namespace ipdw
