#pragma once

#include "ipdw/cost_surface.hpp"
#include "ipdw/path_distance.hpp"
#include "ipdw/raster.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace ipdw {

struct NearestN {
  std::size_t n = 10;
};
struct MaxDistance {
  double meters = 0.0;
};
struct AllPoints {};

using Neighborhood = std::variant<NearestN, MaxDistance, AllPoints>;

// Shared by both distance flavours so the two methods cannot drift apart.
struct InterpConfig {
  double power = 2.0;
  Neighborhood neighborhood = NearestN{};
  bool exact_at_zero = true;
  int snap_radius = kDefaultSnapRadius;
  unsigned threads = 1;

  void validate() const;
  std::string describe() const;
};

struct Neighbor {
  double distance = 0.0;
  double value = 0.0;
};

struct Prediction {
  double value = 0.0;
  std::size_t n_neighbors_used = 0;
  double min_neighbor_distance = 0.0;
};

// Applies the neighbourhood filter in place: keeps the n nearest (ties by
// original order) or those within the distance limit.
void select_neighbors(std::vector<Neighbor> &neighbors, const Neighborhood &hood);

// Weighted mean of values with weights distance^-power over the filtered
// neighbourhood. Returns nullopt when nothing survives the filter.
std::optional<Prediction> idw_estimate(std::span<const Neighbor> neighbors,
                                       const InterpConfig &config);

// Barrier-aware estimate: distances are least-cost paths through `cost`.
// Land, nodata and cells with no reachable neighbour are nodata.
RasterGrid interpolate_ipdw(const PointSet &points, const CostSurface &cost,
                            const InterpConfig &config);

// Same, from precomputed fields (one per entry of `points`, e.g. after
// merging coincident points).
RasterGrid interpolate_ipdw(const PointSet &points, std::span<const DistanceField> fields,
                            const CostSurface &cost, const InterpConfig &config);

// Straight-line estimate. With a mask, land/nodata cells are written as
// nodata but never influence distances.
RasterGrid interpolate_idw(const PointSet &points, const GridGeometry &geometry,
                           const CostSurface *mask, const InterpConfig &config);

// Points sharing a snapped cell collapse to one point at the first
// member's location carrying the mean value.
struct MergedPoints {
  PointSet points;
  std::vector<Cell> cells;
};
MergedPoints merge_by_cell(const PointSet &points, const std::vector<Cell> &cells);

// Points with identical coordinates collapse to their mean value.
PointSet merge_coincident(const PointSet &points);

} // namespace ipdw
