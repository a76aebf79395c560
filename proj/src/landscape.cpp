#include "ipdw/landscape.hpp"

#include "ipdw/error.hpp"
#include "ipdw/parallel.hpp"
#include "ipdw/simd/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace ipdw {

std::size_t count_class_edges(const RasterGrid &raster) {
  const GridGeometry &g = raster.geometry();
  const std::span<const double> v = raster.values();
  const double nd = raster.nodata();
  std::size_t edges = 0;
  for (std::size_t row = 0; row < g.nrows; ++row) {
    const std::span<const double> line = v.subspan(row * g.ncols, g.ncols);
    // Horizontal neighbours: the row against itself shifted by one.
    edges += simd::count_differing_pairs(line.first(g.ncols - 1), line.subspan(1), nd);
    if (row + 1 < g.nrows)
      edges += simd::count_differing_pairs(line, v.subspan((row + 1) * g.ncols, g.ncols), nd);
  }
  return edges;
}

double edge_density(const CostSurface &cost) {
  const RasterGrid &r = cost.raster();
  const std::size_t valid = r.count_valid();
  if (valid == 0)
    throw ArgumentError("edge density needs at least one valid cell");
  const double cs = r.geometry().cellsize;
  const double edge_m = static_cast<double>(count_class_edges(r)) * cs;
  const double area_ha = static_cast<double>(valid) * cs * cs / 10000.0;
  return edge_m / area_ha;
}

Scalogram scalogram(const PolygonSet &polygons, const Extent &extent,
                    std::vector<double> cellsizes, unsigned threads) {
  if (cellsizes.empty())
    throw ArgumentError("scalogram needs at least one cellsize");
  for (double cs : cellsizes)
    if (!(cs > 0.0) || !std::isfinite(cs))
      throw ArgumentError("scalogram cellsizes must be positive");
  polygons.validate();
  std::sort(cellsizes.begin(), cellsizes.end());
  if (std::adjacent_find(cellsizes.begin(), cellsizes.end()) != cellsizes.end())
    throw ArgumentError("scalogram cellsizes must be distinct");

  Scalogram s;
  s.rows.resize(cellsizes.size());
  parallel_for(cellsizes.size(), threads, [&](std::size_t i) {
    const CostSurface cost = rasterize_land(polygons, extent.grid(cellsizes[i]));
    s.rows[i] = {cellsizes[i], edge_density(cost)};
  });
  return s;
}

std::optional<KneeCandidate> knee_candidate(const Scalogram &s) {
  if (s.rows.size() < 3)
    return std::nullopt;
  double magnitude = 0.0;
  for (const ScalogramRow &r : s.rows)
    magnitude = std::max(magnitude, std::abs(r.metric_value));
  const double tol = 1e-9 * magnitude;

  KneeCandidate best{s.rows[1].cellsize, -1.0, false};
  for (std::size_t i = 1; i + 1 < s.rows.size(); ++i) {
    const double second =
        s.rows[i + 1].metric_value - 2.0 * s.rows[i].metric_value + s.rows[i - 1].metric_value;
    const double score = std::abs(second);
    if (score > best.score + tol) {
      best = {s.rows[i].cellsize, score, false};
    } else if (score >= best.score - tol) {
      // Coarser rows win ties.
      best.cellsize = s.rows[i].cellsize;
      best.score = std::max(best.score, score);
    }
  }
  best.flat = best.score <= tol;
  return best;
}

} // namespace ipdw
