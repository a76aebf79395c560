#pragma once

#include "ipdw/cost_surface.hpp"
#include "ipdw/error.hpp"
#include "ipdw/raster.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace ipdw {

// Accumulated least-cost distances from one source cell to every cell.
// Unvisited (disconnected or nodata) cells hold +infinity in `distance`.
struct DistanceField {
  Cell source;
  GridGeometry geometry;
  std::vector<double> distance;
  std::vector<unsigned char> reachable;

  double at(Cell c) const { return distance[geometry.index(c)]; }
  bool is_reachable(Cell c) const { return reachable[geometry.index(c)] != 0; }

  // Distances as a raster; unreachable cells become nodata.
  RasterGrid to_raster(double nodata = kDefaultNoData) const;
};

// Weight of the edge between two neighbours: mean cost times step length.
// `diagonal` selects the sqrt(2) step.
double edge_weight(double cost_a, double cost_b, double cellsize, bool diagonal);

// Dijkstra over the 8-connected grid. Diagonals are blocked when both
// flanking orthogonal cells are land; nodata cells are never entered.
// Throws ArgumentError when the source is out of bounds or nodata.
DistanceField distance_field(const CostSurface &cost, Cell source);

inline constexpr int kDefaultSnapRadius = 2;

// Cell of a water center nearest to (x, y) within `radius` cells of the
// containing cell; ties resolve to the first in row-major order.
std::optional<Cell> snap_to_water(const CostSurface &cost, double x, double y,
                                  int radius = kDefaultSnapRadius);

struct SnapFailure {
  std::size_t index;
  Point2 location;
};

class SnapError : public InputError {
public:
  explicit SnapError(std::vector<SnapFailure> failures);
  const std::vector<SnapFailure> &failures() const { return failures_; }

private:
  std::vector<SnapFailure> failures_;
};

// Snaps every point; throws SnapError listing every point that failed.
std::vector<Cell> snap_points(const CostSurface &cost, const PointSet &points,
                              int radius = kDefaultSnapRadius);

// One field per point, in input order. Fields are computed in parallel
// over `threads` workers; results do not depend on the thread count.
std::vector<DistanceField> distances_to_points(const CostSurface &cost, const PointSet &points,
                                               int snap_radius = kDefaultSnapRadius,
                                               unsigned threads = 1);

std::vector<DistanceField> distances_to_cells(const CostSurface &cost,
                                              const std::vector<Cell> &sources,
                                              unsigned threads = 1);

} // namespace ipdw
