#include "ipdw/path_distance.hpp"

#include "ipdw/error.hpp"
#include "ipdw/parallel.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <utility>

namespace ipdw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Step {
  int dr;
  int dc;
  bool diagonal;
};

constexpr Step kSteps[8] = {{-1, 0, false}, {1, 0, false},  {0, -1, false}, {0, 1, false},
                            {-1, -1, true}, {-1, 1, true},  {1, -1, true},  {1, 1, true}};

std::string describe_failures(const std::vector<SnapFailure> &failures) {
  std::string msg = "no water cell within snap radius for point";
  msg += failures.size() == 1 ? " " : "s ";
  for (std::size_t i = 0; i < failures.size(); ++i) {
    if (i)
      msg += ", ";
    msg += std::to_string(failures[i].index);
  }
  return msg;
}

} // namespace

double edge_weight(double cost_a, double cost_b, double cellsize, bool diagonal) {
  const double step = diagonal ? std::numbers::sqrt2 : 1.0;
  return (cost_a + cost_b) / 2.0 * cellsize * step;
}

RasterGrid DistanceField::to_raster(double nodata) const {
  RasterGrid r(geometry, nodata, nodata);
  for (std::size_t i = 0; i < distance.size(); ++i)
    if (reachable[i])
      r.set(i, distance[i]);
  return r;
}

DistanceField distance_field(const CostSurface &cost, Cell source) {
  const GridGeometry &g = cost.geometry();
  if (source.row >= g.nrows || source.col >= g.ncols)
    throw ArgumentError("source cell (" + std::to_string(source.row) + ", " +
                        std::to_string(source.col) + ") is out of bounds");
  const std::size_t src = g.index(source);
  if (cost.is_nodata(src))
    throw ArgumentError("source cell (" + std::to_string(source.row) + ", " +
                        std::to_string(source.col) + ") is nodata");

  const RasterGrid &r = cost.raster();
  const auto nrows = static_cast<long long>(g.nrows);
  const auto ncols = static_cast<long long>(g.ncols);
  // Flanking cells that seal a diagonal move.
  auto blocks = [&](long long row, long long col) {
    const std::size_t i = static_cast<std::size_t>(row * ncols + col);
    return cost.is_land(i) || cost.is_nodata(i);
  };

  DistanceField field{source, g, std::vector<double>(g.size(), kInf),
                      std::vector<unsigned char>(g.size(), 0)};
  std::vector<double> &dist = field.distance;
  std::vector<unsigned char> settled(g.size(), 0);

  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  dist[src] = 0.0;
  queue.emplace(0.0, src);

  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (settled[u])
      continue;
    settled[u] = 1;
    const long long ur = static_cast<long long>(u) / ncols;
    const long long uc = static_cast<long long>(u) % ncols;
    const double cu = r.at(u);
    for (const Step &s : kSteps) {
      const long long vr = ur + s.dr;
      const long long vc = uc + s.dc;
      if (vr < 0 || vc < 0 || vr >= nrows || vc >= ncols)
        continue;
      const auto v = static_cast<std::size_t>(vr * ncols + vc);
      if (settled[v] || cost.is_nodata(v))
        continue;
      if (s.diagonal && blocks(ur, vc) && blocks(vr, uc))
        continue;
      const double nd = d + edge_weight(cu, r.at(v), g.cellsize, s.diagonal);
      if (nd < dist[v]) {
        dist[v] = nd;
        queue.emplace(nd, v);
      }
    }
  }

  const double threshold = cost.reachability_threshold();
  for (std::size_t i = 0; i < dist.size(); ++i)
    field.reachable[i] = dist[i] < threshold;
  return field;
}

std::optional<Cell> snap_to_water(const CostSurface &cost, double x, double y, int radius) {
  const GridGeometry &g = cost.geometry();
  const auto home = cell_of(g, x, y);
  if (!home)
    return std::nullopt;
  if (cost.is_water(g.index(*home)))
    return home;
  std::optional<Cell> best;
  double best_d2 = kInf;
  const auto hr = static_cast<long long>(home->row);
  const auto hc = static_cast<long long>(home->col);
  for (long long row = hr - radius; row <= hr + radius; ++row) {
    for (long long col = hc - radius; col <= hc + radius; ++col) {
      if (!g.in_bounds(row, col))
        continue;
      const Cell c{static_cast<std::size_t>(row), static_cast<std::size_t>(col)};
      if (!cost.is_water(g.index(c)))
        continue;
      const Point2 p = center_of(g, c);
      const double d2 = (p.x - x) * (p.x - x) + (p.y - y) * (p.y - y);
      if (d2 < best_d2) {
        best_d2 = d2;
        best = c;
      }
    }
  }
  return best;
}

SnapError::SnapError(std::vector<SnapFailure> failures)
    : InputError(describe_failures(failures)), failures_(std::move(failures)) {}

std::vector<Cell> snap_points(const CostSurface &cost, const PointSet &points, int radius) {
  if (radius < 0)
    throw ArgumentError("snap radius must be non-negative");
  std::vector<Cell> cells;
  cells.reserve(points.size());
  std::vector<SnapFailure> failures;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (auto c = snap_to_water(cost, points[i].x, points[i].y, radius)) {
      cells.push_back(*c);
    } else {
      failures.push_back({i, {points[i].x, points[i].y}});
      cells.push_back({});
    }
  }
  if (!failures.empty())
    throw SnapError(std::move(failures));
  return cells;
}

std::vector<DistanceField> distances_to_cells(const CostSurface &cost,
                                              const std::vector<Cell> &sources, unsigned threads) {
  std::vector<DistanceField> fields(sources.size());
  parallel_for(sources.size(), threads,
               [&](std::size_t i) { fields[i] = distance_field(cost, sources[i]); });
  return fields;
}

std::vector<DistanceField> distances_to_points(const CostSurface &cost, const PointSet &points,
                                               int snap_radius, unsigned threads) {
  return distances_to_cells(cost, snap_points(cost, points, snap_radius), threads);
}

} // namespace ipdw
