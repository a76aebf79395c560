#include "ipdw/interpolation.hpp"

#include "ipdw/error.hpp"
#include "ipdw/parallel.hpp"
#include "ipdw/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

namespace ipdw {

void InterpConfig::validate() const {
  if (!(power > 0.0) || !std::isfinite(power))
    throw ArgumentError("power must be positive and finite");
  if (const auto *nn = std::get_if<NearestN>(&neighborhood); nn && nn->n == 0)
    throw ArgumentError("nearest-n neighbourhood needs n >= 1");
  if (const auto *md = std::get_if<MaxDistance>(&neighborhood);
      md && (!(md->meters > 0.0) || !std::isfinite(md->meters)))
    throw ArgumentError("max-distance neighbourhood needs a positive radius");
  if (snap_radius < 0)
    throw ArgumentError("snap radius must be non-negative");
}

std::string InterpConfig::describe() const {
  std::ostringstream out;
  out << "power=" << power << " neighborhood=";
  std::visit(
      [&](const auto &h) {
        using T = std::decay_t<decltype(h)>;
        if constexpr (std::is_same_v<T, NearestN>)
          out << "nearest:" << h.n;
        else if constexpr (std::is_same_v<T, MaxDistance>)
          out << "max-distance:" << h.meters;
        else
          out << "all";
      },
      neighborhood);
  out << " exact_at_zero=" << (exact_at_zero ? "on" : "off") << " snap_radius=" << snap_radius;
  return out.str();
}

void select_neighbors(std::vector<Neighbor> &neighbors, const Neighborhood &hood) {
  if (const auto *nn = std::get_if<NearestN>(&hood)) {
    if (neighbors.size() > nn->n) {
      std::stable_sort(neighbors.begin(), neighbors.end(),
                       [](const Neighbor &a, const Neighbor &b) { return a.distance < b.distance; });
      neighbors.resize(nn->n);
    }
  } else if (const auto *md = std::get_if<MaxDistance>(&hood)) {
    std::erase_if(neighbors, [limit = md->meters](const Neighbor &n) { return n.distance > limit; });
  }
}

std::optional<Prediction> idw_estimate(std::span<const Neighbor> neighbors,
                                       const InterpConfig &config) {
  std::vector<Neighbor> hood;
  hood.reserve(neighbors.size());
  for (const Neighbor &n : neighbors) {
    if (!(n.distance >= 0.0) || !std::isfinite(n.value))
      throw ArgumentError("neighbour distances must be >= 0 and values finite");
    // Without exactness a coincident measurement cannot be weighted; leave it out.
    if (n.distance == 0.0 && !config.exact_at_zero)
      continue;
    hood.push_back(n);
  }
  select_neighbors(hood, config.neighborhood);
  if (hood.empty())
    return std::nullopt;

  Prediction p;
  p.n_neighbors_used = hood.size();
  p.min_neighbor_distance = std::numeric_limits<double>::infinity();
  double lo = hood.front().value, hi = hood.front().value;
  double zero_sum = 0.0;
  std::size_t zero_count = 0;
  for (const Neighbor &n : hood) {
    p.min_neighbor_distance = std::min(p.min_neighbor_distance, n.distance);
    lo = std::min(lo, n.value);
    hi = std::max(hi, n.value);
    if (n.distance == 0.0) {
      zero_sum += n.value;
      ++zero_count;
    }
  }
  if (zero_count > 0) {
    p.value = zero_sum / static_cast<double>(zero_count);
    return p;
  }

  std::vector<double> dist(hood.size()), vals(hood.size());
  for (std::size_t i = 0; i < hood.size(); ++i) {
    dist[i] = hood[i].distance;
    vals[i] = hood[i].value;
  }
  const simd::WeightedSums s = simd::inverse_power_sums(dist, vals, config.power);
  const double v = s.numerator / s.denominator;
  if (!std::isfinite(v))
    throw ConsistencyError("inverse-distance weights under- or overflowed (denominator " +
                           std::to_string(s.denominator) + ")");
  const double slack = 1e-12 * (std::abs(lo) + std::abs(hi) + (hi - lo));
  if (v < lo - slack || v > hi + slack)
    throw ConsistencyError("estimate " + std::to_string(v) + " escapes neighbour range [" +
                           std::to_string(lo) + ", " + std::to_string(hi) + "]");
  // Rounding can step a hair outside [lo, hi]; pin to the convex hull.
  p.value = std::clamp(v, lo, hi);
  return p;
}

MergedPoints merge_by_cell(const PointSet &points, const std::vector<Cell> &cells) {
  if (points.size() != cells.size())
    throw ArgumentError("points and snapped cells differ in length");
  MergedPoints out;
  std::vector<std::size_t> counts;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> slot;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto key = std::make_pair(cells[i].row, cells[i].col);
    auto [it, fresh] = slot.try_emplace(key, out.points.size());
    if (fresh) {
      out.points.push_back(points[i]);
      out.cells.push_back(cells[i]);
      counts.push_back(1);
    } else {
      out.points[it->second].value += points[i].value;
      ++counts[it->second];
    }
  }
  for (std::size_t k = 0; k < out.points.size(); ++k)
    out.points[k].value /= static_cast<double>(counts[k]);
  return out;
}

PointSet merge_coincident(const PointSet &points) {
  PointSet out;
  std::vector<std::size_t> counts;
  std::map<std::pair<double, double>, std::size_t> slot;
  for (const Measurement &m : points) {
    auto [it, fresh] = slot.try_emplace({m.x, m.y}, out.size());
    if (fresh) {
      out.push_back(m);
      counts.push_back(1);
    } else {
      out[it->second].value += m.value;
      ++counts[it->second];
    }
  }
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k].value /= static_cast<double>(counts[k]);
  return out;
}

namespace {

void check_points(const PointSet &points) {
  if (points.empty())
    throw ArgumentError("interpolation needs at least one measurement");
  for (std::size_t i = 0; i < points.size(); ++i)
    if (!std::isfinite(points[i].x) || !std::isfinite(points[i].y) ||
        !std::isfinite(points[i].value))
      throw ArgumentError("measurement " + std::to_string(i) + " is not finite");
}

} // namespace

RasterGrid interpolate_ipdw(const PointSet &points, const CostSurface &cost,
                            const InterpConfig &config) {
  config.validate();
  check_points(points);
  const MergedPoints merged =
      merge_by_cell(points, snap_points(cost, points, config.snap_radius));
  const std::vector<DistanceField> fields =
      distances_to_cells(cost, merged.cells, config.threads);
  return interpolate_ipdw(merged.points, fields, cost, config);
}

RasterGrid interpolate_ipdw(const PointSet &points, std::span<const DistanceField> fields,
                            const CostSurface &cost, const InterpConfig &config) {
  config.validate();
  check_points(points);
  if (fields.size() != points.size())
    throw ArgumentError("need exactly one distance field per measurement");
  const GridGeometry &g = cost.geometry();
  for (const DistanceField &f : fields)
    if (!(f.geometry == g))
      throw ArgumentError("distance field geometry does not match the cost surface");

  RasterGrid out(g, cost.raster().nodata(), cost.raster().nodata());
  // Each row is written by exactly one task.
  parallel_for(g.nrows, config.threads, [&](std::size_t row) {
    std::vector<Neighbor> hood;
    hood.reserve(fields.size());
    for (std::size_t col = 0; col < g.ncols; ++col) {
      const std::size_t idx = row * g.ncols + col;
      if (!cost.is_water(idx))
        continue;
      hood.clear();
      for (std::size_t k = 0; k < fields.size(); ++k)
        if (fields[k].reachable[idx])
          hood.push_back({fields[k].distance[idx], points[k].value});
      if (auto p = idw_estimate(hood, config))
        out.set(idx, p->value);
    }
  });
  return out;
}

RasterGrid interpolate_idw(const PointSet &points, const GridGeometry &geometry,
                           const CostSurface *mask, const InterpConfig &config) {
  config.validate();
  check_points(points);
  geometry.validate();
  if (mask && !(mask->geometry() == geometry))
    throw ArgumentError("mask geometry does not match the output grid");

  const PointSet merged = merge_coincident(points);
  std::vector<double> xs(merged.size()), ys(merged.size());
  for (std::size_t k = 0; k < merged.size(); ++k) {
    xs[k] = merged[k].x;
    ys[k] = merged[k].y;
  }

  RasterGrid out(geometry, kDefaultNoData);
  parallel_for(geometry.nrows, config.threads, [&](std::size_t row) {
    std::vector<double> d2(merged.size());
    std::vector<Neighbor> hood(merged.size());
    for (std::size_t col = 0; col < geometry.ncols; ++col) {
      const std::size_t idx = row * geometry.ncols + col;
      if (mask && !mask->is_water(idx))
        continue;
      const Point2 c = center_of(geometry, {row, col});
      simd::squared_distances(xs, ys, c.x, c.y, d2);
      hood.resize(merged.size());
      for (std::size_t k = 0; k < merged.size(); ++k)
        hood[k] = {std::sqrt(d2[k]), merged[k].value};
      if (auto p = idw_estimate(hood, config))
        out.set(idx, p->value);
    }
  });
  return out;
}

} // namespace ipdw
