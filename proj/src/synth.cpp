#include "ipdw/synth.hpp"

#include "ipdw/error.hpp"
#include "ipdw/path_distance.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace ipdw::synth {

std::string_view to_string(SceneKind kind) {
  switch (kind) {
  case SceneKind::TwoBasin:
    return "two-basin";
  case SceneKind::Gradient:
    return "gradient";
  case SceneKind::Plume:
    return "plume";
  }
  return "unknown";
}

std::optional<SceneKind> parse_scene_kind(std::string_view name) {
  for (SceneKind k : {SceneKind::TwoBasin, SceneKind::Gradient, SceneKind::Plume})
    if (name == to_string(k))
      return k;
  return std::nullopt;
}

namespace {

Ring rectangle(double x0, double y0, double x1, double y1) {
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}, {x0, y0}};
}

// Irregular octagon, closer to an island outline than a square.
Ring island(double cx, double cy, double r) {
  static constexpr double kWobble[8] = {1.0, 0.8, 1.1, 0.75, 0.95, 1.15, 0.7, 0.9};
  Ring ring;
  for (int k = 0; k < 8; ++k) {
    const double a = 2.0 * std::numbers::pi * k / 8.0;
    ring.push_back({cx + r * kWobble[k] * std::cos(a), cy + r * kWobble[k] * std::sin(a)});
  }
  ring.push_back(ring.front());
  return ring;
}

PolygonSet barriers_for(SceneKind kind, double w, double h, double cs) {
  PolygonSet p;
  switch (kind) {
  case SceneKind::TwoBasin:
    // Two cell centres wide, and longer than the extent so no water slips round the ends.
    p.rings.push_back(rectangle(w / 2 - 0.8 * cs, -cs, w / 2 + 0.8 * cs, h + cs));
    p.rings.push_back(island(0.25 * w, 0.62 * h, 4.5 * cs));
    p.rings.push_back(island(0.74 * w, 0.33 * h, 5.0 * cs));
    break;
  case SceneKind::Gradient:
    p.rings.push_back(island(0.22 * w, 0.30 * h, 4.0 * cs));
    p.rings.push_back(island(0.50 * w, 0.70 * h, 6.0 * cs));
    p.rings.push_back(island(0.78 * w, 0.40 * h, 5.0 * cs));
    p.rings.push_back(rectangle(0.35 * w, 0.10 * h, 0.38 * w, 0.45 * h));
    break;
  case SceneKind::Plume:
    // Bank chain with two narrow passes, plus a detached key.
    p.rings.push_back(rectangle(0.30 * w, 0.55 * h, 0.33 * w, h + cs));
    p.rings.push_back(rectangle(0.30 * w, 0.20 * h, 0.33 * w, 0.48 * h));
    p.rings.push_back(rectangle(0.33 * w, 0.20 * h, 0.70 * w, 0.23 * h));
    p.rings.push_back(rectangle(0.60 * w, 0.55 * h, 0.63 * w, 0.90 * h));
    p.rings.push_back(island(0.82 * w, 0.70 * h, 5.0 * cs));
    break;
  }
  return p;
}

} // namespace

std::vector<Point2> survey_track(const Extent &extent, double lane_spacing, double amplitude,
                                 double wavelength, double spacing) {
  if (!(lane_spacing > 0.0) || !(spacing > 0.0) || !(wavelength > 0.0))
    throw ArgumentError("track spacings must be positive");
  const double w = extent.xmax - extent.xmin;
  const double margin = 0.02 * w;
  const double x0 = extent.xmin + margin, x1 = extent.xmax - margin;
  std::vector<Point2> track;
  auto lane_y = [&](std::size_t k, double x) {
    const double base = extent.ymin + lane_spacing * (static_cast<double>(k) + 0.5);
    return base + amplitude * std::sin(2.0 * std::numbers::pi * (x - extent.xmin) / wavelength +
                                       static_cast<double>(k));
  };
  const auto n_along = static_cast<std::size_t>(std::floor((x1 - x0) / spacing));
  for (std::size_t k = 0;; ++k) {
    if (extent.ymin + lane_spacing * (static_cast<double>(k) + 0.5) >= extent.ymax)
      break;
    const bool eastward = k % 2 == 0;
    for (std::size_t i = 0; i <= n_along; ++i) {
      const double t = static_cast<double>(i) * spacing;
      const double x = eastward ? x0 + t : x1 - t;
      track.push_back({x, lane_y(k, x)});
    }
    // Turn onto the next lane along the shore.
    const double xe = eastward ? x0 + static_cast<double>(n_along) * spacing
                               : x1 - static_cast<double>(n_along) * spacing;
    const double ya = lane_y(k, xe), yb = lane_y(k + 1, xe);
    const auto n_turn = static_cast<std::size_t>(std::floor(std::abs(yb - ya) / spacing));
    for (std::size_t i = 1; i < n_turn; ++i)
      track.push_back({xe, ya + (yb - ya) * static_cast<double>(i) / static_cast<double>(n_turn)});
  }
  std::erase_if(track, [&](const Point2 &p) {
    return p.x < extent.xmin || p.x >= extent.xmax || p.y < extent.ymin || p.y >= extent.ymax;
  });
  return track;
}

SyntheticScene make_scene(const SceneConfig &config) {
  if (!(config.noise >= 0.0) || !std::isfinite(config.noise))
    throw ArgumentError("noise must be a non-negative standard deviation");
  if (!std::isfinite(config.step) || !std::isfinite(config.base))
    throw ArgumentError("step and base must be finite");
  const GridGeometry g{config.ncols, config.nrows, 0.0, 0.0, config.cellsize};
  g.validate();
  const double w = g.width(), h = g.height();
  const Extent extent{0.0, 0.0, w, h};
  PolygonSet barriers = barriers_for(config.kind, w, h, config.cellsize);
  CostSurface cost = rasterize_land(barriers, g);

  RasterGrid truth(g, kDefaultNoData);
  switch (config.kind) {
  case SceneKind::TwoBasin:
    for (std::size_t i = 0; i < g.size(); ++i)
      if (cost.is_water(i))
        truth.set(i, center_of(g, g.cell_at(i)).x < w / 2 ? config.base
                                                         : config.base + config.step);
    break;
  case SceneKind::Gradient:
    for (std::size_t i = 0; i < g.size(); ++i)
      if (cost.is_water(i))
        truth.set(i, config.base + config.step * center_of(g, g.cell_at(i)).x / w);
    break;
  case SceneKind::Plume: {
    const auto source = cell_of(g, 3.5 * config.cellsize, h - 3.5 * config.cellsize);
    const DistanceField field = distance_field(cost, *source);
    const double length = w / 3.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (cost.is_water(i) && field.reachable[i])
        truth.set(i, config.base + config.step * (1.0 - std::exp(-field.distance[i] / length)));
    break;
  }
  }

  const double cs = config.cellsize;
  std::vector<Point2> path = survey_track(extent, 400.0 * cs / 60.0, 120.0 * cs / 60.0,
                                          1500.0 * cs / 60.0, 15.0 * cs / 60.0);
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  PointSet track;
  track.reserve(path.size());
  for (const Point2 &p : path) {
    // One draw per track vertex keeps the noise sequence independent of the scene values.
    const double e = config.noise * noise(rng);
    const auto c = cell_of(g, p.x, p.y);
    if (!c || !cost.is_water(g.index(*c)) || truth.is_nodata(*c))
      continue;
    track.push_back({p.x, p.y, truth.at(*c) + e});
  }

  return SyntheticScene{config, extent, g, std::move(barriers), std::move(cost), std::move(truth),
                        std::move(track)};
}

} // namespace ipdw::synth
