#pragma once

#include "ipdw/cost_surface.hpp"
#include "ipdw/raster.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ipdw::synth {

enum class SceneKind { TwoBasin, Gradient, Plume };

std::string_view to_string(SceneKind kind);
std::optional<SceneKind> parse_scene_kind(std::string_view name);

struct SceneConfig {
  SceneKind kind = SceneKind::TwoBasin;
  // Spread of true values across the water body (value units).
  double step = 10.0;
  // Standard deviation of Gaussian measurement noise on the track.
  double noise = 0.0;
  std::uint64_t seed = 1;
  std::size_t ncols = 100;
  std::size_t nrows = 100;
  double cellsize = 60.0;
  // Lowest true value.
  double base = 20.0;
};

struct SyntheticScene {
  SceneConfig config;
  Extent extent;
  GridGeometry geometry;
  PolygonSet barriers;
  CostSurface cost;
  // True field on water cells; nodata elsewhere.
  RasterGrid truth;
  // Survey track restricted to water cells; values are truth plus noise.
  PointSet track;
};

// Two-basin: a full-height land wall splits the area into a left basin at
// `base` and a right basin at `base + step`, each with a small island.
// Gradient: value rises linearly west to east by `step` around scattered islands.
// Plume: value = base + step * (1 - exp(-d / L)) with d the in-water path distance
// from a source at the north-west shore, behind a fragmented barrier chain.
SyntheticScene make_scene(const SceneConfig &config);

// Meandering boustrophedon survey path over the extent.
std::vector<Point2> survey_track(const Extent &extent, double lane_spacing, double amplitude,
                                 double wavelength, double spacing);

} // namespace ipdw::synth
