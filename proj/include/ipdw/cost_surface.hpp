#pragma once

#include "ipdw/raster.hpp"

#include <vector>

namespace ipdw {

inline constexpr double kDefaultWaterCost = 1.0;
inline constexpr double kDefaultLandCost = 10000.0;

// Closed vertex sequence (first == last).
using Ring = std::vector<Point2>;

// Land rings combined under the even-odd rule, so nested rings act as holes.
struct PolygonSet {
  std::vector<Ring> rings;

  // Throws FormatError naming the first ring with < 4 vertices or first != last.
  void validate() const;
  bool empty() const { return rings.empty(); }
};

// Even-odd crossing test of (x, y) against every ring of the set.
bool inside_even_odd(const PolygonSet &polygons, double x, double y);

// Two-valued traversal-cost raster: water_cost on water, land_cost on land.
class CostSurface {
public:
  CostSurface(RasterGrid raster, double water_cost, double land_cost);

  const RasterGrid &raster() const { return raster_; }
  const GridGeometry &geometry() const { return raster_.geometry(); }
  double water_cost() const { return water_cost_; }
  double land_cost() const { return land_cost_; }

  bool is_water(std::size_t idx) const { return raster_.at(idx) == water_cost_; }
  bool is_land(std::size_t idx) const { return raster_.at(idx) == land_cost_; }
  bool is_nodata(std::size_t idx) const { return raster_.is_nodata(idx); }

  // Any accumulated distance at or above this implies a land crossing.
  double reachability_threshold() const { return land_cost_ * geometry().cellsize; }

private:
  RasterGrid raster_;
  double water_cost_;
  double land_cost_;
};

// Center-point rule: a cell is land iff its center is inside the polygon set.
CostSurface rasterize_land(const PolygonSet &polygons, const GridGeometry &geometry,
                           double water_cost = kDefaultWaterCost,
                           double land_cost = kDefaultLandCost);

// Cells equal to water_class_value become water, other valid cells land; nodata propagates.
CostSurface reclassify(const RasterGrid &classes, double water_class_value,
                       double water_cost = kDefaultWaterCost,
                       double land_cost = kDefaultLandCost);

} // namespace ipdw
