#include "ipdw/cost_surface.hpp"

#include "ipdw/error.hpp"

#include <cmath>
#include <string>

namespace ipdw {

void PolygonSet::validate() const {
  for (std::size_t i = 0; i < rings.size(); ++i) {
    const Ring &r = rings[i];
    if (r.size() < 4)
      throw FormatError("ring " + std::to_string(i) + " has " + std::to_string(r.size()) +
                        " vertices, need at least 4");
    if (r.front().x != r.back().x || r.front().y != r.back().y)
      throw FormatError("ring " + std::to_string(i) + " is not closed");
    for (const Point2 &p : r)
      if (!std::isfinite(p.x) || !std::isfinite(p.y))
        throw FormatError("ring " + std::to_string(i) + " has a non-finite vertex");
  }
}

namespace {

// Crossing-number parity of a horizontal ray from (x, y) against one ring.
bool ring_parity(const Ring &ring, double x, double y) {
  bool inside = false;
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    const Point2 &a = ring[i];
    const Point2 &b = ring[j];
    if ((a.y > y) != (b.y > y)) {
      const double xcross = a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (x < xcross)
        inside = !inside;
    }
  }
  return inside;
}

void check_costs(double water_cost, double land_cost) {
  if (!(water_cost > 0.0) || !std::isfinite(water_cost))
    throw ArgumentError("water cost must be positive");
  if (!(land_cost > water_cost) || !std::isfinite(land_cost))
    throw ArgumentError("land cost must exceed water cost");
}

} // namespace

bool inside_even_odd(const PolygonSet &polygons, double x, double y) {
  bool inside = false;
  for (const Ring &r : polygons.rings)
    if (ring_parity(r, x, y))
      inside = !inside;
  return inside;
}

CostSurface::CostSurface(RasterGrid raster, double water_cost, double land_cost)
    : raster_(std::move(raster)), water_cost_(water_cost), land_cost_(land_cost) {
  check_costs(water_cost, land_cost);
  if (raster_.nodata() == water_cost_ || raster_.nodata() == land_cost_)
    throw ArgumentError("nodata sentinel collides with a cost value");
  for (std::size_t i = 0; i < raster_.size(); ++i) {
    const double v = raster_.at(i);
    if (!raster_.is_nodata(i) && v != water_cost_ && v != land_cost_)
      throw ArgumentError("cost raster cell " + std::to_string(i) +
                          " is neither water nor land cost");
  }
}

CostSurface rasterize_land(const PolygonSet &polygons, const GridGeometry &geometry,
                           double water_cost, double land_cost) {
  check_costs(water_cost, land_cost);
  polygons.validate();
  geometry.validate();
  RasterGrid r(geometry, water_cost);
  if (!polygons.empty()) {
    for (std::size_t idx = 0; idx < geometry.size(); ++idx) {
      const Point2 c = center_of(geometry, geometry.cell_at(idx));
      if (inside_even_odd(polygons, c.x, c.y))
        r.set(idx, land_cost);
    }
  }
  return CostSurface(std::move(r), water_cost, land_cost);
}

CostSurface reclassify(const RasterGrid &classes, double water_class_value, double water_cost,
                       double land_cost) {
  check_costs(water_cost, land_cost);
  RasterGrid r(classes.geometry(), water_cost, classes.nodata());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes.is_nodata(i))
      r.set_nodata(i);
    else
      r.set(i, classes.at(i) == water_class_value ? water_cost : land_cost);
  }
  return CostSurface(std::move(r), water_cost, land_cost);
}

} // namespace ipdw
