#include "doctest.h"

#include "oracles.hpp"

#include "ipdw/cost_surface.hpp"
#include "ipdw/error.hpp"

#include <random>

using namespace ipdw;

namespace {

Ring square(double x0, double y0, double x1, double y1) {
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}, {x0, y0}};
}

void check_two_valued(const CostSurface &c) {
  for (std::size_t i = 0; i < c.raster().size(); ++i)
    REQUIRE((c.is_nodata(i) || c.raster().at(i) == c.water_cost() ||
             c.raster().at(i) == c.land_cost()));
}

} // namespace

TEST_SUITE("cost-surface") {

TEST_CASE("empty polygon set is all water") {
  const CostSurface c = rasterize_land({}, {3, 3, 0, 0, 60});
  for (std::size_t i = 0; i < 9; ++i)
    CHECK(c.raster().at(i) == 1.0);
}

TEST_CASE("square over the centre cell marks exactly that cell") {
  PolygonSet p{{square(60, 60, 120, 120)}};
  const CostSurface c = rasterize_land(p, {3, 3, 0, 0, 60});
  for (std::size_t i = 0; i < 9; ++i)
    CHECK(c.raster().at(i) == (i == 4 ? 10000.0 : 1.0));
}

TEST_CASE("middle-column polygon forms a vertical barrier") {
  // 3 rows x 5 columns; the polygon spans x in [100, 200], containing only column 2 centres (150).
  PolygonSet p{{square(100, -10, 200, 190)}};
  const CostSurface c = rasterize_land(p, {5, 3, 0, 0, 60});
  for (std::size_t row = 0; row < 3; ++row)
    for (std::size_t col = 0; col < 5; ++col)
      CHECK(c.raster().at(Cell{row, col}) == (col == 2 ? 10000.0 : 1.0));
}

TEST_CASE("nested rings act as holes under even-odd") {
  PolygonSet p{{square(0, 0, 300, 300), square(100, 100, 200, 200)}};
  CHECK(inside_even_odd(p, 50, 50));
  CHECK_FALSE(inside_even_odd(p, 150, 150));
  CHECK_FALSE(inside_even_odd(p, 350, 150));
}

TEST_CASE("degenerate rings are rejected by index") {
  PolygonSet short_ring{{square(0, 0, 1, 1), {{0, 0}, {1, 0}, {0, 0}}}};
  try {
    rasterize_land(short_ring, {3, 3, 0, 0, 1});
    FAIL("expected FormatError");
  } catch (const FormatError &e) {
    CHECK(std::string(e.what()).find("ring 1") != std::string::npos);
  }
  PolygonSet open{{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}}};
  CHECK_THROWS_AS(rasterize_land(open, {3, 3, 0, 0, 1}), FormatError);
  CHECK_THROWS_AS(rasterize_land({}, {3, 3, 0, 0, 1}, 5.0, 5.0), ArgumentError);
}

TEST_CASE("reclassify maps classes to costs and keeps nodata") {
  const GridGeometry g{2, 2, 0, 0, 60};
  const CostSurface zeros = reclassify(RasterGrid(g, 0.0), 0.0);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(zeros.raster().at(i) == 1.0);

  const CostSurface mixed = reclassify(RasterGrid(g, {0, 1, 1, 0}), 0.0);
  CHECK(mixed.raster().at(0) == 1.0);
  CHECK(mixed.raster().at(1) == 10000.0);
  CHECK(mixed.raster().at(2) == 10000.0);
  CHECK(mixed.raster().at(3) == 1.0);

  const CostSurface holes = reclassify(RasterGrid(g, {0, kDefaultNoData, 3, 0}), 0.0);
  CHECK(holes.is_nodata(1));
  CHECK(holes.is_land(2));
}

TEST_CASE("outputs stay two-valued and rasterization is monotone") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pos(-50, 650), half(10, 150);
  for (int trial = 0; trial < 40; ++trial) {
    const GridGeometry g{10, 10, 0, 0, 60};
    PolygonSet set;
    CostSurface prev = rasterize_land(set, g);
    for (int k = 0; k < 5; ++k) {
      const double cx = pos(rng), cy = pos(rng), h = half(rng);
      set.rings.push_back(square(cx - h, cy - h, cx + h, cy + h));
      // Overlaps would carve holes under even-odd; monotonicity concerns disjoint additions.
      const CostSurface next = rasterize_land(set, g);
      check_two_valued(next);
      bool overlap = false;
      for (std::size_t i = 0; i < g.size(); ++i) {
        const Point2 c = center_of(g, g.cell_at(i));
        int hits = 0;
        for (const Ring &r : set.rings)
          hits += inside_even_odd(PolygonSet{{r}}, c.x, c.y);
        overlap |= hits > 1;
      }
      if (!overlap)
        for (std::size_t i = 0; i < g.size(); ++i)
          if (prev.is_land(i))
            REQUIRE(next.is_land(i));
      prev = next;
    }
  }
  std::uniform_int_distribution<int> cls(0, 3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> v(64);
    for (double &x : v)
      x = cls(rng) == 3 ? kDefaultNoData : cls(rng);
    check_two_valued(reclassify(RasterGrid({8, 8, 0, 0, 1}, v), 0.0));
  }
}

}
