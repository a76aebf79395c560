#include "doctest.h"

#include "ipdw/error.hpp"
#include "ipdw/raster.hpp"

#include <cmath>
#include <limits>
#include <random>

using namespace ipdw;

TEST_SUITE("raster") {

TEST_CASE("cell_of follows the half-open extent") {
  const GridGeometry g{2, 2, 0.0, 0.0, 60.0};
  CHECK(cell_of(g, 30, 30) == Cell{1, 0});
  CHECK_FALSE(cell_of(g, -1, 30).has_value());
  // Left/bottom edges belong to the cell.
  CHECK(cell_of(g, 60, 60) == Cell{0, 1});
  CHECK(cell_of(g, 0, 0) == Cell{1, 0});
  CHECK_FALSE(cell_of(g, 120, 30).has_value());
  CHECK_FALSE(cell_of(g, 30, 120).has_value());
  CHECK(cell_of(g, 119.999, 119.999) == Cell{0, 1});
  CHECK_FALSE(cell_of(g, std::nan(""), 1).has_value());
}

TEST_CASE("center_of puts row 0 at the top") {
  const Point2 a = center_of({1, 1, 0.0, 0.0, 60.0}, {0, 0});
  CHECK(a.x == 30.0);
  CHECK(a.y == 30.0);
  const Point2 b = center_of({3, 3, 0.0, 0.0, 10.0}, {0, 0});
  CHECK(b.x == 5.0);
  CHECK(b.y == 25.0);
  CHECK_THROWS_AS(center_of({3, 3, 0.0, 0.0, 10.0}, {3, 0}), ArgumentError);
}

TEST_CASE("cell_of inverts center_of") {
  SUBCASE("exhaustive on small grids") {
    for (std::size_t nr = 1; nr <= 6; ++nr)
      for (std::size_t nc = 1; nc <= 6; ++nc) {
        const GridGeometry g{nc, nr, -123.5, 4567.25, 7.5};
        for (std::size_t r = 0; r < nr; ++r)
          for (std::size_t c = 0; c < nc; ++c) {
            const Point2 p = center_of(g, {r, c});
            CHECK(cell_of(g, p.x, p.y) == Cell{r, c});
          }
      }
  }
  SUBCASE("randomized on large grids") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> origin(-1e6, 1e6), size(0.5, 500.0);
    for (int t = 0; t < 50; ++t) {
      const GridGeometry g{2000, 3000, origin(rng), origin(rng), size(rng)};
      std::uniform_int_distribution<std::size_t> row(0, g.nrows - 1), col(0, g.ncols - 1);
      for (int k = 0; k < 200; ++k) {
        const Cell c{row(rng), col(rng)};
        const Point2 p = center_of(g, c);
        REQUIRE(cell_of(g, p.x, p.y) == c);
      }
    }
  }
}

TEST_CASE("geometry validation rejects empty or non-positive grids") {
  CHECK_THROWS_AS((GridGeometry{0, 1, 0, 0, 1}.validate()), ArgumentError);
  CHECK_THROWS_AS((GridGeometry{1, 1, 0, 0, 0}.validate()), ArgumentError);
  CHECK_THROWS_AS((GridGeometry{1, 1, 0, 0, -5}.validate()), ArgumentError);
  CHECK_NOTHROW((GridGeometry{1, 1, 0, 0, 60}.validate()));
}

TEST_CASE("raster stores only finite values or nodata") {
  const GridGeometry g{2, 1, 0, 0, 1};
  RasterGrid r(g, {1.0, std::numeric_limits<double>::infinity()});
  CHECK(r.at(0) == 1.0);
  CHECK(r.is_nodata(1));
  r.set(0, std::nan(""));
  CHECK(r.is_nodata(0));
  CHECK(r.count_valid() == 0);
  CHECK_THROWS_AS(RasterGrid(g, std::vector<double>{1.0}), ArgumentError);
}

TEST_CASE("reading then writing every cell reproduces the plane") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> val(-1e3, 1e3);
  const GridGeometry g{17, 11, 5, 5, 2};
  std::vector<double> v(g.size());
  for (double &x : v)
    x = val(rng);
  v[5] = kDefaultNoData;
  const RasterGrid src(g, v);
  RasterGrid copy(g, 0.0);
  for (std::size_t i = 0; i < src.size(); ++i)
    copy.set(i, src.at(i));
  CHECK(copy == src);
}

TEST_CASE("extent grids cover the area without sliver columns") {
  const Extent e{0, 0, 6000, 6000};
  const GridGeometry g60 = e.grid(60);
  CHECK(g60.ncols == 100);
  CHECK(g60.nrows == 100);
  const GridGeometry g70 = e.grid(70);
  CHECK(g70.ncols == 86); // 85.7 rounded up
  CHECK(g70.xll == 0.0);
}

}
