#include "doctest.h"

#include "oracles.hpp"

#include "ipdw/error.hpp"
#include "ipdw/path_distance.hpp"

#include <cmath>
#include <random>

using namespace ipdw;

namespace {

CostSurface uniform(std::size_t nrows, std::size_t ncols, double cs = 60.0) {
  return CostSurface(RasterGrid({ncols, nrows, 0, 0, cs}, 1.0), 1.0, 10000.0);
}

CostSurface with_land(std::size_t nrows, std::size_t ncols, std::initializer_list<Cell> land) {
  RasterGrid r({ncols, nrows, 0, 0, 60}, 1.0);
  for (Cell c : land)
    r.set(c, 10000.0);
  return CostSurface(std::move(r), 1.0, 10000.0);
}

} // namespace

TEST_SUITE("path-distance") {

TEST_CASE("straight rook path") {
  const DistanceField f = distance_field(uniform(1, 3), {0, 0});
  CHECK(f.distance[0] == 0.0);
  CHECK(f.distance[1] == 60.0);
  CHECK(f.distance[2] == 120.0);
}

TEST_CASE("two diagonal steps across a 3x3") {
  const DistanceField f = distance_field(uniform(3, 3), {0, 0});
  CHECK(f.at({2, 2}) == doctest::Approx(2.0 * std::sqrt(2.0) * 60.0).epsilon(1e-12));
  CHECK(f.at({2, 2}) == doctest::Approx(169.706).epsilon(1e-5));
}

TEST_CASE("detour round a land centre matches Floyd-Warshall") {
  const CostSurface c = with_land(3, 3, {{1, 1}});
  const DistanceField f = distance_field(c, {1, 0});
  const auto fw = oracle::floyd_warshall(c);
  CHECK(f.at({1, 2}) == doctest::Approx(fw[3][5]).epsilon(1e-9));
  CHECK(f.at({1, 2}) == doctest::Approx(169.706).epsilon(1e-5));
  CHECK(f.at({1, 2}) > 120.0);
  CHECK(f.is_reachable({1, 2}));
}

TEST_CASE("diagonal moves cannot squeeze between two land cells") {
  // Land at (0,1) and (1,0): the only link from (0,0) to (1,1) is the sealed diagonal.
  const CostSurface c = with_land(2, 2, {{0, 1}, {1, 0}});
  const DistanceField f = distance_field(c, {0, 0});
  CHECK_FALSE(f.is_reachable({1, 1}));
  CHECK(f.at({1, 1}) >= c.reachability_threshold());
}

TEST_CASE("nodata is never entered") {
  RasterGrid r({3, 1, 0, 0, 60}, 1.0);
  r.set_nodata(1);
  const CostSurface c(std::move(r), 1.0, 10000.0);
  const DistanceField f = distance_field(c, {0, 0});
  CHECK(std::isinf(f.distance[1]));
  CHECK(std::isinf(f.distance[2]));
  CHECK_THROWS_AS(distance_field(c, {0, 1}), ArgumentError);
  CHECK_THROWS_AS(distance_field(c, {0, 3}), ArgumentError);
  CHECK_THROWS_AS(distance_field(c, {1, 0}), ArgumentError);
}

TEST_CASE("land crossings are flagged unreachable") {
  // Full middle-column wall on a 3x5 grid.
  const CostSurface c = with_land(3, 5, {{0, 2}, {1, 2}, {2, 2}});
  const DistanceField f = distance_field(c, {1, 0});
  for (std::size_t row = 0; row < 3; ++row) {
    CHECK(f.is_reachable({row, 0}));
    CHECK(f.is_reachable({row, 1}));
    CHECK_FALSE(f.is_reachable({row, 3}));
    CHECK_FALSE(f.is_reachable({row, 4}));
  }
}

TEST_CASE("matches brute-force all-pairs on random small grids") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> dim(1, 12);
  std::uniform_real_distribution<double> frac(0.0, 0.6);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t nr = dim(rng), nc = dim(rng);
    while (nr * nc > 150)
      nc = dim(rng);
    const CostSurface c = oracle::random_cost(rng, nr, nc, frac(rng));
    const auto ref = oracle::all_pairs(c);
    for (std::size_t s = 0; s < c.geometry().size(); ++s) {
      const DistanceField f = distance_field(c, c.geometry().cell_at(s));
      for (std::size_t t = 0; t < f.distance.size(); ++t)
        REQUIRE(f.distance[t] == ref[s][t]);
    }
  }
}

TEST_CASE("uniform surfaces sit between Euclidean and the octile bound") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 5 + trial * 4;
    const CostSurface c = uniform(n, n + 3);
    const GridGeometry &g = c.geometry();
    std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
    for (int s = 0; s < 3; ++s) {
      const Cell src = g.cell_at(pick(rng));
      const DistanceField f = distance_field(c, src);
      const Point2 a = center_of(g, src);
      for (std::size_t t = 0; t < g.size(); ++t) {
        const Point2 b = center_of(g, g.cell_at(t));
        const double e = std::hypot(a.x - b.x, a.y - b.y);
        REQUIRE(f.distance[t] >= e * (1.0 - 1e-12));
        REQUIRE(f.distance[t] <= 1.0824 * e + g.cellsize);
      }
    }
  }
}

TEST_CASE("distances are symmetric and satisfy the triangle inequality") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const CostSurface c = oracle::random_cost(rng, 7, 8, 0.3);
    const std::size_t n = c.geometry().size();
    std::vector<DistanceField> fields;
    for (std::size_t s = 0; s < n; ++s)
      fields.push_back(distance_field(c, c.geometry().cell_at(s)));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const double ab = fields[a].distance[b], ba = fields[b].distance[a];
        REQUIRE(ab == doctest::Approx(ba).epsilon(1e-12));
        for (std::size_t k = 0; k < n; ++k)
          REQUIRE(fields[a].distance[b] <=
                  (fields[a].distance[k] + fields[k].distance[b]) * (1.0 + 1e-12));
      }
  }
}

TEST_CASE("adding land never shortens a path") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const CostSurface before = oracle::random_cost(rng, 9, 9, 0.2);
    RasterGrid r = before.raster();
    std::uniform_int_distribution<std::size_t> pick(0, r.size() - 1);
    for (int k = 0; k < 5; ++k)
      r.set(pick(rng), 10000.0);
    const CostSurface after(std::move(r), 1.0, 10000.0);
    const DistanceField f0 = distance_field(before, {4, 4});
    const DistanceField f1 = distance_field(after, {4, 4});
    for (std::size_t t = 0; t < f0.distance.size(); ++t)
      REQUIRE(f1.distance[t] >= f0.distance[t]);
  }
}

TEST_CASE("snapping moves shoreline points onto water") {
  // Row-major: (0,0) water, (0,1) land, (0,2) land.
  const CostSurface c = with_land(1, 3, {{0, 1}, {0, 2}});
  CHECK(snap_to_water(c, 90, 30, 2) == Cell{0, 0});
  // Two cells away from water: radius 1 fails, radius 2 succeeds.
  CHECK_FALSE(snap_to_water(c, 150, 30, 1).has_value());
  CHECK(snap_to_water(c, 150, 30, 2) == Cell{0, 0});
  CHECK_FALSE(snap_to_water(c, -5, 30, 2).has_value());
  // Equidistant water on both sides resolves to the first in row-major order.
  const CostSurface mid = with_land(1, 3, {{0, 1}});
  CHECK(snap_to_water(mid, 90, 30, 1) == Cell{0, 0});
}

TEST_CASE("batch fields follow input order and report every failed point") {
  const CostSurface all_water = uniform(3, 3);
  const auto one = distances_to_points(all_water, {{90, 90, 1.0}});
  REQUIRE(one.size() == 1);
  CHECK(one[0].source == Cell{1, 1});
  CHECK(one[0].at({1, 1}) == 0.0);

  const auto twins = distances_to_points(all_water, {{10, 10, 1.0}, {10, 10, 2.0}});
  CHECK(twins[0].distance == twins[1].distance);

  // Land cell with water one cell away.
  const CostSurface shore = with_land(3, 3, {{1, 1}, {1, 2}});
  const auto snapped = distances_to_points(shore, {{150, 90, 0.0}}, 2);
  CHECK(snapped[0].source == Cell{0, 2});
  CHECK(snapped[0].at({0, 2}) == 0.0);

  PointSet bad{{90, 90, 0}, {-100, 0, 0}, {90, 90, 0}, {1000, 1000, 0}};
  try {
    distances_to_points(all_water, bad);
    FAIL("expected SnapError");
  } catch (const SnapError &e) {
    REQUIRE(e.failures().size() == 2);
    CHECK(e.failures()[0].index == 1);
    CHECK(e.failures()[1].index == 3);
  }
}

TEST_CASE("batch output is independent of thread count") {
  std::mt19937_64 rng(21);
  const CostSurface c = oracle::random_cost(rng, 30, 30, 0.25);
  std::vector<Cell> sources;
  for (std::size_t i = 0; i < c.geometry().size(); i += 37)
    if (c.is_water(i))
      sources.push_back(c.geometry().cell_at(i));
  const auto a = distances_to_cells(c, sources, 1);
  const auto b = distances_to_cells(c, sources, 8);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(a[i].distance == b[i].distance);
}

}
