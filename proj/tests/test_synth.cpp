#include "doctest.h"

#include "ipdw/path_distance.hpp"
#include "ipdw/synth.hpp"

#include <set>

using namespace ipdw;

TEST_SUITE("synth") {

TEST_CASE("scene names parse both ways") {
  for (auto k : {synth::SceneKind::TwoBasin, synth::SceneKind::Gradient, synth::SceneKind::Plume})
    CHECK(synth::parse_scene_kind(synth::to_string(k)) == k);
  CHECK_FALSE(synth::parse_scene_kind("lake").has_value());
}

TEST_CASE("two-basin truth has exactly two values and disconnected basins") {
  synth::SceneConfig cfg;
  cfg.step = 7.5;
  const auto s = synth::make_scene(cfg);
  std::set<double> values;
  for (std::size_t i = 0; i < s.geometry.size(); ++i)
    if (!s.truth.is_nodata(i))
      values.insert(s.truth.at(i));
  CHECK(values == std::set<double>{20.0, 27.5});

  const auto left = cell_of(s.geometry, 500, 3000);
  const auto right = cell_of(s.geometry, 5500, 3000);
  REQUIRE(left);
  REQUIRE(right);
  const DistanceField f = distance_field(s.cost, *left);
  CHECK_FALSE(f.is_reachable(*right));
}

TEST_CASE("track points sit on water and are deterministic per seed") {
  synth::SceneConfig cfg;
  cfg.kind = synth::SceneKind::Plume;
  cfg.noise = 0.5;
  const auto a = synth::make_scene(cfg);
  const auto b = synth::make_scene(cfg);
  REQUIRE(a.track.size() == b.track.size());
  for (std::size_t i = 0; i < a.track.size(); ++i) {
    REQUIRE(a.track[i].value == b.track[i].value);
    const auto c = cell_of(a.geometry, a.track[i].x, a.track[i].y);
    REQUIRE(c);
    REQUIRE(a.cost.is_water(a.geometry.index(*c)));
  }
  cfg.seed = 2;
  const auto other = synth::make_scene(cfg);
  CHECK(other.track.size() == a.track.size());
  CHECK(other.track[0].value != a.track[0].value);
}

TEST_CASE("noise-free gradient track reproduces the truth") {
  synth::SceneConfig cfg;
  cfg.kind = synth::SceneKind::Gradient;
  const auto s = synth::make_scene(cfg);
  for (const auto &m : s.track) {
    const auto c = cell_of(s.geometry, m.x, m.y);
    REQUIRE(m.value == s.truth.at(s.geometry.index(*c)));
  }
}

}
