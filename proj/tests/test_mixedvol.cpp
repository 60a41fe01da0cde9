#include <random>

#include <catch_amalgamated.hpp>

#include "helpers.hpp"
#include "rigidbound/constructions.hpp"
#include "rigidbound/enumerate.hpp"
#include "rigidbound/hull.hpp"
#include "rigidbound/lp.hpp"
#include "rigidbound/mixedvol.hpp"

using namespace rigidbound;

namespace {

SupportSystem system_of(std::vector<Support> supports) {
  SupportSystem s;
  s.num_vars = supports.empty() ? 0 : static_cast<int>(supports.front().front().size());
  for (int i = 0; i < s.num_vars; ++i) s.var_names.push_back("v" + std::to_string(i));
  s.supports = std::move(supports);
  return s;
}

Support dense(int vars, int degree) {
  Support out;
  std::vector<int> e(static_cast<std::size_t>(vars), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == vars) {
      out.push_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[static_cast<std::size_t>(i)] = k;
      rec(i + 1, left - k);
    }
    e[static_cast<std::size_t>(i)] = 0;
  };
  rec(0, degree);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("LP feasibility on small systems", "[lp]") {
  using lp::Constraint;
  CHECK(lp::feasible(2, {{{1, 0}, 0, false}, {{0, 1}, 0, false}, {{-1, -1}, -1, false}}));
  CHECK_FALSE(lp::feasible(1, {{{1}, 2, false}, {{-1}, -1, false}}));
  CHECK(lp::feasible(2, {{{1, 1}, 3, true}, {{1, -1}, 1, true}}));
  CHECK_FALSE(lp::feasible(2, {{{1, 1}, 3, true}, {{2, 2}, 5, true}}));
  // strictness encoded with a shared margin variable
  CHECK_FALSE(lp::feasible(2, {{{1, -1}, 0, false}, {{-1, -1}, 0, false}, {{0, 1}, 1, false}}));
  CHECK(lp::feasible(0, {}));
}

TEST_CASE("normalized hull volumes", "[hull]") {
  CHECK(hull_volume({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}).volume == 1);
  std::vector<Point> cube;
  for (int m = 0; m < 8; ++m) cube.push_back({m & 1, (m >> 1) & 1, (m >> 2) & 1});
  cube.push_back({0, 0, 0});
  const HullVolume h = hull_volume(cube);
  CHECK(h.volume == 6);
  CHECK(h.vertices.size() == 8);
  CHECK(hull_volume({{0, 0}, {1, 1}, {2, 2}}).volume == 0);
  CHECK(hull_volume({{0, 0}, {2, 0}, {0, 2}, {1, 1}, {1, 0}}).volume == 4);
}

TEST_CASE("mixed volumes of dense systems are Bezout numbers", "[mixedvol]") {
  CHECK(mixed_volume(system_of({{{0}, {2}}})).mv == 2);
  CHECK(mixed_volume(system_of({dense(2, 2), dense(2, 2)})).mv == 4);
  CHECK(mixed_volume(system_of({dense(3, 1), dense(3, 2), dense(3, 3)})).mv == 6);
  CHECK(mixed_volume(system_of({dense(4, 2), dense(4, 2), dense(4, 1), dense(4, 2)})).mv == 8);
}

TEST_CASE("mixed volume of unit squares", "[mixedvol]") {
  const Support sq{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  CHECK(mixed_volume(system_of({sq, sq})).mv == 2);
  CHECK(mixed_volume_oracle(system_of({sq, sq})) == 2);
}

TEST_CASE("a support with one point gives zero", "[mixedvol]") {
  CHECK(mixed_volume(system_of({{{1, 1}}, dense(2, 2)})).mv == 0);
  CHECK(mixed_volume_oracle(system_of({{{1, 1}}, dense(2, 2)})) == 0);
}

TEST_CASE("mixed volume agrees with the inclusion-exclusion oracle on random systems", "[mixedvol][oracle]") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 200; ++t) {
    const SupportSystem s = testing::random_system(rng, 4, 5, 3);
    INFO("trial " << t);
    CHECK(mixed_volume(s).mv == mixed_volume_oracle(s));
  }
}

TEST_CASE("mixed volume agrees with the oracle on small pinned systems", "[mixedvol][oracle]") {
  for (Dim dim : {Dim::Planar, Dim::Spatial}) {
    for (const auto& level : generate_levels(dim, 5)) {
      for (const auto& e : level) {
        for (Formulation f : {Formulation::Naive, Formulation::Augmented}) {
          for (const auto& pin : pinning_candidates(e.graph)) {
            const SupportSystem s = build_system(e.graph, pin, f);
            if (s.num_vars > 5) continue;
            CHECK(mixed_volume(s).mv == mixed_volume_oracle(s));
          }
        }
      }
    }
  }
}

TEST_CASE("mixed volume does not depend on the lifting seed", "[mixedvol][property]") {
  const SupportSystem s = build_system(desargues_graph(), pinning_candidates(desargues_graph()).front(), Formulation::Augmented);
  const std::uint64_t base = mixed_volume(s).mv;
  for (std::uint64_t seed : {1ULL, 2ULL, 99ULL, 123456789ULL}) {
    MixedVolumeOptions o;
    o.seed = seed;
    CHECK(mixed_volume(s, o).mv == base);
  }
}

TEST_CASE("named graph mixed volumes", "[mixedvol]") {
  CHECK(min_mixed_volume(triangle_graph(), Formulation::Augmented).value == 2);
  CHECK(min_mixed_volume(simplex3_graph(), Formulation::Augmented).value == 2);
  CHECK(min_mixed_volume(simplex3_graph(), Formulation::Naive).value == 8);
  CHECK(min_mixed_volume(cyclohexane_graph(), Formulation::Augmented).value == 16);
  CHECK(min_mixed_volume(g1_n6_graph(), Formulation::Augmented).value == 8);
  CHECK(min_mixed_volume(skeleton5_graph(), Formulation::Augmented).value == 4);
}

TEST_CASE("min over pinnings reports every candidate and the first minimum", "[mixedvol]") {
  const MinMixedVolume m = min_mixed_volume(g1_n6_graph(), Formulation::Augmented);
  REQUIRE(m.per_pinning.size() == pinning_candidates(g1_n6_graph()).size());
  std::uint64_t lowest = m.per_pinning.front().mv;
  for (const auto& p : m.per_pinning) lowest = std::min(lowest, p.mv);
  CHECK(m.value == lowest);
  CHECK(m.per_pinning[m.best_index].mv == lowest);
  for (std::size_t i = 0; i < m.best_index; ++i) CHECK(m.per_pinning[i].mv > lowest);
  CHECK(m.best_pinning == m.per_pinning[m.best_index].pinning);
}

TEST_CASE("mixed volume input errors", "[mixedvol][errors]") {
  SupportSystem bad = system_of({dense(2, 1), dense(2, 1)});
  bad.supports.pop_back();
  CHECK_THROWS_AS(mixed_volume(bad), Error);
  SupportSystem empty = system_of({dense(2, 1), dense(2, 1)});
  empty.supports[1].clear();
  CHECK_THROWS_AS(mixed_volume(empty), Error);
  const SupportSystem six = system_of({dense(6, 1), dense(6, 1), dense(6, 1), dense(6, 1), dense(6, 1), dense(6, 1)});
  CHECK(mixed_volume(six).mv == 1);
  CHECK_THROWS_AS(mixed_volume_oracle(six), Error);
}
