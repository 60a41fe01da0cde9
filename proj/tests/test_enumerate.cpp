#include <map>
#include <set>

#include <catch_amalgamated.hpp>

#include "helpers.hpp"
#include "rigidbound/canonical.hpp"
#include "rigidbound/enumerate.hpp"

using namespace rigidbound;

namespace {

std::size_t oracle_count(Dim dim, int n) {
  std::set<std::vector<Edge>> classes;
  const int m = dim == Dim::Planar ? 2 * n - 3 : 3 * n - 6;
  testing::for_each_graph(dim, n, m, [&](const RigidGraph& g) {
    if (is_valid(g)) classes.insert(testing::brute_force_form(g));
  });
  return classes.size();
}

}  // namespace

TEST_CASE("planar catalog counts match the subset oracle for n <= 6", "[enumerate][oracle]") {
  for (int n = 3; n <= 6; ++n) {
    INFO("n = " << n);
    CHECK(generate_all(Dim::Planar, n).size() == oracle_count(Dim::Planar, n));
  }
}

TEST_CASE("spatial catalog counts match the subset oracle for n <= 7", "[enumerate][oracle]") {
  for (int n = 4; n <= 7; ++n) {
    INFO("n = " << n);
    CHECK(generate_all(Dim::Spatial, n).size() == oracle_count(Dim::Spatial, n));
  }
}

TEST_CASE("catalog sizes", "[enumerate]") {
  CHECK(generate_all(Dim::Planar, 4).size() == 1);
  CHECK(generate_all(Dim::Planar, 6).size() == 13);
  std::vector<std::size_t> spatial;
  for (const auto& level : generate_levels(Dim::Spatial, 9)) spatial.push_back(level.size());
  // triangulations of the sphere
  CHECK(spatial == std::vector<std::size_t>{1, 1, 2, 5, 14, 50});
}

TEST_CASE("entries are valid, keyed, sorted and carry replayable sequences", "[enumerate]") {
  for (Dim dim : {Dim::Planar, Dim::Spatial}) {
    const auto levels = generate_levels(dim, 7);
    for (const auto& level : levels) {
      std::set<CanonicalKey> keys;
      for (std::size_t i = 0; i < level.size(); ++i) {
        const CatalogEntry& e = level[i];
        CHECK(is_valid(e.graph));
        CHECK(canonical_key(e.graph) == e.key);
        CHECK(replay(e.best_sequence) == e.graph);
        CHECK(e.cls == class_of(e.best_sequence));
        if (i > 0) CHECK(level[i - 1].key < e.key);
        keys.insert(e.key);
      }
      CHECK(keys.size() == level.size());
    }
  }
}

TEST_CASE("H1 steps keep a graph in the H1 class", "[enumerate][property]") {
  const auto levels = generate_levels(Dim::Planar, 7);
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    std::map<CanonicalKey, HennebergClass> next;
    for (const auto& c : levels[i + 1]) next.emplace(c.key, c.cls);
    for (const auto& e : levels[i]) {
      if (e.cls != HennebergClass::H1) continue;
      for (const auto& step : enumerate_steps(e.graph)) {
        if (step.kind != StepKind::H1) continue;
        const auto it = next.find(canonical_key(apply_step(e.graph, step)));
        REQUIRE(it != next.end());
        CHECK(it->second == HennebergClass::H1);
      }
    }
  }
}

TEST_CASE("spatial n = 6 has one H1 class and one H2 class", "[enumerate]") {
  const auto six = generate_all(Dim::Spatial, 6);
  REQUIRE(six.size() == 2);
  std::multiset<HennebergClass> classes{six[0].cls, six[1].cls};
  CHECK(classes == std::multiset<HennebergClass>{HennebergClass::H1, HennebergClass::H2});
}

TEST_CASE("enumeration limits raise ResourceLimit", "[enumerate][errors]") {
  GenerateOptions opts;
  opts.max_graphs_per_level = 3;
  CHECK_THROWS_MATCHES(generate_all(Dim::Planar, 6, opts), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == ErrorCode::ResourceLimit; }));
  CHECK_THROWS_AS(generate_all(Dim::Planar, 2), Error);
  CHECK_THROWS_AS(generate_all(Dim::Spatial, 17), Error);
}

TEST_CASE("the spatial catalog without H3 steps still reaches every class up to n = 7", "[enumerate]") {
  GenerateOptions opts;
  opts.allow_h3 = false;
  CHECK(generate_all(Dim::Spatial, 7, opts).size() == generate_all(Dim::Spatial, 7).size());
}
