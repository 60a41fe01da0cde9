#include <catch_amalgamated.hpp>

#include "rigidbound/bounds.hpp"
#include "rigidbound/constructions.hpp"

using namespace rigidbound;

namespace {

std::vector<BigInt> lower_row(Dim dim, int from, int to) {
  std::vector<BigInt> out;
  for (int n = from; n <= to; ++n) out.push_back(table_lower(n, dim));
  return out;
}

}  // namespace

TEST_CASE("lower rows of the bound tables", "[bounds]") {
  CHECK(lower_row(Dim::Planar, 3, 10) == std::vector<BigInt>{2, 4, 8, 24, 48, 96, 288, 576});
  CHECK(lower_row(Dim::Spatial, 4, 10) == std::vector<BigInt>{2, 4, 16, 32, 64, 256, 512});
}

TEST_CASE("lower bound formulas", "[bounds]") {
  CHECK(lower_bound(LowerBound::Cyclo3d, 9) == 256);
  CHECK(lower_bound(LowerBound::Cyclo3d, 12) == 4096);
  CHECK(lower_bound(LowerBound::Caterpillar2d, 6) == 24);
  CHECK(lower_bound(LowerBound::Caterpillar2d, 10) == 576);
  CHECK(lower_bound(LowerBound::Fan2d, 6) == 24);
  CHECK(lower_bound(LowerBound::Fan2d, 9) == 288);
  CHECK(lower_bound(LowerBound::H1Chain, 7, Dim::Planar) == 32);
  CHECK(lower_bound(LowerBound::H1Chain, 7, Dim::Spatial) == 16);
  CHECK(lower_bound_from_string("fan2d") == LowerBound::Fan2d);
  CHECK_THROWS_AS(lower_bound_from_string("fan3d"), Error);
  CHECK_THROWS_AS(lower_bound(LowerBound::Cyclo3d, 8), Error);
  CHECK_THROWS_AS(lower_bound(LowerBound::Caterpillar2d, 2), Error);
}

TEST_CASE("upper bound calculators", "[bounds]") {
  CHECK(bezout(6, Dim::Planar) == 256);
  CHECK(bezout(6, Dim::Spatial) == 512);
  CHECK(binomial_upper(6, Dim::Planar) == 70);
  CHECK(binomial_upper(6, Dim::Spatial) == 40);
  CHECK(binomial_upper(10, Dim::Spatial) == 54912);
  CHECK(bezout(16, Dim::Spatial) == BigInt("549755813888"));
  CHECK_THROWS_AS(bezout(3, Dim::Spatial), Error);
  for (int n = 4; n <= 16; ++n) {
    CHECK(binomial_upper(n, Dim::Spatial) <= bezout(n, Dim::Spatial));
    CHECK(table_lower(n, Dim::Spatial) <= binomial_upper(n, Dim::Spatial));
  }
  for (int n = 3; n <= 16; ++n) CHECK(table_lower(n, Dim::Planar) <= binomial_upper(n, Dim::Planar));
}

TEST_CASE("sparse lemma", "[bounds]") {
  CHECK(sparse_lemma(6, 4, Dim::Planar) == 16);
  CHECK(sparse_lemma(10, 9, Dim::Spatial) == 8);
  CHECK_THROWS_AS(sparse_lemma(6, 3, Dim::Planar), Error);
  CHECK_THROWS_AS(sparse_lemma(6, 7, Dim::Planar), Error);
  CHECK(low_degree_count(h1_chain(6, Dim::Planar)) == 2);
}

TEST_CASE("bounds report for the octahedron", "[bounds]") {
  ReportOptions opts;
  opts.naive = true;
  const BoundsReport r = bounds_report(cyclohexane_graph(), opts);
  CHECK(r.n == 6);
  CHECK(r.bezout == 512);
  CHECK(r.binomial_upper == 40);
  CHECK(r.mv_augmented == 16U);
  CHECK(r.mv_naive >= r.mv_augmented);
  CHECK(r.cls == HennebergClass::H2);
  CHECK(r.lower_formulas.count("h1chain") == 1);
  CHECK(r.lower_formulas.count("cyclo3d") == 0);
  REQUIRE(r.best_pinning);
  CHECK(r.best_pinning->fixed.size() == 3);
}

TEST_CASE("growth scan on the small planar catalogs", "[bounds][property]") {
  std::vector<CatalogEntry> catalog;
  for (auto& level : generate_levels(Dim::Planar, 5)) catalog.insert(catalog.end(), level.begin(), level.end());
  const auto records = conjecture_scan(catalog);
  CHECK_FALSE(records.empty());
  for (const auto& r : records) {
    CHECK_FALSE(r.violation);
    CHECK(r.after <= ratio_cap(r.kind) * r.before);
    if (r.kind == StepKind::H1) CHECK(r.after == 2 * r.before);
  }
}
