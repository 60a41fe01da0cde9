#include <catch_amalgamated.hpp>

#include "rigidbound/constructions.hpp"
#include "rigidbound/enumerate.hpp"
#include "rigidbound/polysys.hpp"

using namespace rigidbound;

namespace {

bool has_code(const Error& e, ErrorCode c) { return e.code() == c; }

template <class Fn>
void check_code(Fn&& fn, ErrorCode code) {
  try {
    fn();
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(has_code(e, code));
  }
}

}  // namespace

TEST_CASE("triangle systems", "[polysys]") {
  const RigidGraph g = triangle_graph();
  const Pinning pin = pinning_candidates(g).front();
  const SupportSystem naive = build_system(g, pin, Formulation::Naive);
  CHECK(naive.var_names == std::vector<std::string>{"x2", "y2"});
  CHECK(naive.supports == std::vector<Support>{{{0, 0}, {0, 2}, {2, 0}}, {{0, 0}, {0, 2}, {1, 0}, {2, 0}}});

  const SupportSystem aug = build_system(g, pin, Formulation::Augmented);
  CHECK(aug.var_names == std::vector<std::string>{"x2", "y2", "w2"});
  // the definition has no constant term; edges to pinned vertices are linear
  CHECK(aug.supports[0] == Support{{0, 0, 1}, {0, 2, 0}, {2, 0, 0}});
  CHECK(aug.supports[1] == Support{{0, 0, 0}, {0, 0, 1}});
  CHECK(aug.supports[2] == Support{{0, 0, 0}, {0, 0, 1}, {1, 0, 0}});
}

TEST_CASE("spatial pinning uses generic constants off the origin", "[polysys]") {
  const RigidGraph g = simplex3_graph();
  const PolynomialSystem sys = build_polynomials(g, pinning_candidates(g).front(), Formulation::Augmented);
  CHECK(sys.var_names == std::vector<std::string>{"x3", "y3", "z3", "w3"});
  CHECK(to_string(sys.equations[0], sys.var_names) == "w3 - z3^2 - y3^2 - x3^2");
  CHECK(to_string(sys.equations[3], sys.var_names) == "c + w3 + c*y3 + c*x3");
}

TEST_CASE("pinned systems are square with the expected sizes", "[polysys][property]") {
  for (Dim dim : {Dim::Planar, Dim::Spatial}) {
    const int d = dim == Dim::Planar ? 2 : 3;
    for (const auto& level : generate_levels(dim, 7)) {
      for (const auto& e : level) {
        const int free = e.graph.n() - d;
        for (const auto& pin : pinning_candidates(e.graph)) {
          const SupportSystem naive = build_system(e.graph, pin, Formulation::Naive);
          const SupportSystem aug = build_system(e.graph, pin, Formulation::Augmented);
          CHECK(naive.num_vars == d * free);
          CHECK(aug.num_vars == (d + 1) * free);
          for (const auto& s : naive.supports) {
            CHECK(s.size() >= 2);
            CHECK(s.size() <= static_cast<std::size_t>(4 * d + 1));
          }
        }
      }
    }
  }
}

TEST_CASE("pinning candidates are edges in the plane and triangles in space", "[polysys]") {
  CHECK(pinning_candidates(desargues_graph()).size() == 9);
  CHECK(pinning_candidates(cyclohexane_graph()).size() == 8);
  CHECK(pinning_candidates(simplex3_graph()).size() == 4);
}

TEST_CASE("bad pinnings are rejected", "[polysys][errors]") {
  const RigidGraph g = k33_graph();
  check_code([&] { build_system(g, make_pinning(Dim::Planar, {0, 1}), Formulation::Naive); }, ErrorCode::IncompatiblePinning);
  check_code([&] { build_system(g, make_pinning(Dim::Planar, {0, 9}), Formulation::Naive); }, ErrorCode::IncompatiblePinning);
  check_code([&] { build_system(g, make_pinning(Dim::Spatial, {0, 3, 1}), Formulation::Naive); }, ErrorCode::IncompatiblePinning);
  check_code([&] { build_system(cyclohexane_graph(), make_pinning(Dim::Spatial, {0, 0, 1}), Formulation::Naive); },
             ErrorCode::IncompatiblePinning);
}

TEST_CASE("face systems keep the minimizing points", "[polysys]") {
  const SupportSystem s{2, {"x", "y"}, {{{0, 0}, {1, 0}, {0, 2}}, {{1, 1}, {2, 0}}}, Formulation::Naive};
  const SupportSystem f = face_system(s, {-1, -1});
  CHECK(f.supports[0] == Support{{0, 2}});
  CHECK(f.supports[1] == Support{{1, 1}, {2, 0}});
  check_code([&] { face_system(s, {0, 0}); }, ErrorCode::BadParams);
  check_code([&] { face_system(s, {1}); }, ErrorCode::DimensionMismatch);
}

TEST_CASE("formulation names", "[polysys]") {
  CHECK(formulation_from_string("naive") == Formulation::Naive);
  CHECK(formulation_from_string(to_string(Formulation::Augmented)) == Formulation::Augmented);
  CHECK_THROWS_AS(formulation_from_string("mixed"), Error);
}
