#pragma once

// Named graphs: the small special graphs and the caterpillar / H1-chain
// families behind the lower bounds.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rigidbound/error.hpp"
#include "rigidbound/graph.hpp"

namespace rigidbound {

struct NamedGraphParams {
  int copies = 1;  // caterpillars
  int n = 0;       // h1_chain
  Dim dim = Dim::Planar;
};

namespace detail {

inline RigidGraph checked(RigidGraph g, std::string_view name) {
  if (!is_valid(g)) throw Error(ErrorCode::ValidityViolation, std::string(name) + " failed its validity check");
  return g;
}

// Triangular prism on a = (a0,a1,a2), b = (b0,b1,b2).
inline void add_prism(RigidGraph& g, const std::array<int, 3>& a, const std::array<int, 3>& b) {
  for (const auto& t : {a, b}) {
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        if (!g.has_edge(t[i], t[j])) g.add_edge(t[i], t[j]);
      }
    }
  }
  for (int i = 0; i < 3; ++i) g.add_edge(a[i], b[i]);
}

// Octahedron with opposite pairs (p[i], q[i]).
inline void add_octahedron(RigidGraph& g, const std::array<int, 3>& p, const std::array<int, 3>& q) {
  const std::array<int, 6> v{p[0], q[0], p[1], q[1], p[2], q[2]};
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      if (j == i + 1 && i % 2 == 0) continue;  // opposite pair
      if (!g.has_edge(v[i], v[j])) g.add_edge(v[i], v[j]);
    }
  }
}

}  // namespace detail

inline RigidGraph desargues_graph() {
  RigidGraph g(Dim::Planar, 6);
  detail::add_prism(g, {0, 1, 2}, {3, 4, 5});
  return detail::checked(g, "desargues");
}

inline RigidGraph k33_graph() {
  RigidGraph g(Dim::Planar, 6);
  for (int a = 0; a < 3; ++a) {
    for (int b = 3; b < 6; ++b) g.add_edge(a, b);
  }
  return detail::checked(g, "k33");
}

/// The octahedron.
inline RigidGraph cyclohexane_graph() {
  RigidGraph g(Dim::Spatial, 6);
  detail::add_octahedron(g, {0, 1, 2}, {3, 4, 5});
  return detail::checked(g, "cyclohexane");
}

inline RigidGraph skeleton5_graph() {
  return replay(HennebergSequence{Dim::Spatial, {make_step(StepKind::H1, {0, 1, 2})}});
}

/// The six-vertex simplicial skeleton other than the octahedron (degrees 3,3,4,4,5,5).
inline RigidGraph g1_n6_graph() {
  return replay(HennebergSequence{Dim::Spatial, {make_step(StepKind::H1, {0, 1, 2}), make_step(StepKind::H1, {0, 1, 4})}});
}

/// Copies of the prism glued along an edge; n = 4c + 2.
inline RigidGraph desargues_caterpillar(int copies) {
  if (copies < 1 || 4 * copies + 2 > kMaxVertices) {
    throw Error(ErrorCode::BadParams, "desargues_caterpillar needs 1 <= c <= 3");
  }
  RigidGraph g(Dim::Planar, 4 * copies + 2);
  std::array<int, 3> a{0, 1, 2};
  std::array<int, 3> b{3, 4, 5};
  detail::add_prism(g, a, b);
  int next = 6;
  for (int c = 1; c < copies; ++c) {
    a = {b[1], b[2], next};
    b = {next + 1, next + 2, next + 3};
    next += 4;
    detail::add_prism(g, a, b);
  }
  return detail::checked(g, "desargues_caterpillar");
}

/// Octahedra glued along disjoint facets; n = 3c + 3.
inline RigidGraph cyclohexane_caterpillar(int copies) {
  if (copies < 1 || 3 * copies + 3 > kMaxVertices) {
    throw Error(ErrorCode::BadParams, "cyclohexane_caterpillar needs 1 <= c <= 4");
  }
  RigidGraph g(Dim::Spatial, 3 * copies + 3);
  std::array<int, 3> p{0, 1, 2};
  std::array<int, 3> q{3, 4, 5};
  detail::add_octahedron(g, p, q);
  for (int c = 1; c < copies; ++c) {
    p = q;
    q = {3 * c + 3, 3 * c + 4, 3 * c + 5};
    detail::add_octahedron(g, p, q);
  }
  return detail::checked(g, "cyclohexane_caterpillar");
}

/// Base graph followed by H1 steps, each attached to the most recent vertices.
inline RigidGraph h1_chain(int n, Dim dim) {
  const int base = base_size(dim);
  if (n < base || n > kMaxVertices) throw Error(ErrorCode::BadParams, "h1_chain size out of range");
  RigidGraph g = base_graph(dim);
  for (int v = base; v < n; ++v) {
    std::vector<int> attach;
    for (int back = 1; back <= (dim == Dim::Planar ? 2 : 3); ++back) attach.push_back(v - back);
    g = apply_step(g, make_step(StepKind::H1, attach));
  }
  return g;
}

inline const std::vector<std::string>& named_graph_ids() {
  static const std::vector<std::string> ids{"triangle",  "simplex3",   "desargues",
                                            "k33",       "cyclohexane", "octahedron",
                                            "g1_n6",     "skeleton5",  "desargues_caterpillar",
                                            "cyclohexane_caterpillar", "h1_chain"};
  return ids;
}

inline RigidGraph make_named(std::string_view name, const NamedGraphParams& params = {}) {
  if (name == "triangle") return triangle_graph();
  if (name == "simplex3") return simplex3_graph();
  if (name == "desargues") return desargues_graph();
  if (name == "k33") return k33_graph();
  if (name == "cyclohexane" || name == "octahedron") return cyclohexane_graph();
  if (name == "g1_n6") return g1_n6_graph();
  if (name == "skeleton5") return skeleton5_graph();
  if (name == "desargues_caterpillar") return desargues_caterpillar(params.copies);
  if (name == "cyclohexane_caterpillar") return cyclohexane_caterpillar(params.copies);
  if (name == "h1_chain") return h1_chain(params.n, params.dim);
  throw Error(ErrorCode::UnknownName, "no named graph '" + std::string(name) + "'");
}

/// Parses "desargues", "cyclohexane_caterpillar,c=2" or "h1_chain,n=7,dim=3".
inline RigidGraph make_named_from_spec(std::string_view spec) {
  const auto comma = spec.find(',');
  const std::string_view name = spec.substr(0, comma);
  NamedGraphParams params;
  std::string_view rest = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
  while (!rest.empty()) {
    const auto next = rest.find(',');
    const std::string_view kv = rest.substr(0, next);
    const auto eq = kv.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorCode::BadParams, "expected key=value in '" + std::string(kv) + "'");
    const std::string key(kv.substr(0, eq));
    int value = 0;
    try {
      value = std::stoi(std::string(kv.substr(eq + 1)));
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadParams, "non-integer parameter in '" + std::string(kv) + "'");
    }
    if (key == "c" || key == "copies") {
      params.copies = value;
    } else if (key == "n") {
      params.n = value;
    } else if (key == "dim") {
      params.dim = dim_from_int(value);
    } else {
      throw Error(ErrorCode::BadParams, "unknown parameter '" + key + "'");
    }
    rest = next == std::string_view::npos ? std::string_view{} : rest.substr(next + 1);
  }
  return make_named(name, params);
}

}  // namespace rigidbound
