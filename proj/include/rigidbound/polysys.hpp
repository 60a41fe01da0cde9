#pragma once

// Pinned embedding systems. Equations are expanded with symbolic generic
// coefficients (edge lengths, pinned coordinates) so that cancellations of
// exact integer terms are honoured and the lattice supports fall out of the
// expansion. Mixed volumes only need the supports; the degeneracy witness
// additionally evaluates face polynomials whose coefficients are exact.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rigidbound/error.hpp"
#include "rigidbound/graph.hpp"

namespace rigidbound {

enum class Formulation { Naive, Augmented };

inline std::string_view to_string(Formulation f) { return f == Formulation::Naive ? "naive" : "augmented"; }

inline Formulation formulation_from_string(std::string_view s) {
  if (s == "naive") return Formulation::Naive;
  if (s == "augmented") return Formulation::Augmented;
  throw Error(ErrorCode::BadParams, "formulation must be 'naive' or 'augmented'");
}

/// Value of a pinned coordinate. Generic stands for an arbitrary nonzero real.
enum class PinValue { Zero, One, Generic };

struct Pinning {
  Dim dim = Dim::Planar;
  std::vector<int> fixed;                        // 2 (planar) or 3 (spatial) vertices
  std::vector<std::array<PinValue, 3>> constants;  // per fixed vertex; z unused in the plane

  friend bool operator==(const Pinning&, const Pinning&) = default;
};

/// First vertex at the origin, second on the x-axis (unit length in the
/// plane), third in the xy-plane.
inline Pinning make_pinning(Dim dim, std::vector<int> fixed) {
  Pinning p{dim, std::move(fixed), {}};
  constexpr auto Z = PinValue::Zero;
  constexpr auto G = PinValue::Generic;
  if (dim == Dim::Planar) {
    p.constants = {{Z, Z, Z}, {PinValue::One, Z, Z}};
  } else {
    p.constants = {{Z, Z, Z}, {G, Z, Z}, {G, G, Z}};
  }
  return p;
}

/// Every edge (plane) or triangle (space) of g, in lexicographic order.
inline std::vector<Pinning> pinning_candidates(const RigidGraph& g) {
  std::vector<Pinning> out;
  const int n = g.n();
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (!g.has_edge(a, b)) continue;
      if (g.dim() == Dim::Planar) {
        out.push_back(make_pinning(Dim::Planar, {a, b}));
        continue;
      }
      for (int c = b + 1; c < n; ++c) {
        if (g.has_edge(a, c) && g.has_edge(b, c)) out.push_back(make_pinning(Dim::Spatial, {a, b, c}));
      }
    }
  }
  return out;
}

using Exponent = std::vector<int>;
using Support = std::vector<Exponent>;  // sorted, duplicate free

/// Square sparse system given by its supports only.
struct SupportSystem {
  int num_vars = 0;
  std::vector<std::string> var_names;
  std::vector<Support> supports;
  Formulation formulation = Formulation::Augmented;

  bool square() const { return static_cast<int>(supports.size()) == num_vars; }
  friend bool operator==(const SupportSystem&, const SupportSystem&) = default;
};

/// Integer coefficient, or a symbolic generic nonzero constant. Generic terms
/// never cancel.
struct Coefficient {
  bool generic = false;
  std::int64_t value = 0;

  bool zero() const { return !generic && value == 0; }
  friend Coefficient operator+(Coefficient a, Coefficient b) {
    if (a.generic || b.generic) return {true, 0};
    return {false, a.value + b.value};
  }
  friend Coefficient operator*(Coefficient a, Coefficient b) {
    if (a.zero() || b.zero()) return {false, 0};
    if (a.generic || b.generic) return {true, 0};
    return {false, a.value * b.value};
  }
  friend bool operator==(const Coefficient&, const Coefficient&) = default;
};

class Polynomial {
 public:
  explicit Polynomial(int num_vars = 0) : num_vars_(num_vars) {}

  void add_term(const Exponent& e, Coefficient c) {
    if (c.zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.zero()) terms_.erase(it);
    }
  }

  int num_vars() const { return num_vars_; }
  const std::map<Exponent, Coefficient>& terms() const { return terms_; }

  Support support() const {
    Support s;
    for (const auto& [e, c] : terms_) s.push_back(e);
    return s;
  }

 private:
  int num_vars_;
  std::map<Exponent, Coefficient> terms_;
};

struct PolynomialSystem {
  int num_vars = 0;
  std::vector<std::string> var_names;
  std::vector<Polynomial> equations;
  Formulation formulation = Formulation::Augmented;

  SupportSystem supports() const {
    SupportSystem s{num_vars, var_names, {}, formulation};
    for (const auto& eq : equations) s.supports.push_back(eq.support());
    return s;
  }
};

namespace detail {

// A coordinate of a vertex: a variable or a pinned constant.
struct Atom {
  int var = -1;  // -1 for constants
  Coefficient constant;
};

inline Exponent unit(int num_vars, int var) {
  Exponent e(static_cast<std::size_t>(num_vars), 0);
  if (var >= 0) e[static_cast<std::size_t>(var)] = 1;
  return e;
}

// Adds scale * a * b to p.
inline void add_product(Polynomial& p, std::int64_t scale, const Atom& a, const Atom& b) {
  const int nv = p.num_vars();
  Exponent e(static_cast<std::size_t>(nv), 0);
  Coefficient c{false, scale};
  for (const Atom* x : {&a, &b}) {
    if (x->var >= 0) {
      ++e[static_cast<std::size_t>(x->var)];
    } else {
      c = c * x->constant;
    }
  }
  p.add_term(e, c);
}

inline Coefficient pin_coefficient(PinValue v) {
  switch (v) {
    case PinValue::Zero: return {false, 0};
    case PinValue::One: return {false, 1};
    case PinValue::Generic: return {true, 0};
  }
  return {};
}

struct Layout {
  int coords = 2;                // 2 or 3
  bool augmented = false;
  std::vector<int> block;        // vertex -> first variable index, -1 if pinned
  std::vector<int> pin_slot;     // vertex -> index into pinning.fixed, -1 if free
  int num_vars = 0;
  std::vector<std::string> names;

  int block_size() const { return coords + (augmented ? 1 : 0); }
};

inline Layout make_layout(const RigidGraph& g, const Pinning& p, Formulation f) {
  Layout L;
  L.coords = g.dim() == Dim::Planar ? 2 : 3;
  L.augmented = f == Formulation::Augmented;
  L.block.assign(static_cast<std::size_t>(g.n()), -1);
  L.pin_slot.assign(static_cast<std::size_t>(g.n()), -1);
  for (std::size_t i = 0; i < p.fixed.size(); ++i) L.pin_slot[static_cast<std::size_t>(p.fixed[i])] = static_cast<int>(i);
  static constexpr const char* axis[] = {"x", "y", "z"};
  for (int v = 0; v < g.n(); ++v) {
    if (L.pin_slot[static_cast<std::size_t>(v)] >= 0) continue;
    L.block[static_cast<std::size_t>(v)] = L.num_vars;
    for (int c = 0; c < L.coords; ++c) L.names.push_back(std::string(axis[c]) + std::to_string(v));
    if (L.augmented) L.names.push_back("w" + std::to_string(v));
    L.num_vars += L.block_size();
  }
  return L;
}

inline Atom coordinate(const Layout& L, const Pinning& p, int v, int c) {
  const int block = L.block[static_cast<std::size_t>(v)];
  if (block >= 0) return Atom{block + c, {}};
  return Atom{-1, pin_coefficient(p.constants[static_cast<std::size_t>(L.pin_slot[static_cast<std::size_t>(v)])][static_cast<std::size_t>(c)])};
}

// Adds sign * |v|^2, using w_v for free vertices of the augmented system.
inline void add_norm(Polynomial& p, const Layout& L, const Pinning& pin, int v, std::int64_t sign) {
  const int block = L.block[static_cast<std::size_t>(v)];
  if (L.augmented && block >= 0) {
    p.add_term(unit(L.num_vars, block + L.coords), Coefficient{false, sign});
    return;
  }
  for (int c = 0; c < L.coords; ++c) {
    const Atom a = coordinate(L, pin, v, c);
    add_product(p, sign, a, a);
  }
}

inline void check_pinning(const RigidGraph& g, const Pinning& p) {
  const std::size_t want = g.dim() == Dim::Planar ? 2 : 3;
  auto fail = [](const std::string& why) { throw Error(ErrorCode::IncompatiblePinning, why); };
  if (p.dim != g.dim()) fail("pinning dimension differs from the graph's");
  if (p.fixed.size() != want || p.constants.size() != want) fail("wrong number of pinned vertices");
  for (std::size_t i = 0; i < want; ++i) {
    if (p.fixed[i] < 0 || p.fixed[i] >= g.n()) fail("pinned vertex out of range");
    for (std::size_t j = i + 1; j < want; ++j) {
      if (p.fixed[i] == p.fixed[j]) fail("pinned vertices must be distinct");
      if (!g.has_edge(p.fixed[i], p.fixed[j])) {
        fail(want == 2 ? "pinned pair is not an edge" : "pinned triple is not a triangle");
      }
    }
  }
}

}  // namespace detail

/// Expanded polynomials of the pinned system: for the augmented form the
/// definitions w_v = |p_v|^2 come first (one per free vertex), then one
/// equation per edge not inside the pinned set, in edge order.
inline PolynomialSystem build_polynomials(const RigidGraph& g, const Pinning& pin, Formulation f) {
  detail::check_pinning(g, pin);
  const detail::Layout L = detail::make_layout(g, pin, f);
  PolynomialSystem sys{L.num_vars, L.names, {}, f};

  if (L.augmented) {
    for (int v = 0; v < g.n(); ++v) {
      const int block = L.block[static_cast<std::size_t>(v)];
      if (block < 0) continue;
      Polynomial def(L.num_vars);
      def.add_term(detail::unit(L.num_vars, block + L.coords), Coefficient{false, 1});
      for (int c = 0; c < L.coords; ++c) {
        const detail::Atom a{block + c, {}};
        detail::add_product(def, -1, a, a);
      }
      sys.equations.push_back(std::move(def));
    }
  }

  for (const auto& e : g.edges()) {
    const bool pinned_u = L.block[static_cast<std::size_t>(e.u)] < 0;
    const bool pinned_v = L.block[static_cast<std::size_t>(e.v)] < 0;
    if (pinned_u && pinned_v) continue;
    Polynomial eq(L.num_vars);
    detail::add_norm(eq, L, pin, e.u, 1);
    detail::add_norm(eq, L, pin, e.v, 1);
    for (int c = 0; c < L.coords; ++c) {
      detail::add_product(eq, -2, detail::coordinate(L, pin, e.u, c), detail::coordinate(L, pin, e.v, c));
    }
    eq.add_term(detail::unit(L.num_vars, -1), Coefficient{true, 0});  // squared edge length
    sys.equations.push_back(std::move(eq));
  }
  return sys;
}

inline SupportSystem build_system(const RigidGraph& g, const Pinning& pin, Formulation f) {
  SupportSystem s = build_polynomials(g, pin, f).supports();
  if (!s.square()) throw Error(ErrorCode::DimensionMismatch, "pinned system is not square");
  return s;
}

inline std::int64_t inner(const std::vector<int>& v, const Exponent& e) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < e.size(); ++i) s += static_cast<std::int64_t>(v[i]) * e[i];
  return s;
}

/// Keeps, in each support, the points minimizing <v, .>.
inline SupportSystem face_system(const SupportSystem& s, const std::vector<int>& v) {
  if (static_cast<int>(v.size()) != s.num_vars) throw Error(ErrorCode::DimensionMismatch, "direction has wrong length");
  if (std::all_of(v.begin(), v.end(), [](int x) { return x == 0; })) {
    throw Error(ErrorCode::BadParams, "face direction must be nonzero");
  }
  SupportSystem out = s;
  for (auto& sup : out.supports) {
    if (sup.empty()) continue;
    std::int64_t best = inner(v, sup.front());
    for (const auto& e : sup) best = std::min(best, inner(v, e));
    std::erase_if(sup, [&](const Exponent& e) { return inner(v, e) != best; });
  }
  return out;
}

inline Polynomial face_polynomial(const Polynomial& p, const std::vector<int>& v) {
  Polynomial out(p.num_vars());
  if (p.terms().empty()) return out;
  std::int64_t best = inner(v, p.terms().begin()->first);
  for (const auto& [e, c] : p.terms()) best = std::min(best, inner(v, e));
  for (const auto& [e, c] : p.terms()) {
    if (inner(v, e) == best) out.add_term(e, c);
  }
  return out;
}

/// Human-readable form, e.g. "w3 - x3^2 - y3^2" with generic constants shown as "c".
inline std::string to_string(const Polynomial& p, const std::vector<std::string>& names) {
  std::string out;
  for (const auto& [e, c] : p.terms()) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string coef;
    bool negative = false;
    if (c.generic) {
      coef = "c";
    } else {
      negative = c.value < 0;
      const std::int64_t mag = negative ? -c.value : c.value;
      if (mag != 1 || mono.empty()) coef = std::to_string(mag);
    }
    std::string term = coef.empty() ? mono : (mono.empty() ? coef : coef + "*" + mono);
    if (out.empty()) {
      out = (negative ? "-" : "") + term;
    } else {
      out += (negative ? " - " : " + ") + term;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace rigidbound
