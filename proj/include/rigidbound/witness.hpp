#pragma once

// Toric root at infinity of the naive spatial system. Along v = (-1, ..., -1)
// the face system keeps only the quadratic parts, and every free vertex at
// (1, 1, gamma*sqrt(2)) with gamma^2 = -1 solves it, so the mixed volume of
// the naive system overcounts.

#include <cstdint>
#include <string>
#include <vector>

#include "rigidbound/error.hpp"
#include "rigidbound/polysys.hpp"

namespace rigidbound {

/// p + q * s with s = i*sqrt(2), so s^2 = -2.
struct ZSqrtM2 {
  std::int64_t p = 0;
  std::int64_t q = 0;

  bool zero() const { return p == 0 && q == 0; }
  friend ZSqrtM2 operator+(ZSqrtM2 a, ZSqrtM2 b) { return {a.p + b.p, a.q + b.q}; }
  friend ZSqrtM2 operator*(ZSqrtM2 a, ZSqrtM2 b) { return {a.p * b.p - 2 * a.q * b.q, a.p * b.q + a.q * b.p}; }
  friend bool operator==(const ZSqrtM2&, const ZSqrtM2&) = default;
};

inline std::string to_string(const ZSqrtM2& z) {
  if (z.q == 0) return std::to_string(z.p);
  std::string s = z.q == 1 ? "i*sqrt(2)" : (z.q == -1 ? "-i*sqrt(2)" : std::to_string(z.q) + "*i*sqrt(2)");
  if (z.p == 0) return s;
  return std::to_string(z.p) + (z.q > 0 ? " + " : " - ") + (z.q > 0 ? s : s.substr(1));
}

struct FaceWitness {
  std::vector<int> direction;
  std::vector<ZSqrtM2> point;  // one entry per free variable
  int gamma_sign = 1;
  std::vector<Polynomial> face;
  std::vector<ZSqrtM2> residuals;
  SupportSystem face_supports;
  bool verified = false;
};

/// Evaluates p over Z[i sqrt 2]; clears `ok` if a coefficient is symbolic.
inline ZSqrtM2 evaluate(const Polynomial& p, const std::vector<ZSqrtM2>& point, bool& ok) {
  ZSqrtM2 sum;
  for (const auto& [e, c] : p.terms()) {
    if (c.generic) {
      ok = false;
      continue;
    }
    ZSqrtM2 term{c.value, 0};
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (int k = 0; k < e[i]; ++k) term = term * point[i];
    }
    sum = sum + term;
  }
  return sum;
}

inline FaceWitness degeneracy_witness(const RigidGraph& g, const Pinning& pin, Formulation f = Formulation::Naive,
                                      int gamma_sign = 1) {
  if (g.dim() != Dim::Spatial) throw Error(ErrorCode::NotApplicable, "the witness lives in the spatial system");
  if (f != Formulation::Naive) {
    throw Error(ErrorCode::NotApplicable, "the augmented system has no such root at infinity");
  }
  if (gamma_sign != 1 && gamma_sign != -1) throw Error(ErrorCode::BadParams, "gamma sign must be +1 or -1");
  const PolynomialSystem sys = build_polynomials(g, pin, f);
  if (sys.num_vars == 0) throw Error(ErrorCode::NotApplicable, "no free vertex");

  FaceWitness w;
  w.gamma_sign = gamma_sign;
  w.direction.assign(static_cast<std::size_t>(sys.num_vars), -1);
  for (int v = 0; v < sys.num_vars; v += 3) {
    w.point.push_back({1, 0});
    w.point.push_back({1, 0});
    w.point.push_back({0, gamma_sign});
  }
  bool ok = true;
  for (const auto& eq : sys.equations) {
    Polynomial face = face_polynomial(eq, w.direction);
    w.residuals.push_back(evaluate(face, w.point, ok));
    w.face.push_back(std::move(face));
  }
  w.face_supports = face_system(sys.supports(), w.direction);
  bool toric = true;
  for (const auto& z : w.point) toric = toric && !z.zero();
  bool vanish = true;
  for (const auto& r : w.residuals) vanish = vanish && r.zero();
  w.verified = ok && toric && vanish;
  return w;
}

}  // namespace rigidbound
