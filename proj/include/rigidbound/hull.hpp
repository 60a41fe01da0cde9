#pragma once

// Exact normalized volume (d! times Euclidean volume) of the convex hull of
// a lattice point set, by a placing triangulation: each new point is coned
// over the boundary simplices it sees strictly.

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "rigidbound/numeric.hpp"

namespace rigidbound {

using Point = std::vector<std::int64_t>;

struct HullVolume {
  BigInt volume = 0;            // normalized
  std::vector<Point> vertices;  // superset of the hull vertices (all points when degenerate)
};

namespace detail {

/// Cofactor normal a of the hyperplane through `facet`, so that
/// a . (q - v0) = det[v1 - v0, ..., v_{d-1} - v0, q - v0].
template <class Int>
std::vector<Int> facet_normal(const std::vector<const Point*>& facet, std::size_t d) {
  const Point& v0 = *facet[0];
  std::vector<Int> normal(d);
  for (std::size_t e = 0; e < d; ++e) {
    std::vector<std::vector<Int>> m(d, std::vector<Int>(d, Int(0)));
    for (std::size_t r = 1; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) m[r - 1][c] = Int((*facet[r])[c] - v0[c]);
    }
    m[d - 1][e] = Int(1);
    normal[e] = bareiss_determinant(std::move(m));
  }
  return normal;
}

template <class Int>
HullVolume hull_volume_with(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  HullVolume out;
  if (pts.empty()) return out;
  const std::size_t d = pts.front().size();
  if (d == 0) {
    out.volume = 1;
    out.vertices = pts;
    return out;
  }

  // Greedy affinely independent start.
  std::vector<std::size_t> simplex{0};
  std::vector<std::vector<Int>> basis;  // row-echelon reduced differences
  std::vector<std::size_t> pivots;
  for (std::size_t i = 1; i < pts.size() && simplex.size() < d + 1; ++i) {
    std::vector<Int> v(d);
    for (std::size_t c = 0; c < d; ++c) v[c] = Int(pts[i][c] - pts[0][c]);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const std::size_t p = pivots[b];
      if (v[p] == Int(0)) continue;
      const Int f = v[p];
      const Int g = basis[b][p];
      for (std::size_t c = 0; c < d; ++c) v[c] = v[c] * g - basis[b][c] * f;
    }
    auto nz = std::find_if(v.begin(), v.end(), [](const Int& x) { return x != Int(0); });
    if (nz == v.end()) continue;
    pivots.push_back(static_cast<std::size_t>(nz - v.begin()));
    basis.push_back(std::move(v));
    simplex.push_back(i);
  }
  if (simplex.size() < d + 1) {
    out.vertices = pts;
    return out;
  }

  // Interior reference point, scaled by d + 1 to stay integral.
  const auto scale = static_cast<std::int64_t>(d + 1);
  Point inner(d, 0);
  for (std::size_t i : simplex) {
    for (std::size_t c = 0; c < d; ++c) inner[c] += pts[i][c];
  }

  struct Facet {
    std::vector<std::size_t> v;  // sorted point indices
    std::vector<Int> normal;
    Int offset;                  // normal . v0
    int inner_sign;
  };
  // normal . (scale * q) - scale * offset
  auto side = [](const Facet& f, const Point& q, std::int64_t q_scale) {
    Int s = Int(0) - f.offset * Int(q_scale);
    for (std::size_t c = 0; c < q.size(); ++c) s += f.normal[c] * Int(q[c]);
    return s;
  };
  auto make_facet = [&](std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    std::vector<const Point*> fp;
    for (std::size_t i : v) fp.push_back(&pts[i]);
    Facet f{std::move(v), facet_normal<Int>(fp, d), Int(0), 0};
    for (std::size_t c = 0; c < d; ++c) f.offset += f.normal[c] * Int((*fp[0])[c]);
    f.inner_sign = sign_of(side(f, inner, scale));
    return f;
  };

  std::vector<Facet> facets;
  for (std::size_t skip = 0; skip < simplex.size(); ++skip) {
    std::vector<std::size_t> v;
    for (std::size_t k = 0; k < simplex.size(); ++k) {
      if (k != skip) v.push_back(simplex[k]);
    }
    facets.push_back(make_facet(std::move(v)));
  }
  out.volume = to_big(abs_of(side(facets.front(), pts[simplex.front()], 1)));

  std::vector<bool> in_simplex(pts.size(), false);
  for (std::size_t i : simplex) in_simplex[i] = true;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (in_simplex[i]) continue;
    const Point& q = pts[i];
    std::vector<Facet> keep;
    std::map<std::vector<std::size_t>, int> ridges;
    bool seen = false;
    for (auto& f : facets) {
      const Int o = side(f, q, 1);
      const int s = sign_of(o);
      if (s != 0 && s != f.inner_sign) {
        seen = true;
        out.volume += to_big(abs_of(o));
        for (std::size_t skip = 0; skip < f.v.size(); ++skip) {
          std::vector<std::size_t> r;
          for (std::size_t k = 0; k < f.v.size(); ++k) {
            if (k != skip) r.push_back(f.v[k]);
          }
          ++ridges[r];
        }
      } else {
        keep.push_back(std::move(f));
      }
    }
    if (!seen) continue;
    for (auto& [r, count] : ridges) {
      if (count != 1) continue;
      auto v = r;
      v.push_back(i);
      keep.push_back(make_facet(std::move(v)));
    }
    facets = std::move(keep);
  }

  std::vector<bool> is_vertex(pts.size(), false);
  for (const auto& f : facets) {
    for (std::size_t i : f.v) is_vertex[i] = true;
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (is_vertex[i]) out.vertices.push_back(pts[i]);
  }
  return out;
}

}  // namespace detail

inline HullVolume hull_volume(const std::vector<Point>& pts) {
  try {
    return detail::hull_volume_with<Checked128>(pts);
  } catch (const ArithmeticOverflow&) {
    return detail::hull_volume_with<BigInt>(pts);
  }
}

}  // namespace rigidbound
