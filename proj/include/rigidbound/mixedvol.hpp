#pragma once

// Normalized mixed volume by mixed-cell enumeration over a random integer
// lifting. A fine mixed cell picks one lower edge per lifted support such
// that all picks share an inner normal; MV is the sum of |det| over cells.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rigidbound/error.hpp"
#include "rigidbound/hull.hpp"
#include "rigidbound/lp.hpp"
#include "rigidbound/numeric.hpp"
#include "rigidbound/polysys.hpp"

namespace rigidbound {

struct MixedVolumeOptions {
  std::uint64_t seed = 20050711;
  int max_redraws = 16;
  std::int64_t max_height = std::int64_t{1} << 20;
};

struct MixedVolumeResult {
  std::uint64_t mv = 0;
  std::uint64_t cells = 0;
  std::uint64_t seed = 0;  // seed of the lifting that succeeded
  int redraws = 0;
};

namespace detail {

struct DegenerateLifting {};

class CellEnumerator {
 public:
  CellEnumerator(const SupportSystem& s, std::vector<std::vector<std::int64_t>> heights)
      : n_(s.num_vars), supports_(s.supports), heights_(std::move(heights)) {}

  MixedVolumeResult run() {
    build_edges();
    for (const auto& e : edges_) {
      if (e.empty()) return {};
    }
    build_compat();
    std::vector<Mask> domains(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) domains[static_cast<std::size_t>(i)] = full_mask(i);
    std::vector<int> chosen(static_cast<std::size_t>(n_), -1);
    dfs(domains, chosen, 0);
    return {static_cast<std::uint64_t>(total_), cells_, 0, 0};
  }

 private:
  using Mask = std::vector<std::uint64_t>;
  struct Pair {
    int a, b;
  };

  std::size_t words(int i) const { return (edges_[static_cast<std::size_t>(i)].size() + 63) / 64; }

  Mask full_mask(int i) const {
    const std::size_t m = edges_[static_cast<std::size_t>(i)].size();
    Mask out((m + 63) / 64, ~std::uint64_t{0});
    if (m % 64 != 0) out.back() = (std::uint64_t{1} << (m % 64)) - 1;
    return out;
  }

  static int popcount(const Mask& m) {
    int c = 0;
    for (auto w : m) c += std::popcount(w);
    return c;
  }

  const Exponent& point(int i, int k) const { return supports_[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]; }
  std::int64_t height(int i, int k) const { return heights_[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]; }

  // Constraints saying that pair p of support i is the lower face along (gamma, 1).
  void append_constraints(std::vector<lp::Constraint>& out, int i, const Pair& p) const {
    const auto& a = point(i, p.a);
    const auto& b = point(i, p.b);
    lp::Constraint eq{std::vector<std::int64_t>(static_cast<std::size_t>(n_)), height(i, p.b) - height(i, p.a), true};
    for (int j = 0; j < n_; ++j) eq.coeffs[static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(j)] - b[static_cast<std::size_t>(j)];
    out.push_back(std::move(eq));
    const int m = static_cast<int>(supports_[static_cast<std::size_t>(i)].size());
    for (int k = 0; k < m; ++k) {
      if (k == p.a || k == p.b) continue;
      const auto& c = point(i, k);
      lp::Constraint ge{std::vector<std::int64_t>(static_cast<std::size_t>(n_)), height(i, p.a) - height(i, k), false};
      for (int j = 0; j < n_; ++j) ge.coeffs[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j)] - a[static_cast<std::size_t>(j)];
      out.push_back(std::move(ge));
    }
  }

  void build_edges() {
    edges_.resize(static_cast<std::size_t>(n_));
    vars_.resize(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
      const auto& sup = supports_[static_cast<std::size_t>(i)];
      const int m = static_cast<int>(sup.size());
      std::uint64_t used = 0;
      for (const auto& e : sup) {
        for (int j = 0; j < n_; ++j) {
          if (e[static_cast<std::size_t>(j)] != sup.front()[static_cast<std::size_t>(j)]) used |= std::uint64_t{1} << (j % 64);
        }
      }
      vars_[static_cast<std::size_t>(i)] = used;
      for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) {
          std::vector<lp::Constraint> cons;
          append_constraints(cons, i, {a, b});
          if (lp::feasible(n_, cons)) edges_[static_cast<std::size_t>(i)].push_back({a, b});
        }
      }
    }
  }

  void build_compat() {
    offset_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (int i = 0; i < n_; ++i) offset_[static_cast<std::size_t>(i) + 1] = offset_[static_cast<std::size_t>(i)] + edges_[static_cast<std::size_t>(i)].size();
    compat_.assign(offset_.back(), std::vector<Mask>(static_cast<std::size_t>(n_)));
    for (int i = 0; i < n_; ++i) {
      for (std::size_t e = 0; e < edges_[static_cast<std::size_t>(i)].size(); ++e) {
        auto& row = compat_[offset_[static_cast<std::size_t>(i)] + e];
        for (int j = 0; j < n_; ++j) row[static_cast<std::size_t>(j)] = j == i ? Mask(words(j), 0) : full_mask(j);
      }
    }
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        if ((vars_[static_cast<std::size_t>(i)] & vars_[static_cast<std::size_t>(j)]) == 0 && n_ <= 64) continue;
        for (std::size_t e = 0; e < edges_[static_cast<std::size_t>(i)].size(); ++e) {
          for (std::size_t f = 0; f < edges_[static_cast<std::size_t>(j)].size(); ++f) {
            std::vector<lp::Constraint> cons;
            append_constraints(cons, i, edges_[static_cast<std::size_t>(i)][e]);
            append_constraints(cons, j, edges_[static_cast<std::size_t>(j)][f]);
            if (lp::feasible(n_, cons)) continue;
            compat_[offset_[static_cast<std::size_t>(i)] + e][static_cast<std::size_t>(j)][f / 64] &= ~(std::uint64_t{1} << (f % 64));
            compat_[offset_[static_cast<std::size_t>(j)] + f][static_cast<std::size_t>(i)][e / 64] &= ~(std::uint64_t{1} << (e % 64));
          }
        }
      }
    }
  }

  bool joint_feasible(const std::vector<int>& chosen) const {
    std::vector<lp::Constraint> cons;
    for (int i = 0; i < n_; ++i) {
      const int e = chosen[static_cast<std::size_t>(i)];
      if (e >= 0) append_constraints(cons, i, edges_[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)]);
    }
    return lp::feasible(n_, cons);
  }

  template <class Int>
  std::optional<Int> leaf_with(const std::vector<int>& chosen) const {
    const auto N = static_cast<std::size_t>(n_);
    std::vector<std::vector<Int>> m(N, std::vector<Int>(N));
    std::vector<Int> rhs(N);
    for (std::size_t i = 0; i < N; ++i) {
      const Pair p = edges_[i][static_cast<std::size_t>(chosen[i])];
      const auto& a = point(static_cast<int>(i), p.a);
      const auto& b = point(static_cast<int>(i), p.b);
      for (std::size_t j = 0; j < N; ++j) m[i][j] = Int(std::int64_t{a[j] - b[j]});
      rhs[i] = Int(height(static_cast<int>(i), p.b) - height(static_cast<int>(i), p.a));
    }
    const Int det = bareiss_determinant(m);
    if (det == Int(0)) {
      // Dependent edges: a genuine cell here would mean a non-generic lifting.
      if (joint_feasible(chosen)) throw DegenerateLifting{};
      return std::nullopt;
    }
    // det * gamma by Cramer's rule.
    std::vector<Int> scaled(N);
    for (std::size_t j = 0; j < N; ++j) {
      auto mj = m;
      for (std::size_t i = 0; i < N; ++i) mj[i][j] = rhs[i];
      scaled[j] = bareiss_determinant(std::move(mj));
    }
    const int sd = sign_of(det);
    for (std::size_t i = 0; i < N; ++i) {
      const Pair p = edges_[i][static_cast<std::size_t>(chosen[i])];
      const auto& a = point(static_cast<int>(i), p.a);
      const int msize = static_cast<int>(supports_[i].size());
      for (int k = 0; k < msize; ++k) {
        if (k == p.a || k == p.b) continue;
        const auto& c = point(static_cast<int>(i), k);
        Int v = Int(height(static_cast<int>(i), k) - height(static_cast<int>(i), p.a)) * det;
        for (std::size_t j = 0; j < N; ++j) {
          const int d = c[j] - a[j];
          if (d != 0) v += Int(std::int64_t{d}) * scaled[j];
        }
        const int s = sign_of(v) * sd;
        if (s == 0) throw DegenerateLifting{};
        if (s < 0) return std::nullopt;
      }
    }
    return abs_of(det);
  }

  void leaf(const std::vector<int>& chosen) {
    std::optional<std::uint64_t> vol;
    try {
      if (auto d = leaf_with<Checked128>(chosen)) vol = to_u64(*d);
    } catch (const ArithmeticOverflow&) {
      if (auto d = leaf_with<BigInt>(chosen)) {
        if (*d > BigInt(std::numeric_limits<std::uint64_t>::max() / 2)) throw Error(ErrorCode::Overflow, "mixed volume exceeds 64 bits");
        vol = to_u64(*d);
      }
    }
    if (!vol) return;
    ++cells_;
    total_ += *vol;
  }

  void dfs(const std::vector<Mask>& domains, std::vector<int>& chosen, int depth) {
    if (depth == n_) {
      leaf(chosen);
      return;
    }
    int pick = -1;
    int best = 0;
    for (int i = 0; i < n_; ++i) {
      if (chosen[static_cast<std::size_t>(i)] >= 0) continue;
      const int c = popcount(domains[static_cast<std::size_t>(i)]);
      if (pick < 0 || c < best) {
        pick = i;
        best = c;
      }
    }
    if (best == 0) return;
    const Mask& dom = domains[static_cast<std::size_t>(pick)];
    for (std::size_t w = 0; w < dom.size(); ++w) {
      for (std::uint64_t bits = dom[w]; bits != 0; bits &= bits - 1) {
        const std::size_t e = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        const auto& row = compat_[offset_[static_cast<std::size_t>(pick)] + e];
        std::vector<Mask> next = domains;
        bool empty = false;
        for (int j = 0; j < n_ && !empty; ++j) {
          if (chosen[static_cast<std::size_t>(j)] >= 0 || j == pick) continue;
          auto& d = next[static_cast<std::size_t>(j)];
          int live = 0;
          for (std::size_t k = 0; k < d.size(); ++k) {
            d[k] &= row[static_cast<std::size_t>(j)][k];
            live |= d[k] != 0 ? 1 : 0;
          }
          empty = live == 0;
        }
        if (empty) continue;
        chosen[static_cast<std::size_t>(pick)] = static_cast<int>(e);
        if (depth + 1 >= 3 && depth + 1 < n_ && !joint_feasible(chosen)) {
          chosen[static_cast<std::size_t>(pick)] = -1;
          continue;
        }
        dfs(next, chosen, depth + 1);
        chosen[static_cast<std::size_t>(pick)] = -1;
      }
    }
  }

  int n_;
  const std::vector<Support>& supports_;
  std::vector<std::vector<std::int64_t>> heights_;
  std::vector<std::vector<Pair>> edges_;
  std::vector<std::uint64_t> vars_;
  std::vector<std::size_t> offset_;
  std::vector<std::vector<Mask>> compat_;  // [global edge][support] -> compatible edges
  std::uint64_t total_ = 0;
  std::uint64_t cells_ = 0;
};

inline void check_square(const SupportSystem& s) {
  if (!s.square()) throw Error(ErrorCode::DimensionMismatch, "mixed volume needs as many supports as variables");
  for (const auto& sup : s.supports) {
    if (sup.empty()) throw Error(ErrorCode::InvalidInput, "empty support");
    for (const auto& e : sup) {
      if (static_cast<int>(e.size()) != s.num_vars) throw Error(ErrorCode::DimensionMismatch, "exponent has wrong length");
    }
  }
}

// Sorted, duplicate-free copy of each support.
inline SupportSystem normalized(SupportSystem s) {
  for (auto& sup : s.supports) {
    std::sort(sup.begin(), sup.end());
    sup.erase(std::unique(sup.begin(), sup.end()), sup.end());
  }
  return s;
}

}  // namespace detail

/// Normalized mixed volume, MV(P, ..., P) = n! Vol(P).
inline MixedVolumeResult mixed_volume(const SupportSystem& input, const MixedVolumeOptions& opts = {}) {
  detail::check_square(input);
  const SupportSystem s = detail::normalized(input);
  if (s.num_vars == 0) return {0, 0, opts.seed, 0};
  for (const auto& sup : s.supports) {
    if (sup.size() < 2) return {0, 0, opts.seed, 0};
  }
  for (int attempt = 0; attempt <= opts.max_redraws; ++attempt) {
    const std::uint64_t seed = opts.seed + static_cast<std::uint64_t>(attempt);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> dist(0, opts.max_height);
    std::vector<std::vector<std::int64_t>> heights;
    for (const auto& sup : s.supports) {
      heights.emplace_back();
      for (std::size_t k = 0; k < sup.size(); ++k) heights.back().push_back(dist(rng));
    }
    try {
      MixedVolumeResult r = detail::CellEnumerator(s, std::move(heights)).run();
      r.seed = seed;
      r.redraws = attempt;
      return r;
    } catch (const detail::DegenerateLifting&) {
    }
  }
  throw Error(ErrorCode::DegenerateLiftingRetriesExhausted,
              "no generic lifting after " + std::to_string(opts.max_redraws + 1) + " draws");
}

/// Inclusion-exclusion over Minkowski sums, for cross-checking on at most 5 variables.
inline std::uint64_t mixed_volume_oracle(const SupportSystem& input) {
  detail::check_square(input);
  const int n = input.num_vars;
  if (n > 5) throw Error(ErrorCode::TooLarge, "oracle supports at most 5 variables");
  if (n == 0) return 0;
  const SupportSystem s = detail::normalized(input);
  std::vector<std::vector<Point>> polys;
  for (const auto& sup : s.supports) {
    std::vector<Point> pts;
    for (const auto& e : sup) pts.emplace_back(e.begin(), e.end());
    polys.push_back(hull_volume(pts).vertices);
  }
  const std::uint32_t full = (1U << n) - 1U;
  // Vertex sets of partial sums, built from the subset without its top element.
  std::vector<std::vector<Point>> sums(full + 1U);
  BigInt total = 0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const int top = 31 - std::countl_zero(mask);
    const std::uint32_t rest = mask & ~(1U << top);
    std::vector<Point> pts;
    if (rest == 0) {
      pts = polys[static_cast<std::size_t>(top)];
    } else {
      for (const auto& a : sums[rest]) {
        for (const auto& b : polys[static_cast<std::size_t>(top)]) {
          Point c(a);
          for (std::size_t k = 0; k < c.size(); ++k) c[k] += b[k];
          pts.push_back(std::move(c));
        }
      }
    }
    HullVolume h = hull_volume(pts);
    const int size = std::popcount(mask);
    if ((n - size) % 2 == 0) {
      total += h.volume;
    } else {
      total -= h.volume;
    }
    sums[mask] = std::move(h.vertices);
  }
  BigInt fact = 1;
  for (int k = 2; k <= n; ++k) fact *= k;
  if (total % fact != 0 || total < 0) throw Error(ErrorCode::NonInteger, "inclusion-exclusion gave a non-integral mixed volume");
  return (total / fact).convert_to<std::uint64_t>();
}

struct PinningVolume {
  Pinning pinning;
  std::uint64_t mv = 0;
};

struct MinMixedVolume {
  std::uint64_t value = 0;
  std::size_t best_index = 0;
  Pinning best_pinning;
  std::vector<PinningVolume> per_pinning;
};

/// Minimum over all pinnings; the first candidate wins ties.
inline MinMixedVolume min_mixed_volume(const RigidGraph& g, Formulation f, const MixedVolumeOptions& opts = {}) {
  const auto candidates = pinning_candidates(g);
  if (candidates.empty()) throw Error(ErrorCode::IncompatiblePinning, "graph has no edge or triangle to pin");
  MinMixedVolume out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const std::uint64_t mv = mixed_volume(build_system(g, candidates[i], f), opts).mv;
    out.per_pinning.push_back({candidates[i], mv});
    if (i == 0 || mv < out.value) {
      out.value = mv;
      out.best_index = i;
      out.best_pinning = candidates[i];
    }
  }
  return out;
}

}  // namespace rigidbound
