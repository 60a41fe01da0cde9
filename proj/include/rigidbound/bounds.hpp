#pragma once

// Closed-form bound calculators, the per-graph bounds report and the scan
// of mixed-volume growth along Henneberg sequences.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rigidbound/canonical.hpp"
#include "rigidbound/enumerate.hpp"
#include "rigidbound/error.hpp"
#include "rigidbound/graph.hpp"
#include "rigidbound/mixedvol.hpp"
#include "rigidbound/numeric.hpp"

namespace rigidbound {

namespace detail {

inline void check_size(int n, Dim dim) {
  if (n < base_size(dim)) {
    throw Error(ErrorCode::OutOfRange, "n must be at least " + std::to_string(base_size(dim)) + " in dimension " +
                                           std::to_string(static_cast<int>(dim)));
  }
}

inline BigInt power(std::int64_t base, int exp) {
  BigInt r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace detail

inline BigInt bezout(int n, Dim dim) {
  detail::check_size(n, dim);
  return dim == Dim::Planar ? detail::power(4, n - 2) : detail::power(8, n - 3);
}

inline BigInt binomial_upper(int n, Dim dim) {
  detail::check_size(n, dim);
  if (dim == Dim::Planar) return detail::binomial(2 * n - 4, n - 2);
  const BigInt num = detail::power(2, n - 3) * detail::binomial(2 * n - 6, n - 3);
  if (num % (n - 2) != 0) throw Error(ErrorCode::NonInteger, "spatial binomial bound is not an integer");
  return num / (n - 2);
}

enum class LowerBound { Caterpillar2d, Fan2d, Cyclo3d, H1Chain };

inline std::string_view to_string(LowerBound b) {
  switch (b) {
    case LowerBound::Caterpillar2d: return "caterpillar2d";
    case LowerBound::Fan2d: return "fan2d";
    case LowerBound::Cyclo3d: return "cyclo3d";
    case LowerBound::H1Chain: return "h1chain";
  }
  return "";
}

inline LowerBound lower_bound_from_string(std::string_view s) {
  for (auto b : {LowerBound::Caterpillar2d, LowerBound::Fan2d, LowerBound::Cyclo3d, LowerBound::H1Chain}) {
    if (to_string(b) == s) return b;
  }
  throw Error(ErrorCode::UnknownName, "no lower bound named '" + std::string(s) + "'");
}

inline Dim natural_dim(LowerBound b, Dim h1chain_dim) {
  switch (b) {
    case LowerBound::Caterpillar2d:
    case LowerBound::Fan2d: return Dim::Planar;
    case LowerBound::Cyclo3d: return Dim::Spatial;
    case LowerBound::H1Chain: return h1chain_dim;
  }
  return Dim::Planar;
}

/// `dim` only matters for h1chain.
inline BigInt lower_bound(LowerBound b, int n, Dim dim = Dim::Planar) {
  const Dim d = natural_dim(b, dim);
  if (n < base_size(d) || (b == LowerBound::Cyclo3d && n < 9)) {
    throw Error(ErrorCode::OutOfRange, std::string(to_string(b)) + " is not defined for n = " + std::to_string(n));
  }
  switch (b) {
    case LowerBound::Caterpillar2d: return detail::power(24, (n - 2) / 4);
    case LowerBound::Fan2d: return 2 * detail::power(12, (n - 3) / 3);
    case LowerBound::Cyclo3d: return detail::power(16, (n - 3) / 3);
    case LowerBound::H1Chain: return d == Dim::Planar ? detail::power(2, n - 2) : detail::power(2, n - 3);
  }
  return 0;
}

/// Best published lower bound per n: one H1 step doubles, and the
/// constructions (caterpillar and fan in the plane, octahedra in space)
/// take over where they are larger.
inline BigInt table_lower(int n, Dim dim) {
  detail::check_size(n, dim);
  BigInt best = 2;
  for (int m = base_size(dim) + 1; m <= n; ++m) {
    best *= 2;
    if (dim == Dim::Planar) {
      best = std::max({best, lower_bound(LowerBound::Caterpillar2d, m), lower_bound(LowerBound::Fan2d, m)});
    } else if (m >= 6) {
      // One octahedron already has 16 embeddings; the caterpillar formula extends it.
      best = std::max(best, detail::power(16, (m - 3) / 3));
    }
  }
  return best;
}

inline BigInt sparse_lemma(int n, int k, Dim dim) {
  const int threshold = dim == Dim::Planar ? 4 : 9;
  if (k < threshold || k > n) {
    throw Error(ErrorCode::OutOfRange, "k must lie in [" + std::to_string(threshold) + ", n]");
  }
  return dim == Dim::Planar ? detail::power(2, k - 4) * detail::power(4, n - k)
                            : detail::power(2, k - 9) * detail::power(8, n - k);
}

/// Vertices of degree 2 (plane) or 3 (space), the k of the sparse lemmas.
inline int low_degree_count(const RigidGraph& g) {
  const int want = g.dim() == Dim::Planar ? 2 : 3;
  int k = 0;
  for (int v = 0; v < g.n(); ++v) k += g.degree(v) == want ? 1 : 0;
  return k;
}

struct BoundsReport {
  int n = 0;
  Dim dim = Dim::Planar;
  BigInt bezout;
  BigInt binomial_upper;
  std::optional<std::uint64_t> mv_naive;
  std::optional<std::uint64_t> mv_augmented;
  std::optional<Pinning> best_pinning;  // for mv_augmented
  std::map<std::string, BigInt> lower_formulas;
  std::optional<BigInt> sparse_lemma;
  HennebergClass cls = HennebergClass::H1;

  friend bool operator==(const BoundsReport&, const BoundsReport&) = default;
};

struct ReportOptions {
  bool naive = false;
  bool augmented = true;
  MixedVolumeOptions mv;
};

inline BoundsReport bounds_report(const RigidGraph& g, const ReportOptions& opts = {}) {
  BoundsReport r;
  r.n = g.n();
  r.dim = g.dim();
  r.bezout = bezout(g.n(), g.dim());
  r.binomial_upper = binomial_upper(g.n(), g.dim());
  if (opts.naive) r.mv_naive = min_mixed_volume(g, Formulation::Naive, opts.mv).value;
  if (opts.augmented) {
    const MinMixedVolume m = min_mixed_volume(g, Formulation::Augmented, opts.mv);
    r.mv_augmented = m.value;
    r.best_pinning = m.best_pinning;
  }
  for (auto b : {LowerBound::Caterpillar2d, LowerBound::Fan2d, LowerBound::Cyclo3d, LowerBound::H1Chain}) {
    if (natural_dim(b, g.dim()) != g.dim()) continue;
    try {
      r.lower_formulas[std::string(to_string(b))] = lower_bound(b, g.n(), g.dim());
    } catch (const Error&) {
    }
  }
  const int k = low_degree_count(g);
  if (k >= (g.dim() == Dim::Planar ? 4 : 9)) r.sparse_lemma = sparse_lemma(g.n(), k, g.dim());
  r.cls = classify_henneberg(g).cls;
  return r;
}

struct ScanRecord {
  CanonicalKey key;               // catalog entry the sequence belongs to
  HennebergSequence sequence;
  std::size_t step = 0;           // index into sequence.steps
  StepKind kind = StepKind::H1;
  std::uint64_t before = 0;
  std::uint64_t after = 0;
  bool violation = false;

  double ratio() const { return before == 0 ? 0.0 : static_cast<double>(after) / static_cast<double>(before); }
};

inline std::uint64_t ratio_cap(StepKind k) {
  switch (k) {
    case StepKind::H1: return 2;
    case StepKind::H2: return 4;
    case StepKind::H3: return 8;
  }
  return 0;
}

/// Minimum mixed volumes memoized by isomorphism class.
class MinVolumeMemo {
 public:
  explicit MinVolumeMemo(Formulation f = Formulation::Augmented, MixedVolumeOptions opts = {}) : f_(f), opts_(opts) {}

  std::uint64_t operator()(const RigidGraph& g) {
    const CanonicalKey key = canonical_key(g);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const std::uint64_t v = min_mixed_volume(g, f_, opts_).value;
    memo_.emplace(key, v);
    return v;
  }

 private:
  Formulation f_;
  MixedVolumeOptions opts_;
  std::unordered_map<CanonicalKey, std::uint64_t, CanonicalKeyHash> memo_;
};

/// One record per step of every best sequence: min MV before and after the step.
inline std::vector<ScanRecord> conjecture_scan(const std::vector<CatalogEntry>& catalog, MinVolumeMemo& memo) {
  std::vector<ScanRecord> out;
  for (const auto& entry : catalog) {
    RigidGraph g = base_graph(entry.best_sequence.dim);
    std::uint64_t before = memo(g);
    for (std::size_t i = 0; i < entry.best_sequence.steps.size(); ++i) {
      const HennebergStep& step = entry.best_sequence.steps[i];
      g = apply_step(g, step);
      const std::uint64_t after = memo(g);
      out.push_back({entry.key, entry.best_sequence, i, step.kind, before, after, after > ratio_cap(step.kind) * before});
      before = after;
    }
  }
  return out;
}

inline std::vector<ScanRecord> conjecture_scan(const std::vector<CatalogEntry>& catalog,
                                               Formulation f = Formulation::Augmented, const MixedVolumeOptions& opts = {}) {
  MinVolumeMemo memo(f, opts);
  return conjecture_scan(catalog, memo);
}

}  // namespace rigidbound
