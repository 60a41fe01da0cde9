#pragma once

// Per-n summary rows over a generated catalog: the largest minimum mixed
// volume (upper), the published lower bound, and the best graph per class.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "rigidbound/bounds.hpp"
#include "rigidbound/cache.hpp"
#include "rigidbound/enumerate.hpp"
#include "rigidbound/mixedvol.hpp"

namespace rigidbound {

/// out[i] = f(i) for i < count on up to `jobs` threads; the first exception is rethrown.
template <class T>
std::vector<T> parallel_map(std::size_t count, int jobs, const std::function<T(std::size_t)>& f) {
  std::vector<T> out(count);
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < std::min(workers, count); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          out[i] = f(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  }
  pool.clear();
  if (error) std::rethrow_exception(error);
  return out;
}

struct TableRow {
  int n = 0;
  std::size_t graphs = 0;
  std::uint64_t upper = 0;
  std::string upper_sequence;
  HennebergClass upper_class = HennebergClass::H1;
  BigInt lower;
  std::optional<std::uint64_t> best_h1;
  std::string best_h1_sequence;
  std::optional<std::uint64_t> best_h2;
  std::string best_h2_sequence;
  BigInt bezout;
  BigInt binomial_upper;
};

struct TableOptions {
  Formulation formulation = Formulation::Augmented;
  MixedVolumeOptions mv;
  int jobs = 1;
  ReportCache* cache = nullptr;
};

/// Minimum mixed volume of every entry, in catalog order, through the cache when given.
inline std::vector<std::uint64_t> catalog_min_volumes(const std::vector<CatalogEntry>& level, const TableOptions& opts) {
  const std::string variant = cache_variant(opts.formulation, "all");
  std::vector<std::optional<std::uint64_t>> known(level.size());
  if (opts.cache != nullptr) {
    for (std::size_t i = 0; i < level.size(); ++i) {
      if (auto r = opts.cache->get(level[i].key, variant)) {
        known[i] = opts.formulation == Formulation::Augmented ? r->mv_augmented : r->mv_naive;
      }
    }
  }
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < level.size(); ++i) {
    if (!known[i]) todo.push_back(i);
  }
  const auto fresh = parallel_map<MinMixedVolume>(todo.size(), opts.jobs, [&](std::size_t k) {
    return min_mixed_volume(level[todo[k]].graph, opts.formulation, opts.mv);
  });
  for (std::size_t k = 0; k < todo.size(); ++k) {
    const std::size_t i = todo[k];
    known[i] = fresh[k].value;
    if (opts.cache != nullptr) {
      BoundsReport r;
      r.n = level[i].graph.n();
      r.dim = level[i].graph.dim();
      r.bezout = bezout(r.n, r.dim);
      r.binomial_upper = binomial_upper(r.n, r.dim);
      (opts.formulation == Formulation::Augmented ? r.mv_augmented : r.mv_naive) = fresh[k].value;
      r.best_pinning = fresh[k].best_pinning;
      r.cls = level[i].cls;
      opts.cache->put(level[i].graph, variant, r);
    }
  }
  if (opts.cache != nullptr) opts.cache->flush();
  std::vector<std::uint64_t> out;
  out.reserve(level.size());
  for (const auto& v : known) out.push_back(*v);
  return out;
}

inline TableRow table_row(const std::vector<CatalogEntry>& level, const TableOptions& opts) {
  TableRow row;
  if (level.empty()) return row;
  const RigidGraph& first = level.front().graph;
  row.n = first.n();
  row.graphs = level.size();
  row.lower = table_lower(row.n, first.dim());
  row.bezout = bezout(row.n, first.dim());
  row.binomial_upper = binomial_upper(row.n, first.dim());
  const auto volumes = catalog_min_volumes(level, opts);
  for (std::size_t i = 0; i < level.size(); ++i) {
    const std::uint64_t v = volumes[i];
    const std::string word = sequence_word(level[i].best_sequence);
    if (i == 0 || v > row.upper) {
      row.upper = v;
      row.upper_sequence = word;
      row.upper_class = level[i].cls;
    }
    auto& best = level[i].cls == HennebergClass::H1 ? row.best_h1 : row.best_h2;
    auto& best_word = level[i].cls == HennebergClass::H1 ? row.best_h1_sequence : row.best_h2_sequence;
    if (!best || v > *best) {
      best = v;
      best_word = word;
    }
  }
  return row;
}

inline std::vector<TableRow> build_table(Dim dim, int n_max, const TableOptions& opts = {}) {
  std::vector<TableRow> rows;
  for (const auto& level : generate_levels(dim, n_max)) rows.push_back(table_row(level, opts));
  return rows;
}

inline std::string table_csv_header() {
  return "n,graphs,upper,upper_sequence,upper_class,lower,best_h1,best_h1_sequence,best_h2,best_h2_sequence,bezout,binomial_upper";
}

inline std::string table_csv_line(const TableRow& r) {
  auto opt = [](const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : std::string(); };
  return std::to_string(r.n) + "," + std::to_string(r.graphs) + "," + std::to_string(r.upper) + "," + r.upper_sequence + "," +
         std::string(to_string(r.upper_class)) + "," + r.lower.str() + "," + opt(r.best_h1) + "," + r.best_h1_sequence + "," +
         opt(r.best_h2) + "," + r.best_h2_sequence + "," + r.bezout.str() + "," + r.binomial_upper.str();
}

}  // namespace rigidbound
