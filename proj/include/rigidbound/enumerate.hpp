#pragma once

// Breadth-first closure of the Henneberg steps from the base graph, with
// isomorphism classes deduplicated at every level.

#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "rigidbound/canonical.hpp"
#include "rigidbound/error.hpp"
#include "rigidbound/graph.hpp"

namespace rigidbound {

struct CatalogEntry {
  CanonicalKey key;
  RigidGraph graph;  // best_sequence replayed, vertex for vertex
  HennebergSequence best_sequence;
  HennebergClass cls = HennebergClass::H1;
};

struct GenerateOptions {
  std::size_t max_graphs_per_level = 1'000'000;
  std::optional<std::chrono::milliseconds> time_budget;
  bool allow_h3 = true;
};

inline HennebergClass class_of(const HennebergSequence& seq) {
  return seq.h1_count() == static_cast<int>(seq.steps.size()) ? HennebergClass::H1 : HennebergClass::H2;
}

/// All levels from the base size up to n; element i holds vertex count base+i.
/// Entries within a level are sorted by key.
inline std::vector<std::vector<CatalogEntry>> generate_levels(Dim dim, int n, const GenerateOptions& opts = {}) {
  const int base = base_size(dim);
  if (n < base || n > kMaxVertices) {
    throw Error(ErrorCode::BadParams, "vertex count " + std::to_string(n) + " outside [" + std::to_string(base) + ", 16]");
  }
  const auto start = std::chrono::steady_clock::now();
  auto check_budget = [&](std::size_t count) {
    if (count > opts.max_graphs_per_level) {
      throw Error(ErrorCode::ResourceLimit, "level exceeds " + std::to_string(opts.max_graphs_per_level) + " graphs");
    }
    if (opts.time_budget && std::chrono::steady_clock::now() - start > *opts.time_budget) {
      throw Error(ErrorCode::ResourceLimit, "enumeration time budget exceeded");
    }
  };

  std::vector<std::vector<CatalogEntry>> levels;
  RigidGraph seed = base_graph(dim);
  levels.push_back({CatalogEntry{canonical_key(seed), seed, *seed.provenance(), HennebergClass::H1}});

  for (int size = base + 1; size <= n; ++size) {
    std::map<CanonicalKey, CatalogEntry> found;
    for (const auto& parent : levels.back()) {
      for (const auto& step : enumerate_steps(parent.graph)) {
        if (step.kind == StepKind::H3 && !opts.allow_h3) continue;
        RigidGraph child = apply_step(parent.graph, step);
        const CanonicalKey key = canonical_key(child);
        HennebergSequence seq = *child.provenance();
        auto it = found.find(key);
        if (it == found.end()) {
          const HennebergClass cls = class_of(seq);
          found.emplace(key, CatalogEntry{key, std::move(child), std::move(seq), cls});
          check_budget(found.size());
        } else if (seq.h1_count() > it->second.best_sequence.h1_count()) {
          it->second.cls = class_of(seq);
          it->second.graph = std::move(child);
          it->second.best_sequence = std::move(seq);
        }
      }
    }
    std::vector<CatalogEntry> level;
    level.reserve(found.size());
    for (auto& [key, entry] : found) level.push_back(std::move(entry));
    levels.push_back(std::move(level));
  }
  return levels;
}

/// All isomorphism classes on n vertices. Each entry keeps the Henneberg
/// sequence with the most H1 steps.
inline std::vector<CatalogEntry> generate_all(Dim dim, int n, const GenerateOptions& opts = {}) {
  auto levels = generate_levels(dim, n, opts);
  return std::move(levels.back());
}

}  // namespace rigidbound
