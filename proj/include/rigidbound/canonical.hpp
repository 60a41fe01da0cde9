#pragma once

// Canonical labeling by colour refinement plus exhaustive branching on the
// first non-singleton cell. The key is the lexicographically smallest
// upper-triangle adjacency encoding over all leaves of the search tree.

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "rigidbound/error.hpp"
#include "rigidbound/graph.hpp"

namespace rigidbound {

struct CanonicalKey {
  Dim dim = Dim::Planar;
  int n = 0;
  std::array<std::uint8_t, 15> bits{};  // pairs (i<j) in row-major order, MSB first

  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;

  /// "d<dim>n<nn>-<30 hex digits>"
  std::string hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out = "d" + std::to_string(static_cast<int>(dim)) + "n" + (n < 10 ? "0" : "") + std::to_string(n) + "-";
    for (auto b : bits) {
      out += digits[b >> 4];
      out += digits[b & 15];
    }
    return out;
  }

  static CanonicalKey from_hex(const std::string& text) {
    CanonicalKey key;
    if (text.size() != 36 || text[0] != 'd' || text[2] != 'n' || text[5] != '-') {
      throw Error(ErrorCode::InvalidInput, "malformed canonical key '" + text + "'");
    }
    key.dim = dim_from_int(text[1] - '0');
    key.n = std::stoi(text.substr(3, 2));
    auto nibble = [&](char c) -> int {
      if (c >= '0' && c <= '9') return c - '0';
      if (c >= 'a' && c <= 'f') return c - 'a' + 10;
      throw Error(ErrorCode::InvalidInput, "malformed canonical key '" + text + "'");
    };
    for (std::size_t i = 0; i < key.bits.size(); ++i) {
      key.bits[i] = static_cast<std::uint8_t>(nibble(text[6 + 2 * i]) * 16 + nibble(text[7 + 2 * i]));
    }
    return key;
  }
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& k) const {
    std::size_t h = 1469598103934665603ULL ^ static_cast<std::size_t>(k.n * 4 + static_cast<int>(k.dim));
    for (auto b : k.bits) h = (h ^ b) * 1099511628211ULL;
    return h;
  }
};

namespace detail {

using Cells = std::vector<std::uint32_t>;  // ordered partition, one vertex mask per cell

inline CanonicalKey encode(const RigidGraph& g, const std::array<int, kMaxVertices>& order) {
  CanonicalKey key;
  key.dim = g.dim();
  key.n = g.n();
  int pos = 0;
  for (int i = 0; i < g.n(); ++i) {
    for (int j = i + 1; j < g.n(); ++j, ++pos) {
      if (g.has_edge(order[i], order[j])) key.bits[pos / 8] |= static_cast<std::uint8_t>(0x80U >> (pos % 8));
    }
  }
  return key;
}

// Splits cells by neighbour counts into every cell until the partition is
// equitable. Sub-cells are ordered by their count vectors, so the result
// depends only on the graph and the incoming ordered partition.
inline void refine(const RigidGraph& g, Cells& cells) {
  bool changed = true;
  while (changed) {
    changed = false;
    Cells next;
    next.reserve(static_cast<std::size_t>(g.n()));
    for (std::uint32_t cell : cells) {
      if (std::popcount(cell) == 1) {
        next.push_back(cell);
        continue;
      }
      std::vector<std::pair<std::vector<int>, int>> sig;
      for (std::uint32_t rest = cell; rest != 0; rest &= rest - 1) {
        const int v = std::countr_zero(rest);
        std::vector<int> counts;
        counts.reserve(cells.size());
        for (std::uint32_t other : cells) counts.push_back(std::popcount(g.neighbors(v) & other));
        sig.emplace_back(std::move(counts), v);
      }
      std::sort(sig.begin(), sig.end());
      std::uint32_t current = 0;
      for (std::size_t i = 0; i < sig.size(); ++i) {
        if (i > 0 && sig[i].first != sig[i - 1].first) {
          next.push_back(current);
          current = 0;
          changed = true;
        }
        current |= 1U << sig[i].second;
      }
      next.push_back(current);
    }
    cells = std::move(next);
  }
}

inline void search(const RigidGraph& g, Cells cells, CanonicalKey& best, std::array<int, kMaxVertices>& best_order,
                   bool& have_best) {
  refine(g, cells);
  std::size_t target = cells.size();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (std::popcount(cells[i]) > 1) {
      target = i;
      break;
    }
  }
  if (target == cells.size()) {
    std::array<int, kMaxVertices> order{};
    for (std::size_t i = 0; i < cells.size(); ++i) order[i] = std::countr_zero(cells[i]);
    CanonicalKey key = encode(g, order);
    if (!have_best || key < best) {
      best = key;
      best_order = order;
      have_best = true;
    }
    return;
  }
  for (std::uint32_t rest = cells[target]; rest != 0; rest &= rest - 1) {
    const std::uint32_t single = rest & (~rest + 1);
    Cells child;
    child.reserve(cells.size() + 1);
    child.insert(child.end(), cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(target));
    child.push_back(single);
    child.push_back(cells[target] & ~single);
    child.insert(child.end(), cells.begin() + static_cast<std::ptrdiff_t>(target) + 1, cells.end());
    search(g, std::move(child), best, best_order, have_best);
  }
}

}  // namespace detail

struct CanonicalForm {
  CanonicalKey key;
  std::vector<int> perm;  // perm[v] = position of v; g.permuted(perm) == graph_from_key(key)
};

inline CanonicalForm canonical_form(const RigidGraph& g) {
  CanonicalForm out;
  out.key.dim = g.dim();
  out.key.n = g.n();
  if (g.n() == 0) return out;
  bool have_best = false;
  std::array<int, kMaxVertices> order{};
  detail::search(g, detail::Cells{(1U << g.n()) - 1U}, out.key, order, have_best);
  out.perm.assign(static_cast<std::size_t>(g.n()), 0);
  for (int i = 0; i < g.n(); ++i) out.perm[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
  return out;
}

inline CanonicalKey canonical_key(const RigidGraph& g) { return canonical_form(g).key; }

/// The graph whose vertex order realizes the key.
inline RigidGraph graph_from_key(const CanonicalKey& key) {
  RigidGraph g(key.dim, key.n);
  int pos = 0;
  for (int i = 0; i < key.n; ++i) {
    for (int j = i + 1; j < key.n; ++j, ++pos) {
      if (key.bits[pos / 8] & (0x80U >> (pos % 8))) g.add_edge(i, j);
    }
  }
  return g;
}

}  // namespace rigidbound
