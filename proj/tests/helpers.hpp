#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "rigidbound/graph.hpp"
#include "rigidbound/polysys.hpp"

namespace testing {

using rigidbound::Dim;
using rigidbound::Edge;
using rigidbound::RigidGraph;

// Every graph on n vertices with m edges, as edge subsets of K_n.
template <class Fn>
void for_each_graph(Dim dim, int n, int m, Fn&& fn) {
  std::vector<Edge> all;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) all.push_back({u, v});
  }
  if (m > static_cast<int>(all.size())) return;
  std::vector<bool> pick(all.size(), false);
  std::fill(pick.begin(), pick.begin() + m, true);
  do {
    RigidGraph g(dim, n);
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (pick[i]) g.add_edge(all[i].u, all[i].v);
    }
    fn(g);
  } while (std::prev_permutation(pick.begin(), pick.end()));
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Lexicographically smallest sorted edge list over all n! relabelings.
inline std::vector<Edge> brute_force_form(const RigidGraph& g) {
  std::vector<int> p(static_cast<std::size_t>(g.n()));
  std::iota(p.begin(), p.end(), 0);
  std::vector<Edge> best;
  bool first = true;
  do {
    auto e = g.permuted(p).edges();
    if (first || e < best) best = std::move(e);
    first = false;
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

inline rigidbound::SupportSystem random_system(std::mt19937_64& rng, int max_vars, int max_points, int max_exp) {
  rigidbound::SupportSystem s;
  s.num_vars = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_vars));
  for (int i = 0; i < s.num_vars; ++i) s.var_names.push_back("v" + std::to_string(i));
  for (int i = 0; i < s.num_vars; ++i) {
    std::set<rigidbound::Exponent> pts;
    int box = 1;
    for (int k = 0; k < s.num_vars && box < max_points; ++k) box *= max_exp + 1;
    const int m = std::min(box, 1 + static_cast<int>(rng() % static_cast<unsigned>(max_points)));
    while (static_cast<int>(pts.size()) < m) {
      rigidbound::Exponent e(static_cast<std::size_t>(s.num_vars));
      for (auto& x : e) x = static_cast<int>(rng() % static_cast<unsigned>(max_exp + 1));
      pts.insert(e);
    }
    s.supports.emplace_back(pts.begin(), pts.end());
  }
  return s;
}

}  // namespace testing
