#pragma once

// Minimally rigid graphs: the graph value type, Henneberg steps (planar and
// spatial), the Laman / simplicial-skeleton validity checks and the reverse
// search that classifies a graph as H1 or H2.

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "rigidbound/error.hpp"

namespace rigidbound {

inline constexpr int kMaxVertices = 16;

enum class Dim : int { Planar = 2, Spatial = 3 };

inline int base_size(Dim dim) { return dim == Dim::Planar ? 3 : 4; }

inline Dim dim_from_int(int d) {
  if (d == 2) return Dim::Planar;
  if (d == 3) return Dim::Spatial;
  throw Error(ErrorCode::BadParams, "dimension must be 2 or 3, got " + std::to_string(d));
}

struct Edge {
  int u = 0;
  int v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

enum class StepKind : int { H1 = 1, H2 = 2, H3 = 3 };

struct HennebergStep {
  StepKind kind = StepKind::H1;
  std::vector<int> attach;    // sorted ascending
  std::vector<Edge> removed;  // sorted ascending, normalized
  friend auto operator<=>(const HennebergStep&, const HennebergStep&) = default;
};

inline HennebergStep make_step(StepKind kind, std::vector<int> attach, std::vector<Edge> removed = {}) {
  std::sort(attach.begin(), attach.end());
  for (auto& e : removed) e = make_edge(e.u, e.v);
  std::sort(removed.begin(), removed.end());
  return HennebergStep{kind, std::move(attach), std::move(removed)};
}

/// Base graph (triangle in the plane, 3-simplex in space) followed by steps.
struct HennebergSequence {
  Dim dim = Dim::Planar;
  std::vector<HennebergStep> steps;

  int vertex_count() const { return base_size(dim) + static_cast<int>(steps.size()); }
  int h1_count() const {
    return static_cast<int>(std::count_if(steps.begin(), steps.end(),
                                          [](const HennebergStep& s) { return s.kind == StepKind::H1; }));
  }
  friend bool operator==(const HennebergSequence&, const HennebergSequence&) = default;
};

/// Simple undirected graph on at most 16 vertices, one adjacency word per vertex.
class RigidGraph {
 public:
  using Row = std::uint16_t;

  RigidGraph() = default;
  RigidGraph(Dim dim, int n) : dim_(dim), n_(n) {
    if (n < 0 || n > kMaxVertices) {
      throw Error(ErrorCode::BadParams, "vertex count must be in [0, 16], got " + std::to_string(n));
    }
  }

  static RigidGraph from_edges(Dim dim, int n, const std::vector<Edge>& edges) {
    RigidGraph g(dim, n);
    for (const auto& e : edges) g.add_edge(e.u, e.v);
    return g;
  }

  Dim dim() const { return dim_; }
  int n() const { return n_; }

  bool has_edge(int u, int v) const { return (adj_[u] >> v) & 1U; }
  Row neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return std::popcount(adj_[v]); }
  const std::array<Row, kMaxVertices>& rows() const { return adj_; }

  int edge_count() const {
    int total = 0;
    for (int v = 0; v < n_; ++v) total += std::popcount(adj_[v]);
    return total / 2;
  }

  /// Lexicographic order, smaller endpoint first.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (int u = 0; u < n_; ++u) {
      for (int v = u + 1; v < n_; ++v) {
        if (has_edge(u, v)) out.push_back({u, v});
      }
    }
    return out;
  }

  void add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw Error(ErrorCode::InvalidInput, "self-loop at vertex " + std::to_string(u));
    adj_[u] |= bit(v);
    adj_[v] |= bit(u);
  }

  void remove_edge(int u, int v) {
    adj_[u] &= static_cast<Row>(~bit(v));
    adj_[v] &= static_cast<Row>(~bit(u));
  }

  /// Appends an isolated vertex and returns its id.
  int add_vertex() {
    if (n_ >= kMaxVertices) throw Error(ErrorCode::ResourceLimit, "graph already has 16 vertices");
    return n_++;
  }

  /// Removes v; vertices above v shift down by one.
  RigidGraph without_vertex(int v) const {
    RigidGraph out(dim_, n_ - 1);
    for (int a = 0; a < n_; ++a) {
      if (a == v) continue;
      for (int b = a + 1; b < n_; ++b) {
        if (b != v && has_edge(a, b)) out.add_edge(compact(a, v), compact(b, v));
      }
    }
    return out;
  }

  /// Relabels vertex v as perm[v].
  RigidGraph permuted(const std::vector<int>& perm) const {
    RigidGraph out(dim_, n_);
    for (const auto& e : edges()) out.add_edge(perm[e.u], perm[e.v]);
    return out;
  }

  const std::optional<HennebergSequence>& provenance() const { return provenance_; }
  void set_provenance(std::optional<HennebergSequence> seq) { provenance_ = std::move(seq); }

  /// Structural equality; provenance is not compared.
  friend bool operator==(const RigidGraph& a, const RigidGraph& b) {
    return a.dim_ == b.dim_ && a.n_ == b.n_ && a.adj_ == b.adj_;
  }

  static Row bit(int v) { return static_cast<Row>(1U << v); }
  static int compact(int u, int removed) { return u > removed ? u - 1 : u; }

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= n_) {
      throw Error(ErrorCode::InvalidInput, "vertex " + std::to_string(v) + " out of range for n=" + std::to_string(n_));
    }
  }

  Dim dim_ = Dim::Planar;
  int n_ = 0;
  std::array<Row, kMaxVertices> adj_{};
  std::optional<HennebergSequence> provenance_;
};

struct RigidGraphHash {
  std::size_t operator()(const RigidGraph& g) const {
    std::size_t h = static_cast<std::size_t>(g.n()) * 0x9E3779B97F4A7C15ULL + static_cast<std::size_t>(g.dim());
    for (int v = 0; v < g.n(); ++v) h = (h ^ g.rows()[v]) * 0x100000001B3ULL;
    return h;
  }
};

inline RigidGraph triangle_graph() {
  auto g = RigidGraph::from_edges(Dim::Planar, 3, {{0, 1}, {0, 2}, {1, 2}});
  g.set_provenance(HennebergSequence{Dim::Planar, {}});
  return g;
}

inline RigidGraph simplex3_graph() {
  auto g = RigidGraph::from_edges(Dim::Spatial, 4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  g.set_provenance(HennebergSequence{Dim::Spatial, {}});
  return g;
}

inline RigidGraph base_graph(Dim dim) { return dim == Dim::Planar ? triangle_graph() : simplex3_graph(); }

// ---------------------------------------------------------------------------
// Validity checks

/// Hereditary count check over every vertex subset. Exponential; used as the
/// reference for the pebble game.
inline bool is_laman_by_subsets(const RigidGraph& g) {
  const int n = g.n();
  if (n < 2 || g.edge_count() != 2 * n - 3) return false;
  const std::uint32_t full = (1U << n) - 1;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    const int k = std::popcount(mask);
    if (k < 2) continue;
    int twice = 0;
    for (int v = 0; v < n; ++v) {
      if ((mask >> v) & 1U) twice += std::popcount(static_cast<std::uint32_t>(g.neighbors(v)) & mask);
    }
    if (twice / 2 > 2 * k - 3) return false;
  }
  return true;
}

namespace detail {

/// (2,3)-pebble game. Each vertex starts with two pebbles; an edge is accepted
/// once four pebbles can be gathered on its endpoints.
class PebbleGame {
 public:
  explicit PebbleGame(int n) : n_(n) { pebbles_.fill(2); }

  bool try_add(int u, int v) {
    while (pebbles_[u] < 2 && find_pebble(u, v)) {}
    while (pebbles_[v] < 2 && find_pebble(v, u)) {}
    if (pebbles_[u] + pebbles_[v] < 4) return false;
    --pebbles_[u];
    out_[u] |= RigidGraph::bit(v);
    return true;
  }

 private:
  // Moves a free pebble reachable from root (not taken from root or keep)
  // back to root by reversing the directed path.
  bool find_pebble(int root, int keep) {
    std::array<int, kMaxVertices> parent;
    parent.fill(-1);
    std::uint32_t seen = 1U << root;
    std::array<int, kMaxVertices> stack{};
    int top = 0;
    stack[top++] = root;
    while (top > 0) {
      const int x = stack[--top];
      for (std::uint32_t rest = out_[x]; rest != 0; rest &= rest - 1) {
        const int y = std::countr_zero(rest);
        if ((seen >> y) & 1U) continue;
        seen |= 1U << y;
        parent[y] = x;
        if (y != keep && pebbles_[y] > 0) {
          for (int cur = y; cur != root; cur = parent[cur]) {
            const int p = parent[cur];
            out_[p] &= static_cast<RigidGraph::Row>(~RigidGraph::bit(cur));
            out_[cur] |= RigidGraph::bit(p);
          }
          --pebbles_[y];
          ++pebbles_[root];
          return true;
        }
        stack[top++] = y;
      }
    }
    return false;
  }

  int n_;
  std::array<int, kMaxVertices> pebbles_{};
  std::array<RigidGraph::Row, kMaxVertices> out_{};
};

}  // namespace detail

inline bool is_laman(const RigidGraph& g) {
  const int n = g.n();
  if (n < 2 || g.edge_count() != 2 * n - 3) return false;
  detail::PebbleGame game(n);
  for (const auto& e : g.edges()) {
    if (!game.try_add(e.u, e.v)) return false;
  }
  return true;
}

inline bool is_planar(const RigidGraph& g) {
  using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  BoostGraph bg(static_cast<std::size_t>(g.n()));
  for (const auto& e : g.edges()) boost::add_edge(e.u, e.v, bg);
  return boost::boyer_myrvold_planarity_test(bg);
}

/// Maximal planar on n >= 4 vertices, i.e. the edge graph of a simplicial 3-polytope.
inline bool is_simplicial_skeleton(const RigidGraph& g) {
  const int n = g.n();
  if (n < 4 || g.edge_count() != 3 * n - 6) return false;
  return is_planar(g);
}

inline bool is_valid(const RigidGraph& g) {
  return g.dim() == Dim::Planar ? is_laman(g) : is_simplicial_skeleton(g);
}

// ---------------------------------------------------------------------------
// Henneberg steps

inline std::size_t attach_size(Dim dim, StepKind kind) {
  const int k = static_cast<int>(kind);
  if (dim == Dim::Planar) return static_cast<std::size_t>(k + 1);
  return static_cast<std::size_t>(k + 2);
}

inline std::size_t removed_size(StepKind kind) { return static_cast<std::size_t>(static_cast<int>(kind) - 1); }

namespace detail {

// True if the attach vertices carry a Hamiltonian cycle in g that avoids the
// given edges.
inline bool has_cycle_avoiding(const RigidGraph& g, std::vector<int> verts, const std::vector<Edge>& avoid) {
  auto usable = [&](int a, int b) {
    return g.has_edge(a, b) && std::find(avoid.begin(), avoid.end(), make_edge(a, b)) == avoid.end();
  };
  std::sort(verts.begin() + 1, verts.end());
  do {
    bool ok = true;
    for (std::size_t i = 0; i < verts.size() && ok; ++i) ok = usable(verts[i], verts[(i + 1) % verts.size()]);
    if (ok) return true;
  } while (std::next_permutation(verts.begin() + 1, verts.end()));
  return false;
}

}  // namespace detail

/// Throws MalformedStep unless s is applicable to g.
inline void check_step(const RigidGraph& g, const HennebergStep& s) {
  auto fail = [](const std::string& why) { throw Error(ErrorCode::MalformedStep, why); };
  const int k = static_cast<int>(s.kind);
  if (k < 1 || k > 3) fail("unknown step kind");
  if (g.dim() == Dim::Planar && s.kind == StepKind::H3) fail("H3 is a spatial step");
  if (s.attach.size() != attach_size(g.dim(), s.kind)) fail("wrong number of attach vertices");
  if (s.removed.size() != removed_size(s.kind)) fail("wrong number of removed edges");
  if (!std::is_sorted(s.attach.begin(), s.attach.end()) ||
      std::adjacent_find(s.attach.begin(), s.attach.end()) != s.attach.end()) {
    fail("attach vertices must be distinct and sorted");
  }
  for (int a : s.attach) {
    if (a < 0 || a >= g.n()) fail("attach vertex " + std::to_string(a) + " does not exist");
  }
  auto in_attach = [&](int x) { return std::binary_search(s.attach.begin(), s.attach.end(), x); };
  for (std::size_t i = 0; i < s.removed.size(); ++i) {
    const Edge& e = s.removed[i];
    if (!in_attach(e.u) || !in_attach(e.v)) fail("removed edge must join attach vertices");
    if (e.u >= e.v || !g.has_edge(e.u, e.v)) fail("removed edge is not present");
    if (i > 0 && !(s.removed[i - 1] < e)) fail("removed edges must be distinct and sorted");
  }
  if (g.dim() == Dim::Spatial && !detail::has_cycle_avoiding(g, s.attach, s.removed)) {
    fail("attach vertices do not form a cycle with the removed edges as diagonals");
  }
}

/// The new vertex is appended with id g.n().
inline RigidGraph apply_step(const RigidGraph& g, const HennebergStep& s) {
  check_step(g, s);
  RigidGraph out = g;
  const int v = out.add_vertex();
  for (int a : s.attach) out.add_edge(v, a);
  for (const auto& e : s.removed) out.remove_edge(e.u, e.v);
  if (!is_valid(out)) {
    throw Error(ErrorCode::ValidityViolation, "step result fails the rigidity-class check");
  }
  if (g.provenance()) {
    HennebergSequence seq = *g.provenance();
    seq.steps.push_back(s);
    out.set_provenance(std::move(seq));
  } else {
    out.set_provenance(std::nullopt);
  }
  return out;
}

inline RigidGraph replay(const HennebergSequence& seq) {
  RigidGraph g = base_graph(seq.dim);
  for (const auto& s : seq.steps) g = apply_step(g, s);
  return g;
}

namespace detail {

inline std::vector<int> mask_vertices(std::uint32_t mask) {
  std::vector<int> out;
  for (; mask != 0; mask &= mask - 1) out.push_back(std::countr_zero(mask));
  return out;
}

inline void for_each_subset(int n, int size, const std::function<void(std::uint32_t)>& fn) {
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    if (std::popcount(mask) == size) fn(mask);
  }
}

inline void planar_candidates(const RigidGraph& g, std::vector<HennebergStep>& out) {
  const int n = g.n();
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) out.push_back(make_step(StepKind::H1, {a, b}));
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        for (const Edge& e : {Edge{a, b}, Edge{a, c}, Edge{b, c}}) {
          if (g.has_edge(e.u, e.v)) out.push_back(make_step(StepKind::H2, {a, b, c}, {e}));
        }
      }
    }
  }
}

inline void spatial_candidates(const RigidGraph& g, std::vector<HennebergStep>& out) {
  std::set<HennebergStep> found;
  for (int k = 1; k <= 3; ++k) {
    for_each_subset(g.n(), k + 2, [&](std::uint32_t mask) {
      std::vector<int> verts = mask_vertices(mask);
      std::vector<int> cycle = verts;
      do {
        if (cycle[1] > cycle.back()) continue;  // each cycle once per direction
        bool closed = true;
        for (std::size_t i = 0; i < cycle.size() && closed; ++i) {
          closed = g.has_edge(cycle[i], cycle[(i + 1) % cycle.size()]);
        }
        if (!closed) continue;
        std::vector<Edge> chords;
        for (std::size_t i = 0; i < cycle.size(); ++i) {
          for (std::size_t j = i + 2; j < cycle.size(); ++j) {
            if (i == 0 && j + 1 == cycle.size()) continue;
            if (g.has_edge(cycle[i], cycle[j])) chords.push_back(make_edge(cycle[i], cycle[j]));
          }
        }
        const int want = k - 1;
        if (static_cast<int>(chords.size()) < want) continue;
        // (k-1)-subsets of the chords; k - 1 <= 2.
        if (want == 0) {
          found.insert(make_step(static_cast<StepKind>(k), verts));
        } else if (want == 1) {
          for (const auto& c : chords) found.insert(make_step(static_cast<StepKind>(k), verts, {c}));
        } else {
          for (std::size_t i = 0; i < chords.size(); ++i) {
            for (std::size_t j = i + 1; j < chords.size(); ++j) {
              found.insert(make_step(static_cast<StepKind>(k), verts, {chords[i], chords[j]}));
            }
          }
        }
      } while (std::next_permutation(cycle.begin() + 1, cycle.end()));
    });
  }
  out.assign(found.begin(), found.end());
}

inline bool step_result_valid(const RigidGraph& g, const HennebergStep& s) {
  RigidGraph out = g;
  const int v = out.add_vertex();
  for (int a : s.attach) out.add_edge(v, a);
  for (const auto& e : s.removed) out.remove_edge(e.u, e.v);
  return is_valid(out);
}

}  // namespace detail

/// Every step that can be applied to g and keeps it in its rigidity class,
/// sorted by (kind, attach, removed).
inline std::vector<HennebergStep> enumerate_steps(const RigidGraph& g) {
  std::vector<HennebergStep> candidates;
  if (g.n() >= kMaxVertices) return candidates;
  if (g.dim() == Dim::Planar) {
    detail::planar_candidates(g, candidates);
  } else {
    detail::spatial_candidates(g, candidates);
  }
  std::vector<HennebergStep> out;
  for (auto& s : candidates) {
    if (detail::step_result_valid(g, s)) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Text encoding: "kind:a,b,c/-u,v/-x,y"; bases "T" (triangle) and "S" (3-simplex).

inline std::string encode_step(const HennebergStep& s) {
  std::string out = std::to_string(static_cast<int>(s.kind)) + ":";
  for (std::size_t i = 0; i < s.attach.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(s.attach[i]);
  }
  for (const auto& e : s.removed) out += "/-" + std::to_string(e.u) + "," + std::to_string(e.v);
  return out;
}

namespace detail {

inline std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto token = text.substr(0, comma);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw Error(ErrorCode::InvalidInput, "bad integer '" + std::string(token) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace detail

inline HennebergStep decode_step(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0) {
    throw Error(ErrorCode::InvalidInput, "step '" + std::string(text) + "' lacks a kind prefix");
  }
  const auto kind = detail::parse_int_list(text.substr(0, colon));
  if (kind.size() != 1 || kind[0] < 1 || kind[0] > 3) {
    throw Error(ErrorCode::InvalidInput, "bad step kind in '" + std::string(text) + "'");
  }
  text.remove_prefix(colon + 1);
  const auto slash = text.find("/-");
  std::vector<int> attach = detail::parse_int_list(text.substr(0, slash));
  std::vector<Edge> removed;
  while (true) {
    const auto at = text.find("/-");
    if (at == std::string_view::npos) break;
    text.remove_prefix(at + 2);
    const auto next = text.find("/-");
    const auto pair = detail::parse_int_list(text.substr(0, next));
    if (pair.size() != 2) throw Error(ErrorCode::InvalidInput, "removed edge needs two endpoints");
    removed.push_back(make_edge(pair[0], pair[1]));
  }
  return make_step(static_cast<StepKind>(kind[0]), std::move(attach), std::move(removed));
}

inline std::vector<std::string> encode_sequence(const HennebergSequence& seq) {
  std::vector<std::string> out{seq.dim == Dim::Planar ? "T" : "S"};
  for (const auto& s : seq.steps) out.push_back(encode_step(s));
  return out;
}

inline HennebergSequence decode_sequence(const std::vector<std::string>& tokens) {
  if (tokens.empty() || (tokens[0] != "T" && tokens[0] != "S")) {
    throw Error(ErrorCode::InvalidInput, "sequence must start with base token T or S");
  }
  HennebergSequence seq{tokens[0] == "T" ? Dim::Planar : Dim::Spatial, {}};
  for (std::size_t i = 1; i < tokens.size(); ++i) seq.steps.push_back(decode_step(tokens[i]));
  return seq;
}

/// Compact word form used in tables: base symbol followed by step kinds,
/// e.g. "T112" or "S12".
inline std::string sequence_word(const HennebergSequence& seq) {
  std::string out = seq.dim == Dim::Planar ? "T" : "S";
  for (const auto& s : seq.steps) out += static_cast<char>('0' + static_cast<int>(s.kind));
  return out;
}

// ---------------------------------------------------------------------------
// Classification by reverse search

enum class HennebergClass { H1, H2 };

inline std::string_view to_string(HennebergClass c) { return c == HennebergClass::H1 ? "H1" : "H2"; }

struct HennebergClassification {
  HennebergClass cls = HennebergClass::H1;
  HennebergSequence witness;  // maximizes the number of H1 steps
  RigidGraph replayed;        // witness replayed; isomorphic to the input
};

namespace detail {

struct ReverseMove {
  int vertex = 0;
  StepKind kind = StepKind::H1;
  std::vector<Edge> restored;  // edges the forward step removed, in g's labels
};

inline std::vector<ReverseMove> reverse_moves(const RigidGraph& g) {
  std::vector<ReverseMove> moves;
  for (int v = 0; v < g.n(); ++v) {
    const int d = g.degree(v);
    const int k = g.dim() == Dim::Planar ? d - 1 : d - 2;
    const int k_max = g.dim() == Dim::Planar ? 2 : 3;
    if (k < 1 || k > k_max) continue;
    const auto nbrs = mask_vertices(g.neighbors(v));
    std::vector<Edge> missing;
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        if (!g.has_edge(nbrs[i], nbrs[j])) missing.push_back(make_edge(nbrs[i], nbrs[j]));
      }
    }
    const auto kind = static_cast<StepKind>(k);
    if (k == 1) {
      moves.push_back({v, kind, {}});
    } else if (k == 2) {
      for (const auto& e : missing) moves.push_back({v, kind, {e}});
    } else {
      for (std::size_t i = 0; i < missing.size(); ++i) {
        for (std::size_t j = i + 1; j < missing.size(); ++j) moves.push_back({v, kind, {missing[i], missing[j]}});
      }
    }
  }
  // Prefer H1 reversals so the first complete chain found is usually optimal.
  std::stable_sort(moves.begin(), moves.end(),
                   [](const ReverseMove& a, const ReverseMove& b) { return a.kind < b.kind; });
  return moves;
}

// Parent graph and the forward step (in parent labels) that rebuilds g.
inline std::optional<std::pair<RigidGraph, HennebergStep>> undo(const RigidGraph& g, const ReverseMove& m) {
  RigidGraph parent = g.without_vertex(m.vertex);
  std::vector<int> attach;
  for (int x : mask_vertices(g.neighbors(m.vertex))) attach.push_back(RigidGraph::compact(x, m.vertex));
  std::vector<Edge> removed;
  for (const auto& e : m.restored) {
    const int a = RigidGraph::compact(e.u, m.vertex);
    const int b = RigidGraph::compact(e.v, m.vertex);
    parent.add_edge(a, b);
    removed.push_back(make_edge(a, b));
  }
  if (!is_valid(parent)) return std::nullopt;
  HennebergStep step = make_step(m.kind, std::move(attach), std::move(removed));
  try {
    check_step(parent, step);
  } catch (const Error&) {
    return std::nullopt;
  }
  return std::make_pair(std::move(parent), std::move(step));
}

class ReverseSearch {
 public:
  struct Node {
    int best = -1;  // max H1 steps to reach the base, -1 if unreachable
    std::optional<ReverseMove> move;
  };

  int solve(const RigidGraph& g) {
    if (auto it = memo_.find(g); it != memo_.end()) return it->second.best;
    Node node;
    const int steps_left = g.n() - base_size(g.dim());
    if (steps_left == 0) {
      node.best = g == base_graph(g.dim()) ? 0 : -1;
    } else {
      for (const auto& m : reverse_moves(g)) {
        const auto parent = undo(g, m);
        if (!parent) continue;
        const int sub = solve(parent->first);
        if (sub < 0) continue;
        const int total = sub + (m.kind == StepKind::H1 ? 1 : 0);
        if (total > node.best) {
          node.best = total;
          node.move = m;
        }
        if (node.best == steps_left) break;
      }
    }
    memo_.emplace(g, node);
    return node.best;
  }

  const Node& node(const RigidGraph& g) const { return memo_.at(g); }

 private:
  std::unordered_map<RigidGraph, Node, RigidGraphHash> memo_;
};

}  // namespace detail

/// Full backtracking over removal orders; the witness has the largest number
/// of H1 steps among all Henneberg sequences of g.
inline HennebergClassification classify_henneberg(const RigidGraph& g) {
  detail::ReverseSearch search;
  RigidGraph stripped = g;
  stripped.set_provenance(std::nullopt);
  const int best = search.solve(stripped);
  if (best < 0) throw Error(ErrorCode::NoSequenceFound, "graph has no Henneberg sequence");

  // Walk the chain down to the base, then rebuild the steps in replay labels.
  std::vector<RigidGraph> chain{stripped};
  std::vector<detail::ReverseMove> moves;
  while (chain.back().n() > base_size(g.dim())) {
    const auto& m = *search.node(chain.back()).move;
    moves.push_back(m);
    chain.push_back(detail::undo(chain.back(), m)->first);
  }

  std::vector<int> label(static_cast<std::size_t>(base_size(g.dim())));
  std::iota(label.begin(), label.end(), 0);
  HennebergSequence seq{g.dim(), {}};
  for (std::size_t i = moves.size(); i-- > 0;) {
    const auto& m = moves[i];
    const RigidGraph& child = chain[i];
    std::vector<int> attach;
    for (int x : detail::mask_vertices(child.neighbors(m.vertex))) {
      attach.push_back(label[RigidGraph::compact(x, m.vertex)]);
    }
    std::vector<Edge> removed;
    for (const auto& e : m.restored) {
      removed.push_back(make_edge(label[RigidGraph::compact(e.u, m.vertex)], label[RigidGraph::compact(e.v, m.vertex)]));
    }
    seq.steps.push_back(make_step(m.kind, std::move(attach), std::move(removed)));
    std::vector<int> next(static_cast<std::size_t>(child.n()));
    for (int x = 0; x < child.n(); ++x) {
      next[x] = x == m.vertex ? child.n() - 1 : label[RigidGraph::compact(x, m.vertex)];
    }
    label = std::move(next);
  }

  HennebergClassification out;
  out.cls = best == g.n() - base_size(g.dim()) ? HennebergClass::H1 : HennebergClass::H2;
  out.replayed = replay(seq);
  out.witness = std::move(seq);
  return out;
}

}  // namespace rigidbound
