#pragma once

// JSON forms of graphs, catalog entries, support dumps, pinnings and bounds
// reports. Integers that may outgrow 64 bits are written as numbers when
// they fit and as decimal strings otherwise; readers accept both.

#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "rigidbound/bounds.hpp"
#include "rigidbound/canonical.hpp"
#include "rigidbound/enumerate.hpp"
#include "rigidbound/error.hpp"
#include "rigidbound/graph.hpp"
#include "rigidbound/polysys.hpp"
#include "rigidbound/witness.hpp"

namespace rigidbound::io {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

namespace detail {

template <class T>
T get(const json& j, const char* field) {
  if (!j.is_object() || !j.contains(field)) throw Error(ErrorCode::InvalidInput, std::string("missing field '") + field + "'");
  try {
    return j.at(field).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("bad field '") + field + "': " + e.what());
  }
}

}  // namespace detail

inline json big_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return v.convert_to<std::int64_t>();
  }
  return v.str();
}

inline BigInt big_from_json(const json& j) {
  try {
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
    if (j.is_string()) return BigInt(j.get<std::string>());
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::InvalidInput, "expected an integer");
}

inline json graph_to_json(const RigidGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
  json j{{"dim", static_cast<int>(g.dim())}, {"n", g.n()}, {"edges", edges}};
  j["sequence"] = g.provenance() ? json(encode_sequence(*g.provenance())) : json(nullptr);
  return j;
}

/// A present sequence must replay to exactly the listed edges.
inline RigidGraph graph_from_json(const json& j) {
  const Dim dim = dim_from_int(detail::get<int>(j, "dim"));
  const int n = detail::get<int>(j, "n");
  if (n < 1 || n > kMaxVertices) throw Error(ErrorCode::InvalidInput, "vertex count out of range");
  std::vector<Edge> edges;
  for (const auto& e : detail::get<std::vector<std::vector<int>>>(j, "edges")) {
    if (e.size() != 2 || e[0] < 0 || e[1] < 0 || e[0] >= n || e[1] >= n || e[0] == e[1]) {
      throw Error(ErrorCode::InvalidInput, "bad edge");
    }
    edges.push_back(make_edge(e[0], e[1]));
  }
  RigidGraph g = RigidGraph::from_edges(dim, n, edges);
  if (j.contains("sequence") && !j.at("sequence").is_null()) {
    const HennebergSequence seq = decode_sequence(detail::get<std::vector<std::string>>(j, "sequence"));
    if (seq.dim != dim || !(replay(seq) == g)) throw Error(ErrorCode::InvalidInput, "sequence does not replay to the edges");
    g.set_provenance(seq);
  }
  return g;
}

inline json catalog_entry_to_json(const CatalogEntry& e) {
  return json{{"key", e.key.hex()},
              {"graph", graph_to_json(e.graph)},
              {"sequence", encode_sequence(e.best_sequence)},
              {"class", std::string(to_string(e.cls))}};
}

inline CatalogEntry catalog_entry_from_json(const json& j) {
  CatalogEntry e;
  e.key = CanonicalKey::from_hex(detail::get<std::string>(j, "key"));
  e.graph = graph_from_json(detail::get<json>(j, "graph"));
  e.best_sequence = decode_sequence(detail::get<std::vector<std::string>>(j, "sequence"));
  const auto cls = detail::get<std::string>(j, "class");
  if (cls != "H1" && cls != "H2") throw Error(ErrorCode::InvalidInput, "class must be H1 or H2");
  e.cls = cls == "H1" ? HennebergClass::H1 : HennebergClass::H2;
  if (!(canonical_key(e.graph) == e.key)) throw Error(ErrorCode::InvalidInput, "catalog key does not match its graph");
  return e;
}

inline void write_catalog(std::ostream& out, const std::vector<CatalogEntry>& entries) {
  for (const auto& e : entries) out << catalog_entry_to_json(e).dump() << '\n';
}

inline std::vector<CatalogEntry> read_catalog(std::istream& in) {
  std::vector<CatalogEntry> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      out.push_back(catalog_entry_from_json(json::parse(line)));
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::InvalidInput, std::string("catalog line is not JSON: ") + e.what());
    }
  }
  return out;
}

inline json supports_to_json(const SupportSystem& s) {
  return json{{"schema_version", kSchemaVersion},
              {"vars", s.var_names},
              {"formulation", std::string(to_string(s.formulation))},
              {"supports", s.supports}};
}

inline SupportSystem supports_from_json(const json& j) {
  SupportSystem s;
  s.var_names = detail::get<std::vector<std::string>>(j, "vars");
  s.num_vars = static_cast<int>(s.var_names.size());
  s.supports = detail::get<std::vector<Support>>(j, "supports");
  if (j.contains("formulation")) s.formulation = formulation_from_string(detail::get<std::string>(j, "formulation"));
  for (const auto& sup : s.supports) {
    for (const auto& e : sup) {
      if (static_cast<int>(e.size()) != s.num_vars) throw Error(ErrorCode::DimensionMismatch, "exponent length differs from vars");
    }
  }
  return s;
}

inline std::string_view to_string(PinValue v) {
  switch (v) {
    case PinValue::Zero: return "0";
    case PinValue::One: return "1";
    case PinValue::Generic: return "generic";
  }
  return "";
}

inline PinValue pin_value_from_string(const std::string& s) {
  if (s == "0") return PinValue::Zero;
  if (s == "1") return PinValue::One;
  if (s == "generic") return PinValue::Generic;
  throw Error(ErrorCode::InvalidInput, "pinned value must be 0, 1 or generic");
}

inline json pinning_to_json(const Pinning& p) {
  json constants = json::array();
  const std::size_t coords = p.dim == Dim::Planar ? 2 : 3;
  for (const auto& c : p.constants) {
    json row = json::array();
    for (std::size_t k = 0; k < coords; ++k) row.push_back(std::string(to_string(c[k])));
    constants.push_back(row);
  }
  return json{{"fixed", p.fixed}, {"constants", constants}};
}

inline Pinning pinning_from_json(const json& j, Dim dim) {
  Pinning p{dim, detail::get<std::vector<int>>(j, "fixed"), {}};
  for (const auto& row : detail::get<std::vector<std::vector<std::string>>>(j, "constants")) {
    std::array<PinValue, 3> c{PinValue::Zero, PinValue::Zero, PinValue::Zero};
    if (row.size() > 3) throw Error(ErrorCode::InvalidInput, "too many pinned coordinates");
    for (std::size_t k = 0; k < row.size(); ++k) c[k] = pin_value_from_string(row[k]);
    p.constants.push_back(c);
  }
  return p;
}

inline json report_to_json(const BoundsReport& r) {
  json lower = json::object();
  for (const auto& [name, v] : r.lower_formulas) lower[name] = big_to_json(v);
  json j{{"n", r.n},
         {"dim", static_cast<int>(r.dim)},
         {"bezout", big_to_json(r.bezout)},
         {"binomial_upper", big_to_json(r.binomial_upper)},
         {"mv_naive", r.mv_naive ? json(*r.mv_naive) : json(nullptr)},
         {"mv_augmented", r.mv_augmented ? json(*r.mv_augmented) : json(nullptr)},
         {"best_pinning", r.best_pinning ? pinning_to_json(*r.best_pinning) : json(nullptr)},
         {"lower_formulas", lower},
         {"sparse_lemma", r.sparse_lemma ? big_to_json(*r.sparse_lemma) : json(nullptr)},
         {"class", std::string(to_string(r.cls))}};
  return j;
}

inline BoundsReport report_from_json(const json& j) {
  BoundsReport r;
  r.n = detail::get<int>(j, "n");
  r.dim = dim_from_int(detail::get<int>(j, "dim"));
  r.bezout = big_from_json(detail::get<json>(j, "bezout"));
  r.binomial_upper = big_from_json(detail::get<json>(j, "binomial_upper"));
  if (const auto v = detail::get<json>(j, "mv_naive"); !v.is_null()) r.mv_naive = v.get<std::uint64_t>();
  if (const auto v = detail::get<json>(j, "mv_augmented"); !v.is_null()) r.mv_augmented = v.get<std::uint64_t>();
  if (const auto v = detail::get<json>(j, "best_pinning"); !v.is_null()) r.best_pinning = pinning_from_json(v, r.dim);
  const json lower = detail::get<json>(j, "lower_formulas");
  for (const auto& [name, v] : lower.items()) r.lower_formulas[name] = big_from_json(v);
  if (const auto v = detail::get<json>(j, "sparse_lemma"); !v.is_null()) r.sparse_lemma = big_from_json(v);
  const auto cls = detail::get<std::string>(j, "class");
  r.cls = cls == "H1" ? HennebergClass::H1 : HennebergClass::H2;
  return r;
}

inline json witness_to_json(const FaceWitness& w, const std::vector<std::string>& var_names) {
  json point = json::array();
  for (const auto& z : w.point) point.push_back(json{{"re", z.p}, {"i_sqrt2", z.q}, {"text", to_string(z)}});
  json face = json::array();
  for (const auto& p : w.face) face.push_back(to_string(p, var_names));
  json residuals = json::array();
  for (const auto& z : w.residuals) residuals.push_back(to_string(z));
  return json{{"schema_version", kSchemaVersion},
              {"vars", var_names},
              {"direction", w.direction},
              {"gamma_sign", w.gamma_sign},
              {"point", point},
              {"face_system", face},
              {"face_supports", w.face_supports.supports},
              {"residuals", residuals},
              {"verified", w.verified}};
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, "'" + path + "' is not JSON: " + e.what());
  }
}

}  // namespace rigidbound::io
