#pragma once

// Persistent bounds reports, content-addressed by canonical key plus a
// variant string (formulation and pinning policy). One JSON-lines file per
// (dim, n) and an index.json; every line carries an FNV-1a checksum.
// Reports are stored in canonical labels and relabeled on the way out.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "rigidbound/bounds.hpp"
#include "rigidbound/canonical.hpp"
#include "rigidbound/error.hpp"
#include "rigidbound/io.hpp"

namespace rigidbound {

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// "augmented/all", "naive/index:3", ...
inline std::string cache_variant(Formulation f, std::string_view pinning_policy) {
  return std::string(to_string(f)) + "/" + std::string(pinning_policy);
}

struct CacheGcStats {
  std::size_t files = 0;
  std::size_t kept = 0;
  std::size_t dropped_duplicates = 0;
  std::size_t dropped_corrupt = 0;
};

class ReportCache {
 public:
  explicit ReportCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& dir() const { return dir_; }

  std::optional<BoundsReport> get(const RigidGraph& g, const std::string& variant) {
    const CanonicalForm form = canonical_form(g);
    auto r = get(form.key, variant);
    if (r && r->best_pinning) {
      std::vector<int> inverse(form.perm.size());
      for (std::size_t v = 0; v < form.perm.size(); ++v) inverse[static_cast<std::size_t>(form.perm[v])] = static_cast<int>(v);
      for (auto& v : r->best_pinning->fixed) v = inverse[static_cast<std::size_t>(v)];
    }
    return r;
  }

  /// Report in the labels of graph_from_key(key).
  std::optional<BoundsReport> get(const CanonicalKey& key, const std::string& variant) {
    auto& file = load(key.dim, key.n);
    auto it = file.records.find({key.hex(), variant});
    if (it == file.records.end()) return std::nullopt;
    return it->second;
  }

  void put(const RigidGraph& g, const std::string& variant, BoundsReport report) {
    const CanonicalForm form = canonical_form(g);
    if (report.best_pinning) {
      for (auto& v : report.best_pinning->fixed) v = form.perm[static_cast<std::size_t>(v)];
    }
    put(form.key, variant, std::move(report));
  }

  void put(const CanonicalKey& key, const std::string& variant, BoundsReport report) {
    auto& file = load(key.dim, key.n);
    file.records[{key.hex(), variant}] = std::move(report);
    file.dirty = true;
  }

  /// Rewrites every changed file through a temporary and an atomic rename.
  void flush() {
    bool any = false;
    for (auto& [name, file] : files_) {
      if (!file.dirty) continue;
      std::string body;
      for (const auto& [id, report] : file.records) body += line_for(id.first, id.second, report) + "\n";
      write_atomic(dir_ / name, body);
      file.dirty = false;
      any = true;
    }
    if (any) write_index();
  }

  /// Compacts every cache file: drops corrupt lines and duplicate keys (last wins).
  CacheGcStats gc() {
    CacheGcStats stats;
    if (!std::filesystem::exists(dir_)) return stats;
    for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
      const std::string name = entry.path().filename().string();
      if (entry.path().extension() != ".jsonl") continue;
      ++stats.files;
      std::map<std::pair<std::string, std::string>, BoundsReport> records;
      std::size_t lines = 0;
      std::size_t corrupt = 0;
      std::ifstream in(entry.path());
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++lines;
        try {
          auto [id, report] = parse_line(line);
          records[id] = std::move(report);
        } catch (const Error&) {
          ++corrupt;
        }
      }
      stats.dropped_corrupt += corrupt;
      stats.dropped_duplicates += lines - corrupt - records.size();
      stats.kept += records.size();
      std::string body;
      for (const auto& [id, report] : records) body += line_for(id.first, id.second, report) + "\n";
      write_atomic(entry.path(), body);
      files_[name] = File{std::move(records), false};
    }
    write_index();
    return stats;
  }

 private:
  using Id = std::pair<std::string, std::string>;  // key hex, variant
  struct File {
    std::map<Id, BoundsReport> records;
    bool dirty = false;
  };

  static std::string file_name(Dim dim, int n) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "d%dn%02d.jsonl", static_cast<int>(dim), n);
    return buf;
  }

  static std::string checksum(const std::string& key, const std::string& variant, const std::string& payload) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(key + "|" + variant + "|" + payload)));
    return buf;
  }

  static std::string line_for(const std::string& key, const std::string& variant, const BoundsReport& r) {
    const std::string payload = io::report_to_json(r).dump();
    io::json j{{"key", key}, {"variant", variant}, {"report", io::json::parse(payload)}, {"checksum", checksum(key, variant, payload)}};
    return j.dump();
  }

  static std::pair<Id, BoundsReport> parse_line(const std::string& line) {
    io::json j;
    try {
      j = io::json::parse(line);
    } catch (const io::json::parse_error&) {
      throw Error(ErrorCode::CorruptCache, "cache line is not JSON");
    }
    try {
      const std::string key = j.at("key").get<std::string>();
      const std::string variant = j.at("variant").get<std::string>();
      const std::string payload = j.at("report").dump();
      if (j.at("checksum").get<std::string>() != checksum(key, variant, payload)) {
        throw Error(ErrorCode::CorruptCache, "checksum mismatch for " + key);
      }
      return {{key, variant}, io::report_from_json(j.at("report"))};
    } catch (const io::json::exception&) {
      throw Error(ErrorCode::CorruptCache, "cache line lacks required fields");
    } catch (const Error& e) {
      if (e.code() == ErrorCode::CorruptCache) throw;
      throw Error(ErrorCode::CorruptCache, e.what());
    }
  }

  File& load(Dim dim, int n) {
    const std::string name = file_name(dim, n);
    if (auto it = files_.find(name); it != files_.end()) return it->second;
    File file;
    std::ifstream in(dir_ / name);
    std::string line;
    while (in && std::getline(in, line)) {
      if (line.empty()) continue;
      auto [id, report] = parse_line(line);
      file.records[id] = std::move(report);
    }
    return files_.emplace(name, std::move(file)).first->second;
  }

  static void write_atomic(const std::filesystem::path& path, const std::string& body) {
    std::filesystem::create_directories(path.parent_path());
    const auto tmp = path.string() + ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      if (!out) throw Error(ErrorCode::InvalidInput, "cannot write cache file " + tmp);
      out << body;
    }
    std::filesystem::rename(tmp, path);
  }

  void write_index() {
    io::json files = io::json::object();
    std::set<std::string> names;
    if (std::filesystem::exists(dir_)) {
      for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
        if (entry.path().extension() == ".jsonl") names.insert(entry.path().filename().string());
      }
    }
    for (const auto& name : names) {
      std::size_t count = 0;
      if (auto it = files_.find(name); it != files_.end()) {
        count = it->second.records.size();
      } else {
        std::ifstream in(dir_ / name);
        std::string line;
        while (std::getline(in, line)) count += line.empty() ? 0 : 1;
      }
      files[name] = count;
    }
    io::json index{{"schema_version", io::kSchemaVersion}, {"files", files}};
    write_atomic(dir_ / "index.json", index.dump(2) + "\n");
  }

  std::filesystem::path dir_;
  std::map<std::string, File> files_;
};

}  // namespace rigidbound
