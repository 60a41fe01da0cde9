#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "rigidbound/bounds.hpp"
#include "rigidbound/cache.hpp"
#include "rigidbound/constructions.hpp"
#include "rigidbound/enumerate.hpp"
#include "rigidbound/io.hpp"
#include "rigidbound/mixedvol.hpp"
#include "rigidbound/polysys.hpp"
#include "rigidbound/table.hpp"
#include "rigidbound/witness.hpp"

namespace rb = rigidbound;
using rb::io::json;

namespace {

constexpr const char* kCacheEnv = "RIGIDBOUND_CACHE_DIR";
constexpr int kDefaultNMax = 7;
constexpr int kLongNMax = 10;

struct RunConfig {
  int dim = 0;
  int n = 0;
  int n_max = kDefaultNMax;
  bool allow_long = false;
  std::string formulation = "augmented";
  std::string pinning = "all";
  std::uint64_t seed = rb::MixedVolumeOptions{}.seed;
  int jobs = 1;
  std::string cache_dir;
  bool no_cache = false;
  std::string output;
  std::string graph;
  std::string supports;
  std::string catalog;
  int gamma = 1;
  bool naive = false;
  long long time_budget_ms = 0;
  bool no_h3 = false;
};

std::optional<rb::Dim> dim_of(const RunConfig& cfg) {
  if (cfg.dim == 0) return std::nullopt;
  return rb::dim_from_int(cfg.dim);
}

rb::MixedVolumeOptions mv_options(const RunConfig& cfg) {
  rb::MixedVolumeOptions o;
  o.seed = cfg.seed;
  return o;
}

std::optional<rb::ReportCache> open_cache(const RunConfig& cfg) {
  if (cfg.no_cache) return std::nullopt;
  std::string dir = cfg.cache_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv(kCacheEnv)) dir = env;
  }
  if (dir.empty()) return std::nullopt;
  return rb::ReportCache(dir);
}

/// "name:desargues", "name:h1_chain,n=7,dim=3" or a path to a graph JSON file.
rb::RigidGraph load_graph(const RunConfig& cfg) {
  if (cfg.graph.empty()) throw rb::Error(rb::ErrorCode::BadParams, "--graph is required");
  rb::RigidGraph g = cfg.graph.rfind("name:", 0) == 0 ? rb::make_named_from_spec(cfg.graph.substr(5))
                                                      : rb::io::graph_from_json(rb::io::read_json_file(cfg.graph));
  if (const auto d = dim_of(cfg); d && *d != g.dim()) {
    throw rb::Error(rb::ErrorCode::DimensionMismatch, "graph has dimension " + std::to_string(static_cast<int>(g.dim())));
  }
  return g;
}

std::vector<rb::CatalogEntry> load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw rb::Error(rb::ErrorCode::InvalidInput, "cannot open '" + path + "'");
  return rb::io::read_catalog(in);
}

/// "all" or "index:K" / "K", an index into pinning_candidates(g).
std::optional<std::size_t> pinning_index(const RunConfig& cfg) {
  if (cfg.pinning == "all") return std::nullopt;
  const std::string digits = cfg.pinning.rfind("index:", 0) == 0 ? cfg.pinning.substr(6) : cfg.pinning;
  try {
    std::size_t used = 0;
    const long long k = std::stoll(digits, &used);
    if (used == digits.size() && k >= 0) return static_cast<std::size_t>(k);
  } catch (const std::exception&) {
  }
  throw rb::Error(rb::ErrorCode::BadParams, "pinning policy must be 'all' or 'index:K'");
}

rb::Pinning chosen_pinning(const rb::RigidGraph& g, const RunConfig& cfg) {
  const auto candidates = rb::pinning_candidates(g);
  const std::size_t k = pinning_index(cfg).value_or(0);
  if (k >= candidates.size()) {
    throw rb::Error(rb::ErrorCode::IncompatiblePinning, "pinning index " + std::to_string(k) + " out of " +
                                                            std::to_string(candidates.size()) + " candidates");
  }
  return candidates[k];
}

int check_n_max(const RunConfig& cfg) {
  if (cfg.n_max > kLongNMax) throw rb::Error(rb::ErrorCode::BadParams, "n_max above 10 is not supported");
  if (cfg.n_max > kDefaultNMax && !cfg.allow_long) {
    throw rb::Error(rb::ErrorCode::ResourceLimit, "n_max above 7 needs --allow-long");
  }
  return cfg.n_max;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path, std::ios::trunc);
    if (!file_) throw rb::Error(rb::ErrorCode::InvalidInput, "cannot write '" + path + "'");
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

int cmd_enumerate(const RunConfig& cfg) {
  const auto d = dim_of(cfg);
  if (!d || cfg.n == 0) throw rb::Error(rb::ErrorCode::BadParams, "--dim and --n are required");
  // plane n <= 8 and space n <= 9 enumerate in seconds
  if (cfg.n > (*d == rb::Dim::Planar ? 8 : 9) && !cfg.allow_long) {
    throw rb::Error(rb::ErrorCode::ResourceLimit, "large n needs --allow-long");
  }
  rb::GenerateOptions opts;
  opts.allow_h3 = !cfg.no_h3;
  if (cfg.time_budget_ms > 0) opts.time_budget = std::chrono::milliseconds(cfg.time_budget_ms);
  const auto catalog = rb::generate_all(*d, cfg.n, opts);
  Output out(cfg.output);
  rb::io::write_catalog(out.stream(), catalog);
  return 0;
}

json per_pinning_json(const rb::PinningVolume& p) {
  return json{{"pinning", rb::io::pinning_to_json(p.pinning)}, {"mv", p.mv}};
}

int cmd_mixed_volume(const RunConfig& cfg) {
  Output out(cfg.output);
  if (!cfg.supports.empty()) {
    if (!cfg.graph.empty()) throw rb::Error(rb::ErrorCode::BadParams, "give either --graph or --supports");
    const rb::SupportSystem s = rb::io::supports_from_json(rb::io::read_json_file(cfg.supports));
    const rb::MixedVolumeResult r = rb::mixed_volume(s, mv_options(cfg));
    out.stream() << json{{"schema_version", rb::io::kSchemaVersion}, {"mv", r.mv}, {"cells", r.cells}, {"seed", r.seed}}.dump()
                 << '\n';
    return 0;
  }
  const rb::RigidGraph g = load_graph(cfg);
  const rb::Formulation f = rb::formulation_from_string(cfg.formulation);
  json j{{"schema_version", rb::io::kSchemaVersion}, {"formulation", std::string(rb::to_string(f))}, {"seed", cfg.seed}};

  if (const auto k = pinning_index(cfg)) {
    const rb::Pinning pin = chosen_pinning(g, cfg);
    const auto r = rb::mixed_volume(rb::build_system(g, pin, f), mv_options(cfg));
    j["mv"] = r.mv;
    j["best_pinning"] = rb::io::pinning_to_json(pin);
    j["per_pinning"] = json::array({per_pinning_json({pin, r.mv})});
    out.stream() << j.dump() << '\n';
    return 0;
  }

  auto cache = open_cache(cfg);
  const std::string variant = rb::cache_variant(f, "all");
  if (cache) {
    if (auto hit = cache->get(g, variant)) {
      const auto mv = f == rb::Formulation::Augmented ? hit->mv_augmented : hit->mv_naive;
      if (mv && hit->best_pinning) {
        j["mv"] = *mv;
        j["best_pinning"] = rb::io::pinning_to_json(*hit->best_pinning);
        j["per_pinning"] = nullptr;
        j["cached"] = true;
        out.stream() << j.dump() << '\n';
        return 0;
      }
    }
  }
  const rb::MinMixedVolume m = rb::min_mixed_volume(g, f, mv_options(cfg));
  j["mv"] = m.value;
  j["best_pinning"] = rb::io::pinning_to_json(m.best_pinning);
  json per = json::array();
  for (const auto& p : m.per_pinning) per.push_back(per_pinning_json(p));
  j["per_pinning"] = per;
  j["cached"] = false;
  if (cache) {
    rb::BoundsReport r;
    r.n = g.n();
    r.dim = g.dim();
    r.bezout = rb::bezout(g.n(), g.dim());
    r.binomial_upper = rb::binomial_upper(g.n(), g.dim());
    (f == rb::Formulation::Augmented ? r.mv_augmented : r.mv_naive) = m.value;
    r.best_pinning = m.best_pinning;
    r.cls = rb::classify_henneberg(g).cls;
    cache->put(g, variant, r);
    cache->flush();
  }
  out.stream() << j.dump() << '\n';
  return 0;
}

int cmd_bounds(const RunConfig& cfg) {
  Output out(cfg.output);
  if (cfg.graph.empty()) {
    const auto d = dim_of(cfg);
    if (!d || cfg.n == 0) throw rb::Error(rb::ErrorCode::BadParams, "give --graph, or --dim and --n");
    json lower = json::object();
    for (auto b : {rb::LowerBound::Caterpillar2d, rb::LowerBound::Fan2d, rb::LowerBound::Cyclo3d, rb::LowerBound::H1Chain}) {
      if (rb::natural_dim(b, *d) != *d) continue;
      try {
        lower[std::string(rb::to_string(b))] = rb::io::big_to_json(rb::lower_bound(b, cfg.n, *d));
      } catch (const rb::Error&) {
      }
    }
    out.stream() << json{{"schema_version", rb::io::kSchemaVersion},
                         {"n", cfg.n},
                         {"dim", cfg.dim},
                         {"bezout", rb::io::big_to_json(rb::bezout(cfg.n, *d))},
                         {"binomial_upper", rb::io::big_to_json(rb::binomial_upper(cfg.n, *d))},
                         {"table_lower", rb::io::big_to_json(rb::table_lower(cfg.n, *d))},
                         {"lower_formulas", lower}}
                        .dump()
                 << '\n';
    return 0;
  }
  const rb::RigidGraph g = load_graph(cfg);
  rb::ReportOptions opts;
  opts.naive = cfg.naive;
  opts.mv = mv_options(cfg);
  const std::string variant = cfg.naive ? "report/both/all" : "report/augmented/all";
  auto cache = open_cache(cfg);
  std::optional<rb::BoundsReport> report;
  if (cache) report = cache->get(g, variant);
  if (!report) {
    report = rb::bounds_report(g, opts);
    if (cache) {
      cache->put(g, variant, *report);
      cache->flush();
    }
  }
  json j = rb::io::report_to_json(*report);
  j["schema_version"] = rb::io::kSchemaVersion;
  out.stream() << j.dump() << '\n';
  return 0;
}

int cmd_table(const RunConfig& cfg) {
  const auto d = dim_of(cfg);
  if (!d) throw rb::Error(rb::ErrorCode::BadParams, "--dim is required");
  const int n_max = check_n_max(cfg);
  auto cache = open_cache(cfg);
  rb::TableOptions opts;
  opts.formulation = rb::formulation_from_string(cfg.formulation);
  opts.mv = mv_options(cfg);
  opts.jobs = cfg.jobs;
  opts.cache = cache ? &*cache : nullptr;
  Output out(cfg.output);
  out.stream() << rb::table_csv_header() << '\n';
  for (const auto& level : rb::generate_levels(*d, n_max)) {
    out.stream() << rb::table_csv_line(rb::table_row(level, opts)) << '\n' << std::flush;
  }
  return 0;
}

int cmd_witness(const RunConfig& cfg) {
  const rb::RigidGraph g = load_graph(cfg);
  const rb::Pinning pin = chosen_pinning(g, cfg);
  const rb::FaceWitness w = rb::degeneracy_witness(g, pin, rb::Formulation::Naive, cfg.gamma);
  json j = rb::io::witness_to_json(w, rb::build_system(g, pin, rb::Formulation::Naive).var_names);
  j["pinning"] = rb::io::pinning_to_json(pin);
  Output out(cfg.output);
  out.stream() << j.dump() << '\n';
  return 0;
}

int cmd_support_dump(const RunConfig& cfg) {
  const rb::RigidGraph g = load_graph(cfg);
  const rb::Pinning pin = chosen_pinning(g, cfg);
  json j = rb::io::supports_to_json(rb::build_system(g, pin, rb::formulation_from_string(cfg.formulation)));
  j["pinning"] = rb::io::pinning_to_json(pin);
  Output out(cfg.output);
  out.stream() << j.dump() << '\n';
  return 0;
}

constexpr int kViolationExit = 3;

int cmd_conjecture_scan(const RunConfig& cfg) {
  std::vector<rb::CatalogEntry> catalog;
  if (!cfg.catalog.empty()) {
    catalog = load_catalog(cfg.catalog);
  } else {
    const auto d = dim_of(cfg);
    if (!d) throw rb::Error(rb::ErrorCode::BadParams, "give --catalog or --dim");
    for (auto& level : rb::generate_levels(*d, check_n_max(cfg))) {
      for (auto& e : level) catalog.push_back(std::move(e));
    }
  }
  const auto records = rb::conjecture_scan(catalog, rb::formulation_from_string(cfg.formulation), mv_options(cfg));
  json rows = json::array();
  std::size_t violations = 0;
  for (const auto& r : records) {
    violations += r.violation ? 1 : 0;
    rows.push_back(json{{"key", r.key.hex()},
                        {"sequence", rb::encode_sequence(r.sequence)},
                        {"step", r.step},
                        {"kind", "H" + std::to_string(static_cast<int>(r.kind))},
                        {"before", r.before},
                        {"after", r.after},
                        {"violation", r.violation}});
  }
  Output out(cfg.output);
  out.stream() << json{{"schema_version", rb::io::kSchemaVersion},
                       {"graphs", catalog.size()},
                       {"steps", records.size()},
                       {"violations", violations},
                       {"records", rows}}
                      .dump()
               << '\n';
  if (violations > 0) {
    for (const auto& r : records) {
      if (!r.violation) continue;
      std::cerr << json{{"violation", rb::sequence_word(r.sequence)}, {"step", r.step}, {"before", r.before}, {"after", r.after}}
                       .dump()
                << '\n';
    }
    return kViolationExit;
  }
  return 0;
}

int cmd_cache_gc(const RunConfig& cfg) {
  auto cache = open_cache(cfg);
  if (!cache) throw rb::Error(rb::ErrorCode::BadParams, std::string("no cache directory; use --cache-dir or ") + kCacheEnv);
  const rb::CacheGcStats s = cache->gc();
  Output out(cfg.output);
  out.stream() << json{{"files", s.files}, {"kept", s.kept}, {"dropped_duplicates", s.dropped_duplicates},
                       {"dropped_corrupt", s.dropped_corrupt}}
                      .dump()
               << '\n';
  return 0;
}

void report_error(std::string_view code, std::string message) {
  const std::string prefix = std::string(code) + ": ";
  if (message.rfind(prefix, 0) == 0) message.erase(0, prefix.size());
  std::cerr << json{{"error", std::string(code)}, {"message", message}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Rigid graph embedding bounds: catalogs, mixed volumes and tables"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", cfg.seed, "Lifting seed for mixed volumes");
  app.add_option("--jobs,-j", cfg.jobs, "Worker threads for per-graph jobs")->check(CLI::Range(1, 256));
  app.add_option("--cache-dir", cfg.cache_dir, std::string("Report cache directory (default $") + kCacheEnv + ")");
  app.add_flag("--no-cache", cfg.no_cache, "Ignore the report cache");
  app.add_option("--output,-o", cfg.output, "Output file (default stdout)");

  auto dim_opt = [&](CLI::App* sub) { return sub->add_option("--dim", cfg.dim, "Dimension, 2 or 3")->check(CLI::IsMember({2, 3})); };
  auto graph_opt = [&](CLI::App* sub) { return sub->add_option("--graph", cfg.graph, "Graph file or name:<id>[,key=value...]"); };
  auto pinning_opt = [&](CLI::App* sub) { return sub->add_option("--pinning", cfg.pinning, "'all' or 'index:K'"); };
  auto formulation_opt = [&](CLI::App* sub) {
    return sub->add_option("--formulation", cfg.formulation, "augmented or naive")
        ->check(CLI::IsMember({"augmented", "naive"}));
  };
  auto n_max_opt = [&](CLI::App* sub) {
    sub->add_option("--n-max", cfg.n_max, "Largest vertex count");
    sub->add_flag("--allow-long", cfg.allow_long, "Allow n_max from 8 to 10");
  };
  auto* enumerate = app.add_subcommand("enumerate", "Write the catalog for one vertex count as JSONL");
  dim_opt(enumerate)->required();
  enumerate->add_option("--n", cfg.n, "Vertex count")->required();
  enumerate->add_flag("--no-h3", cfg.no_h3, "Spatial catalog without H3 steps");
  enumerate->add_option("--time-budget-ms", cfg.time_budget_ms, "Abort with ResourceLimit after this long");
  enumerate->add_flag("--allow-long", cfg.allow_long, "Allow large vertex counts");

  auto* mixed = app.add_subcommand("mixed-volume", "Minimum mixed volume of a graph, or the mixed volume of a support dump");
  graph_opt(mixed);
  mixed->add_option("--supports", cfg.supports, "Support dump JSON");
  dim_opt(mixed);
  formulation_opt(mixed);
  pinning_opt(mixed);

  auto* bounds = app.add_subcommand("bounds", "Bounds report for a graph, or the calculators for (dim, n)");
  graph_opt(bounds);
  dim_opt(bounds);
  bounds->add_option("--n", cfg.n, "Vertex count");
  bounds->add_flag("--naive", cfg.naive, "Also compute the naive mixed volume");

  auto* table = app.add_subcommand("table", "Per-n bounds table as CSV");
  dim_opt(table)->required();
  n_max_opt(table);
  formulation_opt(table);

  auto* witness = app.add_subcommand("witness", "Toric root at infinity of the naive spatial system");
  graph_opt(witness)->required();
  dim_opt(witness);
  pinning_opt(witness);
  witness->add_option("--gamma", cfg.gamma, "Sign of the imaginary unit, 1 or -1");

  auto* scan = app.add_subcommand("conjecture-scan", "Mixed-volume growth per Henneberg step");
  scan->add_option("--catalog", cfg.catalog, "Catalog JSONL (default: generate up to --n-max)");
  dim_opt(scan);
  n_max_opt(scan);
  formulation_opt(scan);

  auto* dump = app.add_subcommand("support-dump", "Support dump JSON of a pinned system");
  graph_opt(dump)->required();
  dim_opt(dump);
  formulation_opt(dump);
  pinning_opt(dump);

  auto* cache = app.add_subcommand("cache", "Cache maintenance");
  cache->require_subcommand(1);
  auto* gc = cache->add_subcommand("gc", "Drop corrupt and duplicate cache lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("BadParams", e.what());
    return 2;
  }

  try {
    if (*enumerate) return cmd_enumerate(cfg);
    if (*mixed) return cmd_mixed_volume(cfg);
    if (*bounds) return cmd_bounds(cfg);
    if (*table) return cmd_table(cfg);
    if (*witness) return cmd_witness(cfg);
    if (*scan) return cmd_conjecture_scan(cfg);
    if (*dump) return cmd_support_dump(cfg);
    if (*gc) return cmd_cache_gc(cfg);
  } catch (const rb::Error& e) {
    report_error(rb::to_string(e.code()), e.what());
    return 1;
  } catch (const std::exception& e) {
    report_error("Internal", e.what());
    return 1;
  }
  return 0;
}
