#pragma once

// End-to-end commands: corpus -> weighting -> hvg -> graph -> analysis,
// writing their results into an output directory. The CLI is a thin flag
// parser over these functions.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chvg/analysis.hpp"
#include "chvg/corpus.hpp"
#include "chvg/error.hpp"
#include "chvg/graph.hpp"
#include "chvg/hvg.hpp"
#include "chvg/io.hpp"
#include "chvg/weighting.hpp"

namespace chvg {

inline constexpr std::string_view kOutDirEnv = "CHVG_OUT_DIR";

struct RunConfig {
  std::vector<std::filesystem::path> inputs;
  TokenizerConfig tokenizer;
  Scheme scheme = Scheme::sigma;
  WeightKinds weights;
  std::size_t n = 100;
  std::size_t k_min = 2;
  std::filesystem::path out_dir = ".";
  std::set<std::string> formats{"edgelist"};  // edgelist, nodes, dot, graphml, hvg
  std::uint64_t seed = 1;
  std::size_t baseline_length = 100'000;
  bool batch = false;

  void validate() const {
    tokenizer.validate();
    if (n < 1) throw ConfigError("n must be >= 1");
    if (k_min < 1) throw ConfigError("k_min must be >= 1");
    static const std::set<std::string> known{"edgelist", "nodes", "dot", "graphml", "hvg"};
    for (const auto& f : formats) {
      if (!known.contains(f)) throw ConfigError("unknown export format '" + f + "' (valid: edgelist, nodes, dot, graphml, hvg)");
    }
  }
};

/// Output directory default: $CHVG_OUT_DIR when set, else the working directory.
inline std::filesystem::path default_out_dir() {
  if (const char* env = std::getenv(std::string(kOutDirEnv).c_str()); env != nullptr && *env != '\0') return env;
  return ".";
}

/// Config echo for one command. Only the fields that can change that
/// command's output are included, so e.g. the seed never appears in (or
/// perturbs) a keyword report.
inline Json to_json(const RunConfig& c, std::string_view command) {
  if (command == "random-baseline") {
    return Json{{"seed", c.seed}, {"baseline_length", c.baseline_length}};
  }
  Json inputs = Json::array();
  for (const auto& p : c.inputs) inputs.push_back(p.generic_string());
  Json j{{"inputs", inputs}, {"tokenizer", to_json(c.tokenizer)}, {"scheme", to_string(c.scheme)}, {"hapax_sigma", 0}};
  if (command == "build") {
    Json formats = Json::array();
    for (const auto& f : c.formats) formats.push_back(f);
    j["formats"] = formats;
  } else if (command == "analyze") {
    j["k_min"] = c.k_min;
  } else if (command == "keywords") {
    j["chvg_weight"] = to_string(c.weights.chvg);
    j["adjacency_weight"] = to_string(c.weights.adjacency);
    j["n"] = c.n;
  }
  return j;
}

namespace detail {

/// Runs one stage, prefixing any library error with the stage name while
/// keeping its category (config vs data).
template <typename F>
auto stage(std::string_view name, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(name) + ": " + e.what());
  } catch (const DataError& e) {
    throw DataError(std::string(name) + ": " + e.what());
  }
}

inline void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  writer(out);
  out.flush();
  if (!out) throw DataError("cannot write '" + path.string() + "'");
}

inline void prepare_out_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory '" + dir.string() + "': " + ec.message());
}

}  // namespace detail

/// Everything derived from one document.
struct Pipeline {
  Document doc;
  ValueSeries series;
  OccurrenceGraph hvg;
  WordGraph chvg;
  WordGraph adjacency;
};

inline Pipeline run_pipeline(const RunConfig& config) {
  config.validate();
  auto doc = detail::stage("corpus", [&] { return load_corpus(config.inputs, config.tokenizer); });
  auto series = detail::stage("weighting", [&] { return value_series(doc, config.scheme); });
  auto hvg = detail::stage("hvg", [&] { return build_hvg(series); });
  auto chvg = detail::stage("graph", [&] { return compactify(hvg, doc); });
  auto adjacency = detail::stage("graph", [&] { return simple_adjacency_network(doc); });
  return Pipeline{std::move(doc), std::move(series), std::move(hvg), std::move(chvg), std::move(adjacency)};
}

struct BuildSummary {
  std::size_t tokens = 0;
  std::size_t words = 0;
  std::size_t hvg_edges = 0;
  std::size_t chvg_edges = 0;
  std::size_t adjacency_edges = 0;
  std::vector<std::filesystem::path> files;
};

inline BuildSummary cmd_build(const RunConfig& config) {
  const auto p = run_pipeline(config);
  const OutputMeta meta{"build", to_json(config, "build")};
  detail::prepare_out_dir(config.out_dir);
  BuildSummary s{p.doc.size(), p.doc.lexicon().size(), p.hvg.edge_count(), p.chvg.edge_count(),
                 p.adjacency.edge_count(), {}};
  auto emit = [&](const std::string& name, const std::function<void(std::ostream&)>& w) {
    const auto path = config.out_dir / name;
    detail::stage("export", [&] { detail::write_file(path, w); });
    s.files.push_back(path);
  };
  for (const auto* g : {&p.chvg, &p.adjacency}) {
    const std::string base(to_string(g->kind()));
    if (config.formats.contains("edgelist")) emit(base + ".edges.tsv", [&](std::ostream& os) { write_word_edge_list(os, *g, meta); });
    if (config.formats.contains("nodes")) emit(base + ".nodes.tsv", [&](std::ostream& os) { write_node_table(os, *g, meta); });
    if (config.formats.contains("dot")) emit(base + ".dot", [&](std::ostream& os) { write_dot(os, *g, meta); });
    if (config.formats.contains("graphml")) emit(base + ".graphml", [&](std::ostream& os) { write_graphml(os, *g, meta); });
  }
  if (config.formats.contains("hvg")) emit("hvg.edges.txt", [&](std::ostream& os) { write_hvg_edge_list(os, p.hvg, meta); });
  const auto stats = all_gap_stats(p.doc);
  emit("gap_stats.csv", [&](std::ostream& os) { write_gap_stats_csv(os, p.doc, stats, meta); });
  return s;
}

struct AnalyzeSummary {
  PowerLawFit chvg_degree;
  PowerLawFit chvg_strength;
  std::optional<LinearFit> zipf;
  std::vector<std::filesystem::path> files;
};

inline constexpr std::size_t kZipfFirstRank = 10;
inline constexpr std::size_t kZipfLastRank = 1000;

inline AnalyzeSummary cmd_analyze(const RunConfig& config) {
  const auto p = run_pipeline(config);
  const OutputMeta meta{"analyze", to_json(config, "analyze")};

  AnalyzeSummary s;
  const auto d_deg = detail::stage("analysis", [&] { return degree_distribution(p.chvg, WeightKind::degree); });
  const auto d_str = detail::stage("analysis", [&] { return degree_distribution(p.chvg, WeightKind::strength); });
  const auto d_adj = detail::stage("analysis", [&] { return degree_distribution(p.adjacency, WeightKind::degree); });
  s.chvg_degree = detail::stage("analysis", [&] { return fit_power_law(d_deg, config.k_min); });
  s.chvg_strength = detail::stage("analysis", [&] { return fit_power_law(d_str, config.k_min); });

  Json adjacency_fit;
  try {
    adjacency_fit = to_json(fit_power_law(d_adj, config.k_min));
  } catch (const DataError& e) {
    adjacency_fit = Json{{"error", e.what()}};
  }

  const auto zipf = detail::stage("analysis", [&] { return zipf_rank_frequency(p.doc); });
  Json zipf_json{{"first_rank", kZipfFirstRank}, {"last_rank", kZipfLastRank}};
  try {
    s.zipf = zipf_slope(zipf, kZipfFirstRank, kZipfLastRank);
    zipf_json["slope"] = s.zipf->slope;
    zipf_json["r_squared"] = s.zipf->r_squared;
    zipf_json["ranks_used"] = s.zipf->points;
  } catch (const DataError& e) {
    zipf_json["error"] = e.what();
  }

  detail::prepare_out_dir(config.out_dir);
  auto emit = [&](const std::string& name, const std::function<void(std::ostream&)>& w) {
    const auto path = config.out_dir / name;
    detail::stage("export", [&] { detail::write_file(path, w); });
    s.files.push_back(path);
  };
  emit("ccdf.chvg.degree.tsv", [&](std::ostream& os) { write_ccdf_tsv(os, d_deg, meta); });
  emit("ccdf.chvg.strength.tsv", [&](std::ostream& os) { write_ccdf_tsv(os, d_str, meta); });
  emit("ccdf.adjacency.degree.tsv", [&](std::ostream& os) { write_ccdf_tsv(os, d_adj, meta); });
  emit("zipf.tsv", [&](std::ostream& os) { write_zipf_tsv(os, zipf, meta); });
  const Json fits{{"meta", meta.to_json()},
                  {"chvg_degree", to_json(s.chvg_degree)},
                  {"chvg_strength", to_json(s.chvg_strength)},
                  {"adjacency_degree", adjacency_fit},
                  {"zipf", zipf_json}};
  emit("fit.json", [&](std::ostream& os) { os << fits.dump(2) << '\n'; });
  return s;
}

struct KeywordsSummary {
  KeywordReport report;
  std::vector<std::filesystem::path> files;
};

inline KeywordsSummary cmd_keywords(const RunConfig& config) {
  const auto p = run_pipeline(config);
  const OutputMeta meta{"keywords", to_json(config, "keywords")};
  KeywordsSummary s;
  s.report = detail::stage("analysis", [&] { return keyword_report(p.chvg, p.adjacency, config.n, config.weights); });
  detail::prepare_out_dir(config.out_dir);
  for (const auto& [name, writer] : std::vector<std::pair<std::string, std::function<void(std::ostream&)>>>{
           {"keywords.json", [&](std::ostream& os) { os << to_json(s.report, meta).dump(2) << '\n'; }},
           {"keywords.csv", [&](std::ostream& os) { write_report_csv(os, s.report, meta); }}}) {
    const auto path = config.out_dir / name;
    detail::stage("export", [&] { detail::write_file(path, writer); });
    s.files.push_back(path);
  }
  return s;
}

// Random-series baseline. For an i.i.d. continuous series the HVG degree
// law is P(k) = (1/3)(2/3)^(k-2), k >= 2, with mean degree 4.

inline double random_hvg_degree_probability(std::size_t k) {
  if (k < 2) return 0.0;
  return (1.0 / 3.0) * std::pow(2.0 / 3.0, static_cast<double>(k - 2));
}

struct BaselineSummary {
  std::size_t length = 0;
  std::uint64_t seed = 0;
  double mean_degree = 0.0;
  std::vector<std::pair<std::size_t, double>> empirical;  // k = 2..10
  bool too_short = false;
  bool mean_ok = false;
  bool pk_ok = false;
  std::vector<std::filesystem::path> files;

  bool passed() const { return !too_short && mean_ok && pk_ok; }
};

inline constexpr double kBaselineMeanTolerance = 0.05;
inline constexpr double kBaselinePkTolerance = 0.01;
inline constexpr std::size_t kBaselineMinLength = 1000;
inline constexpr std::size_t kBaselineMaxK = 10;

/// Uniform doubles in [0, 1) from the top 53 bits of a 64-bit Mersenne
/// twister; the mapping is fixed so a seed gives the same series everywhere.
inline std::vector<double> uniform_series(std::size_t length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> v(length);
  for (auto& x : v) x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return v;
}

inline BaselineSummary random_baseline(std::size_t length, std::uint64_t seed) {
  BaselineSummary s;
  s.length = length;
  s.seed = seed;
  const auto og = build_hvg(uniform_series(length, seed));
  if (length > 0) s.mean_degree = 2.0 * static_cast<double>(og.edge_count()) / static_cast<double>(length);
  std::vector<std::size_t> counts(kBaselineMaxK + 1, 0);
  for (std::size_t i = 0; i < length; ++i) {
    const auto d = og.degree(i);
    if (d <= kBaselineMaxK) ++counts[d];
  }
  s.mean_ok = std::abs(s.mean_degree - 4.0) <= kBaselineMeanTolerance;
  s.pk_ok = true;
  for (std::size_t k = 2; k <= kBaselineMaxK; ++k) {
    const double p = length > 0 ? static_cast<double>(counts[k]) / static_cast<double>(length) : 0.0;
    s.empirical.emplace_back(k, p);
    if (std::abs(p - random_hvg_degree_probability(k)) > kBaselinePkTolerance) s.pk_ok = false;
  }
  s.too_short = length < kBaselineMinLength;
  return s;
}

inline BaselineSummary cmd_random_baseline(const RunConfig& config) {
  auto s = random_baseline(config.baseline_length, config.seed);
  const OutputMeta meta{"random-baseline", to_json(config, "random-baseline")};
  Json pk = Json::array();
  for (const auto& [k, p] : s.empirical) {
    const double expected = random_hvg_degree_probability(k);
    pk.push_back(Json{{"k", k}, {"empirical", p}, {"expected", expected}, {"abs_error", std::abs(p - expected)}});
  }
  std::string status = s.too_short ? "too_short" : (s.passed() ? "pass" : "fail");
  const Json out{{"meta", meta.to_json()},
                 {"length", s.length},
                 {"seed", s.seed},
                 {"mean_degree", s.mean_degree},
                 {"mean_degree_target", 4.0},
                 {"mean_degree_tolerance", kBaselineMeanTolerance},
                 {"pk_tolerance", kBaselinePkTolerance},
                 {"pk", pk},
                 {"mean_degree_check", s.too_short ? "skipped" : (s.mean_ok ? "pass" : "fail")},
                 {"pk_check", s.too_short ? "skipped" : (s.pk_ok ? "pass" : "fail")},
                 {"status", status}};
  detail::prepare_out_dir(config.out_dir);
  const auto path = config.out_dir / "random_baseline.json";
  detail::stage("export", [&] { detail::write_file(path, [&](std::ostream& os) { os << out.dump(2) << '\n'; }); });
  s.files.push_back(path);
  return s;
}

/// Per-file mode: the same command applied to every input independently,
/// results under out_dir/<file stem>/.
template <typename Command>
auto run_batch(const RunConfig& config, Command&& command) {
  std::vector<decltype(command(config))> results;
  for (const auto& input : config.inputs) {
    RunConfig one = config;
    one.inputs = {input};
    one.batch = false;
    one.out_dir = config.out_dir / input.stem();
    results.push_back(command(one));
  }
  return results;
}

}  // namespace chvg
