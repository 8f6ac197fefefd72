#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "chvg/corpus.hpp"
#include "chvg/error.hpp"
#include "chvg/graph.hpp"

namespace chvg {

struct CcdfPoint {
  std::size_t k = 0;
  double value = 0.0;  // 1 - F(k), F(k) = #{measure <= k} / n
};

struct DegreeDistribution {
  std::map<std::size_t, std::size_t> histogram;
  std::vector<CcdfPoint> ccdf;  // one point per distinct measure, ascending k
  std::size_t n_nodes = 0;
  WeightKind weight_kind = WeightKind::degree;
};

/// Histogram and CCDF of an arbitrary list of per-node measures.
inline DegreeDistribution distribution_of(std::span<const std::size_t> measures, WeightKind kind) {
  if (measures.empty()) throw DataError("degree distribution: graph has no nodes");
  DegreeDistribution d;
  d.weight_kind = kind;
  d.n_nodes = measures.size();
  for (auto m : measures) ++d.histogram[m];
  std::size_t above = d.n_nodes;
  for (const auto& [k, count] : d.histogram) {
    above -= count;
    d.ccdf.push_back({k, static_cast<double>(above) / static_cast<double>(d.n_nodes)});
  }
  return d;
}

inline DegreeDistribution degree_distribution(const WordGraph& g, WeightKind kind) {
  if (kind == WeightKind::frequency) {
    throw ConfigError("degree distribution: weight kind must be degree or strength");
  }
  if (g.empty()) throw DataError("degree distribution: graph has no nodes");
  std::vector<std::size_t> measures;
  measures.reserve(g.node_count());
  for (WordId w = 0; w < g.node_count(); ++w) measures.push_back(node_weight(g, w, kind));
  return distribution_of(measures, kind);
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

/// Ordinary least squares y = slope * x + intercept.
inline LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DataError("least squares: need at least two paired points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw DataError("least squares: all x values are equal");
  LinearFit f;
  f.points = x.size();
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.slope * x[i] + f.intercept);
    ss_res += r * r;
  }
  f.r_squared = syy == 0.0 ? 1.0 : std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  return f;
}

struct PowerLawFit {
  double exponent_ls = 0.0;   // slope of log(1 - F(k)) against log k
  double intercept_ls = 0.0;
  double r_squared = 0.0;
  double exponent_mle = 0.0;  // continuous MLE: 1 + n / sum ln(k_i / k_min)
  std::size_t k_min = 1;
  std::size_t points = 0;      // CCDF points in the LS fit
  std::size_t tail_nodes = 0;  // nodes entering the MLE
};

inline constexpr std::size_t kMinFitPoints = 5;

/// Log-log least squares on the CCDF tail plus the continuous MLE exponent.
/// Zero-valued CCDF points are skipped since their log is undefined.
inline PowerLawFit fit_power_law(const DegreeDistribution& dist, std::size_t k_min) {
  if (k_min == 0) throw ConfigError("power-law fit: k_min must be >= 1");
  std::vector<double> xs, ys;
  for (const auto& p : dist.ccdf) {
    if (p.k < k_min || p.value <= 0.0) continue;
    xs.push_back(std::log(static_cast<double>(p.k)));
    ys.push_back(std::log(p.value));
  }
  if (xs.size() < kMinFitPoints) {
    throw DataError("power-law fit: insufficient points (" + std::to_string(xs.size()) + " distinct values >= k_min=" +
                    std::to_string(k_min) + " with positive CCDF, need " + std::to_string(kMinFitPoints) + ")");
  }
  const auto ls = least_squares(xs, ys);

  PowerLawFit fit;
  fit.k_min = k_min;
  fit.exponent_ls = ls.slope;
  fit.intercept_ls = ls.intercept;
  fit.r_squared = ls.r_squared;
  fit.points = ls.points;

  double log_sum = 0.0;
  std::size_t tail = 0;
  for (const auto& [k, count] : dist.histogram) {
    if (k < k_min) continue;
    tail += count;
    log_sum += static_cast<double>(count) * std::log(static_cast<double>(k) / static_cast<double>(k_min));
  }
  fit.tail_nodes = tail;
  fit.exponent_mle = 1.0 + static_cast<double>(tail) / log_sum;
  return fit;
}

struct RankedWord {
  std::size_t rank = 0;  // 1-based
  WordId word = 0;
  std::string form;
  std::size_t weight = 0;

  friend bool operator==(const RankedWord&, const RankedWord&) = default;
};

namespace detail {

inline bool ranks_before(const RankedWord& a, const RankedWord& b) {
  if (a.weight != b.weight) return a.weight > b.weight;
  return a.form < b.form;
}

inline std::vector<RankedWord> rank_prefix(std::vector<RankedWord> all, std::size_t n) {
  n = std::min(n, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n), all.end(), ranks_before);
  all.resize(n);
  for (std::size_t i = 0; i < all.size(); ++i) all[i].rank = i + 1;
  return all;
}

}  // namespace detail

/// Words by frequency, descending; ties by normalized form.
inline std::vector<RankedWord> zipf_rank_frequency(const Document& doc) {
  if (doc.empty()) throw DataError("zipf: document is empty");
  std::vector<std::size_t> freq(doc.lexicon().size(), 0);
  for (WordId id : doc.tokens()) ++freq[id];
  std::vector<RankedWord> all;
  all.reserve(freq.size());
  for (WordId w = 0; w < freq.size(); ++w) all.push_back({0, w, doc.lexicon().form(w), freq[w]});
  const std::size_t n = all.size();
  return detail::rank_prefix(std::move(all), n);
}

/// Log-log slope of frequency against rank over ranks [first, last].
inline LinearFit zipf_slope(std::span<const RankedWord> table, std::size_t first_rank, std::size_t last_rank) {
  std::vector<double> xs, ys;
  for (const auto& r : table) {
    if (r.rank < first_rank || r.rank > last_rank) continue;
    xs.push_back(std::log(static_cast<double>(r.rank)));
    ys.push_back(std::log(static_cast<double>(r.weight)));
  }
  if (xs.size() < 2) throw DataError("zipf slope: fewer than two ranks in range");
  return least_squares(xs, ys);
}

inline std::vector<RankedWord> top_n(const WordGraph& g, std::size_t n, WeightKind kind) {
  if (n < 1) throw ConfigError("top-n: n must be >= 1");
  std::vector<RankedWord> all;
  all.reserve(g.node_count());
  for (WordId w = 0; w < g.node_count(); ++w) all.push_back({0, w, g.form(w), node_weight(g, w, kind)});
  return detail::rank_prefix(std::move(all), n);
}

struct KeywordReport {
  std::size_t n = 100;
  WeightKind lambda_kind = WeightKind::strength;
  WeightKind psi_kind = WeightKind::degree;
  std::vector<RankedWord> lambda;  // CHVG top-n
  std::vector<RankedWord> psi;     // adjacency top-n
  std::vector<RankedWord> omega;   // lambda minus psi, lambda order and ranks
  TokenizerConfig tokenizer;
  std::string source_name;
};

struct WeightKinds {
  WeightKind chvg = WeightKind::strength;
  WeightKind adjacency = WeightKind::degree;
};

/// Top-n of the CHVG minus top-n of the baseline network.
inline KeywordReport keyword_report(const WordGraph& chvg, const WordGraph& adjacency, std::size_t n,
                                    WeightKinds kinds = {}) {
  if (chvg.kind() != GraphKind::chvg) throw ConfigError("keyword report: first graph must be a CHVG");
  if (adjacency.kind() != GraphKind::adjacency) throw ConfigError("keyword report: second graph must be an adjacency network");
  if (chvg.source_fingerprint() != adjacency.source_fingerprint() || chvg.node_count() != adjacency.node_count()) {
    throw DataError("keyword report: graphs were built from different documents");
  }
  KeywordReport r;
  r.n = n;
  r.lambda_kind = kinds.chvg;
  r.psi_kind = kinds.adjacency;
  r.lambda = top_n(chvg, n, kinds.chvg);
  r.psi = top_n(adjacency, n, kinds.adjacency);
  std::unordered_set<WordId> in_psi;
  for (const auto& p : r.psi) in_psi.insert(p.word);
  for (const auto& l : r.lambda) {
    if (!in_psi.contains(l.word)) r.omega.push_back(l);
  }
  r.tokenizer = chvg.tokenizer_config();
  r.source_name = chvg.source_name();
  return r;
}

}  // namespace chvg
