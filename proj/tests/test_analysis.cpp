#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "chvg/analysis.hpp"
#include "chvg/weighting.hpp"
#include "oracles.hpp"

using namespace chvg;

namespace {

std::vector<std::string> words_of(const std::vector<RankedWord>& r) {
  std::vector<std::string> out;
  for (const auto& w : r) out.push_back(w.form);
  return out;
}

using Words = std::vector<std::string>;

}  // namespace

TEST(DegreeDistribution, PathGraph) {
  const auto doc = Document::from_words({"A", "B", "C"});
  const auto g = simple_adjacency_network(doc);
  const auto d = degree_distribution(g, WeightKind::degree);
  EXPECT_EQ(d.n_nodes, 3u);
  EXPECT_EQ(d.histogram, (std::map<std::size_t, std::size_t>{{1, 2}, {2, 1}}));
  ASSERT_EQ(d.ccdf.size(), 2u);
  EXPECT_EQ(d.ccdf[0].k, 1u);
  EXPECT_DOUBLE_EQ(d.ccdf[0].value, 1.0 / 3.0);
  EXPECT_EQ(d.ccdf[1].k, 2u);
  EXPECT_EQ(d.ccdf[1].value, 0.0);
}

TEST(DegreeDistribution, SingleNodeAndErrors) {
  const auto g = simple_adjacency_network(Document::from_words({"A"}));
  const auto d = degree_distribution(g, WeightKind::degree);
  EXPECT_EQ(d.histogram, (std::map<std::size_t, std::size_t>{{0, 1}}));
  ASSERT_EQ(d.ccdf.size(), 1u);
  EXPECT_EQ(d.ccdf[0].value, 0.0);

  EXPECT_THROW(degree_distribution(simple_adjacency_network(Document{}), WeightKind::degree), DataError);
  EXPECT_THROW(degree_distribution(g, WeightKind::frequency), ConfigError);
}

TEST(DegreeDistribution, AllEqualDegrees) {
  // a 4-cycle of distinct words
  const auto doc = Document::from_words({"A", "B", "C", "D", "A"});
  const auto g = simple_adjacency_network(doc);
  const auto d = degree_distribution(g, WeightKind::degree);
  ASSERT_EQ(d.ccdf.size(), 1u);
  EXPECT_EQ(d.ccdf[0].k, 2u);
  EXPECT_EQ(d.ccdf[0].value, 0.0);
}

TEST(DegreeDistribution, MatchesBruteForceCdf) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const auto words = test::random_words(rng, 60, 1 + trial % 20);
    const auto doc = Document::from_words(std::span<const std::string>(words));
    const auto g = compactify(build_hvg(value_series(doc, Scheme::sigma)), doc);
    ASSERT_LE(g.node_count(), 20u);
    for (auto kind : {WeightKind::degree, WeightKind::strength}) {
      const auto d = degree_distribution(g, kind);
      std::vector<std::size_t> measures;
      for (WordId w = 0; w < g.node_count(); ++w) measures.push_back(node_weight(g, w, kind));
      std::size_t sum = 0;
      for (const auto& [k, c] : d.histogram) sum += c;
      ASSERT_EQ(sum, g.node_count());
      double prev = 1.0;
      for (const auto& p : d.ccdf) {
        ASSERT_NEAR(p.value, test::brute_ccdf(measures, p.k), 1e-15);
        ASSERT_LE(p.value, prev);
        ASSERT_GE(p.value, 0.0);
        prev = p.value;
      }
      ASSERT_EQ(d.ccdf.back().value, 0.0);
    }
  }
}

TEST(FitPowerLaw, RecoversPlantedExponents) {
  struct Case {
    std::size_t base, ratio;
    double slope;
  };
  for (const auto& c : {Case{2, 4, -2.0}, Case{4, 8, -1.5}, Case{2, 8, -3.0}}) {
    const auto measures = test::planted_power_law(c.base, c.ratio, 6);
    const auto d = distribution_of(measures, WeightKind::degree);
    const auto fit = fit_power_law(d, 1);
    EXPECT_NEAR(fit.exponent_ls, c.slope, 1e-9);
    EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
    EXPECT_EQ(fit.points, 6u);
    EXPECT_GT(fit.exponent_mle, 1.0);
  }
}

TEST(FitPowerLaw, ExactInverseSquareCcdf) {
  // CCDF(k) = k^-2 up to a constant at k in {1, 2, 4, 8, 16, 32}
  const auto d = distribution_of(test::planted_power_law(2, 4, 6), WeightKind::degree);
  for (const auto& p : d.ccdf) {
    if (p.value > 0) EXPECT_NEAR(p.value * static_cast<double>(p.k * p.k), 0.5, 1e-15);
  }
  EXPECT_NEAR(fit_power_law(d, 1).exponent_ls, -2.0, 0.01);
}

TEST(FitPowerLaw, MleMatchesClosedForm) {
  const std::vector<std::size_t> measures{1, 2, 3, 4, 5, 6, 8, 10, 1, 1, 2};
  const auto d = distribution_of(measures, WeightKind::strength);
  const auto fit = fit_power_law(d, 2);
  double s = 0;
  std::size_t n = 0;
  for (auto m : measures) {
    if (m < 2) continue;
    s += std::log(m / 2.0);
    ++n;
  }
  EXPECT_NEAR(fit.exponent_mle, 1.0 + n / s, 1e-12);
  EXPECT_EQ(fit.tail_nodes, n);
}

// Geometric degrees (the random-series HVG law) are straight on log-linear
// axes, not log-log, so their log-log fit is visibly worse.
TEST(FitPowerLaw, GeometricNegativeControl) {
  std::mt19937_64 rng(3);
  std::geometric_distribution<std::size_t> geo(1.0 / 3.0);
  std::vector<std::size_t> geometric(200000);
  for (auto& k : geometric) k = 2 + geo(rng);
  const auto geo_fit = fit_power_law(distribution_of(geometric, WeightKind::degree), 2);
  const auto pl_fit = fit_power_law(distribution_of(test::planted_power_law(2, 4, 8), WeightKind::degree), 2);
  EXPECT_LT(geo_fit.r_squared, pl_fit.r_squared - 0.05);
}

TEST(FitPowerLaw, InsufficientPoints) {
  const std::vector<std::size_t> flat(50, 7);
  try {
    fit_power_law(distribution_of(flat, WeightKind::degree), 1);
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("insufficient points (0"), std::string::npos);
  }
  EXPECT_THROW(fit_power_law(distribution_of(flat, WeightKind::degree), 0), ConfigError);
}

TEST(Zipf, RankFrequency) {
  const auto z = zipf_rank_frequency(Document::from_words({"A", "A", "B"}));
  ASSERT_EQ(z.size(), 2u);
  EXPECT_EQ(z[0].rank, 1u);
  EXPECT_EQ(z[0].form, "A");
  EXPECT_EQ(z[0].weight, 2u);
  EXPECT_EQ(z[1].rank, 2u);
  EXPECT_EQ(z[1].weight, 1u);

  const auto tie = zipf_rank_frequency(Document::from_words({"B", "A"}));
  EXPECT_EQ(words_of(tie), (Words{"A", "B"}));
  EXPECT_THROW(zipf_rank_frequency(Document{}), DataError);
}

TEST(Zipf, SlopeOfExactZipfTable) {
  std::vector<RankedWord> table;
  for (std::size_t r = 1; r <= 2000; ++r) table.push_back({r, 0, "", static_cast<std::size_t>(1e6 / r)});
  EXPECT_NEAR(zipf_slope(table, 10, 1000).slope, -1.0, 1e-3);
}

TEST(TopN, ExamplesAndTieBreak) {
  const auto g = simple_adjacency_network(Document::from_words({"A", "B", "A", "C"}));
  EXPECT_EQ(words_of(top_n(g, 2, WeightKind::degree)), (Words{"A", "B"}));
  EXPECT_EQ(words_of(top_n(g, 10, WeightKind::degree)), (Words{"A", "B", "C"}));
  EXPECT_EQ(words_of(top_n(g, 1, WeightKind::frequency)), (Words{"A"}));
  const auto tied = simple_adjacency_network(Document::from_words({"Z", "Y", "X", "Z", "X"}));
  EXPECT_EQ(top_n(tied, 1, WeightKind::frequency).front().form, "X");
  EXPECT_THROW(top_n(g, 0, WeightKind::degree), ConfigError);
}

TEST(TopN, PrefixProperty) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto words = test::random_words(rng, 120, 25);
    const auto doc = Document::from_words(std::span<const std::string>(words));
    const auto g = compactify(build_hvg(value_series(doc, Scheme::sigma)), doc);
    for (auto kind : {WeightKind::degree, WeightKind::strength, WeightKind::frequency}) {
      const auto full = top_n(g, g.node_count() + 1, kind);
      for (std::size_t n = 1; n <= g.node_count(); ++n) {
        const auto part = top_n(g, n, kind);
        ASSERT_TRUE(std::equal(part.begin(), part.end(), full.begin()));
      }
    }
  }
}

TEST(TopN, OrderInvariantUnderMonotoneWeightMap) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<std::size_t> w(0, 30);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<RankedWord> a, b;
    for (WordId i = 0; i < 40; ++i) {
      const auto x = w(rng);
      a.push_back({0, i, "W" + std::to_string(i), x});
      b.push_back({0, i, "W" + std::to_string(i), x * x * 3 + 11});
    }
    const auto ra = detail::rank_prefix(a, 40), rb = detail::rank_prefix(b, 40);
    for (std::size_t i = 0; i < ra.size(); ++i) ASSERT_EQ(ra[i].word, rb[i].word);
  }
}

TEST(KeywordReport, SetAlgebra) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const auto words = test::random_words(rng, 300, 40);
    const auto doc = Document::from_words(std::span<const std::string>(words));
    const auto chvg = compactify(build_hvg(value_series(doc, Scheme::sigma)), doc);
    const auto adj = simple_adjacency_network(doc);
    const std::size_t n = 1 + trial % 15;
    const auto r = keyword_report(chvg, adj, n);
    ASSERT_EQ(r.lambda.size(), std::min(n, chvg.node_count()));
    ASSERT_EQ(r.psi.size(), std::min(n, adj.node_count()));
    std::set<WordId> lambda, psi, omega;
    for (const auto& w : r.lambda) lambda.insert(w.word);
    for (const auto& w : r.psi) psi.insert(w.word);
    for (const auto& w : r.omega) omega.insert(w.word);
    std::size_t common = 0;
    for (auto w : lambda) common += psi.count(w);
    for (auto w : omega) {
      ASSERT_TRUE(lambda.contains(w));
      ASSERT_FALSE(psi.contains(w));
    }
    ASSERT_EQ(omega.size(), lambda.size() - common);
    // omega keeps lambda order
    std::size_t last = 0;
    for (const auto& w : r.omega) {
      ASSERT_GT(w.rank, last);
      last = w.rank;
    }
  }
}

TEST(KeywordReport, IdenticalListsGiveEmptyOmega) {
  const auto doc = tokenize("one two three two one four two");
  const auto chvg = compactify(build_hvg(value_series(doc, Scheme::sigma)), doc);
  const auto adj = simple_adjacency_network(doc);
  const auto r = keyword_report(chvg, adj, 3, {WeightKind::frequency, WeightKind::frequency});
  EXPECT_EQ(r.lambda, r.psi);
  EXPECT_TRUE(r.omega.empty());
}

TEST(KeywordReport, Preconditions) {
  const auto d1 = Document::from_words({"A", "B", "A"});
  const auto d2 = Document::from_words({"A", "B", "B"});
  const auto c1 = compactify(build_hvg(value_series(d1, Scheme::sigma)), d1);
  const auto a1 = simple_adjacency_network(d1);
  const auto a2 = simple_adjacency_network(d2);
  EXPECT_THROW(keyword_report(c1, a2, 5), DataError);
  EXPECT_THROW(keyword_report(a1, a1, 5), ConfigError);
  EXPECT_THROW(keyword_report(c1, c1, 5), ConfigError);
  EXPECT_THROW(keyword_report(c1, a1, 0), ConfigError);
  const auto r = keyword_report(c1, a1, 5);
  EXPECT_EQ(r.lambda_kind, WeightKind::strength);
  EXPECT_EQ(r.psi_kind, WeightKind::degree);
  EXPECT_EQ(r.tokenizer, TokenizerConfig{});
}
