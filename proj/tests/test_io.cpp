#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "chvg/io.hpp"

using namespace chvg;

namespace {

const OutputMeta kMeta{"test", Json{{"k", 1}}};

std::vector<std::string> body_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.starts_with("#")) out.push_back(line);
  }
  return out;
}

}  // namespace

TEST(Export, HeaderCarriesVersionAndConfig) {
  std::ostringstream os;
  write_hvg_edge_list(os, build_hvg(std::vector<double>{1, 2}), kMeta);
  const auto s = os.str();
  EXPECT_TRUE(s.starts_with(std::string("# chvg ") + kVersion + " test\n# config: {\"k\":1}\n"));
}

TEST(Export, HvgEdgeListSorted) {
  std::ostringstream os;
  write_hvg_edge_list(os, build_hvg(std::vector<double>{1, 2, 1, 3}), kMeta);
  EXPECT_EQ(body_lines(os.str()), (std::vector<std::string>{"0 1", "1 2", "1 3", "2 3"}));
}

TEST(Export, WordEdgeListAndNodes) {
  const auto g = simple_adjacency_network(Document::from_words({"A", "B", "A", "C"}));
  std::ostringstream edges, nodes;
  write_word_edge_list(edges, g, kMeta);
  write_node_table(nodes, g, kMeta);
  EXPECT_EQ(body_lines(edges.str()), (std::vector<std::string>{"A\tB", "A\tC"}));
  EXPECT_EQ(body_lines(nodes.str()),
            (std::vector<std::string>{"word\tdegree\tstrength\tfrequency", "A\t2\t3\t2", "B\t1\t2\t1", "C\t1\t1\t1"}));
}

TEST(Export, GapStatsCsv) {
  const auto doc = Document::from_words({"X", "Y", "Y", "X", "Z", "Z", "Z", "X"});
  const auto stats = all_gap_stats(doc);
  std::ostringstream os;
  write_gap_stats_csv(os, doc, stats, kMeta);
  // X at 0,3,7: gaps 3,4 -> mean 3.5, sigma = sqrt(2*25 - 49)/7
  const auto lines = body_lines(os.str());
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], "word,K,mean_gap,sigma");
  EXPECT_EQ(lines[1], "X,3,3.5," + format_double(1.0 / 7.0));
  EXPECT_EQ(lines[2], "Y,2,1,0");
  EXPECT_EQ(lines[3], "Z,3,1,0");
}

TEST(Export, DotAndGraphmlEscape) {
  const auto g = simple_adjacency_network(Document::from_words({"DON'T", "A\"B", "X&Y"}));
  std::ostringstream dot, xml;
  write_dot(dot, g, kMeta);
  write_graphml(xml, g, kMeta);
  EXPECT_NE(dot.str().find("\"A\\\"B\" [degree=2, strength=2, frequency=1];"), std::string::npos);
  EXPECT_NE(dot.str().find("\"DON'T\" -- \"A\\\"B\";"), std::string::npos);
  EXPECT_NE(xml.str().find("<data key=\"label\">X&amp;Y</data>"), std::string::npos);
  EXPECT_NE(xml.str().find("<data key=\"label\">DON&apos;T</data>"), std::string::npos);
  EXPECT_NE(xml.str().find("<edge source=\"n0\" target=\"n1\"/>"), std::string::npos);
  EXPECT_NE(xml.str().find("&quot;version&quot;"), std::string::npos);
}

TEST(Export, CcdfTsvRawValues) {
  const auto g = simple_adjacency_network(Document::from_words({"A", "B", "C"}));
  std::ostringstream os;
  write_ccdf_tsv(os, degree_distribution(g, WeightKind::degree), kMeta);
  EXPECT_EQ(body_lines(os.str()), (std::vector<std::string>{"k\tccdf", "1\t" + format_double(1.0 / 3.0), "2\t0"}));
}

TEST(Export, ReportJsonAndCsv) {
  const auto doc = tokenize("a b a c a b d e a f");
  const auto chvg = compactify(build_hvg(value_series(doc, Scheme::frequency)), doc);
  const auto adj = simple_adjacency_network(doc);
  const auto r = keyword_report(chvg, adj, 3);
  const auto j = to_json(r, kMeta);
  EXPECT_EQ(j["meta"]["version"], kVersion);
  EXPECT_EQ(j["n"], 3);
  EXPECT_EQ(j["lambda_weight"], "strength");
  EXPECT_EQ(j["psi_weight"], "degree");
  EXPECT_EQ(j["tokenizer"]["case_fold"], true);
  EXPECT_EQ(j["lambda"].size(), 3u);
  EXPECT_EQ(j["omega"].size(), r.omega.size());

  std::ostringstream os;
  write_report_csv(os, r, kMeta);
  const auto lines = body_lines(os.str());
  ASSERT_EQ(lines.size(), 1 + r.lambda.size() + r.psi.size());
  EXPECT_EQ(lines[0], "list,rank,word,weight,in_lambda,in_psi,in_omega");
  EXPECT_TRUE(lines[1].starts_with("lambda,1,A,"));
}

TEST(Export, FormatDoubleShortest) {
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(0.0), "0");
  EXPECT_EQ(format_double(0.1), "0.1");
}
