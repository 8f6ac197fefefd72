#pragma once

// File exports. Every writer starts with a provenance header: '#' comment
// lines for the text formats, a comment block for DOT and GraphML, and a
// "meta" object for JSON.

#include <array>
#include <charconv>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "chvg/analysis.hpp"
#include "chvg/corpus.hpp"
#include "chvg/graph.hpp"
#include "chvg/hvg.hpp"
#include "chvg/version.hpp"
#include "chvg/weighting.hpp"

namespace chvg {

using Json = nlohmann::ordered_json;

inline Json to_json(const TokenizerConfig& c) {
  return Json{{"case_fold", c.case_fold},
              {"keep_inner_apostrophe", c.keep_inner_apostrophe},
              {"keep_inner_hyphen", c.keep_inner_hyphen},
              {"min_token_length", c.min_token_length},
              {"drop_numeric_tokens", c.drop_numeric_tokens}};
}

/// Provenance attached to every output: producing command and the full
/// configuration echo.
struct OutputMeta {
  std::string command;
  Json config = Json::object();

  Json to_json() const {
    return Json{{"tool", "chvg"}, {"version", kVersion}, {"command", command}, {"config", config}};
  }
};

/// Shortest round-trip decimal form; identical on every run.
inline std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), end);
}

namespace detail {

inline void comment_header(std::ostream& os, const OutputMeta& meta, std::string_view prefix = "# ") {
  os << prefix << "chvg " << kVersion << " " << meta.command << '\n';
  os << prefix << "config: " << meta.config.dump() << '\n';
}

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

/// Columns: word, K, mean_gap, sigma. One row per word, in word-id order.
inline void write_gap_stats_csv(std::ostream& os, const Document& doc, std::span<const GapStats> stats,
                                const OutputMeta& meta) {
  detail::comment_header(os, meta);
  os << "# hapax convention: words with K <= 1 have no gaps and sigma = 0\n";
  os << "word,K,mean_gap,sigma\n";
  for (const auto& s : stats) {
    os << detail::csv_field(doc.lexicon().form(s.word)) << ',' << s.occurrences << ',' << format_double(s.mean_gap)
       << ',' << format_double(s.sigma) << '\n';
  }
}

/// One "i j" pair per line, 0-indexed, i < j, sorted.
inline void write_hvg_edge_list(std::ostream& os, const OccurrenceGraph& og, const OutputMeta& meta) {
  detail::comment_header(os, meta);
  for (const auto& [i, j] : og.edges()) os << i << ' ' << j << '\n';
}

/// One "word<TAB>word" pair per line, in word-id edge order.
inline void write_word_edge_list(std::ostream& os, const WordGraph& g, const OutputMeta& meta) {
  detail::comment_header(os, meta);
  for (const auto& [a, b] : g.edges()) os << g.form(a) << '\t' << g.form(b) << '\n';
}

inline void write_node_table(std::ostream& os, const WordGraph& g, const OutputMeta& meta) {
  detail::comment_header(os, meta);
  os << "word\tdegree\tstrength\tfrequency\n";
  for (WordId w = 0; w < g.node_count(); ++w) {
    const auto& r = g.node(w);
    os << g.form(w) << '\t' << r.degree << '\t' << r.strength << '\t' << r.frequency << '\n';
  }
}

inline void write_dot(std::ostream& os, const WordGraph& g, const OutputMeta& meta) {
  detail::comment_header(os, meta, "// ");
  os << "graph " << to_string(g.kind()) << " {\n";
  for (WordId w = 0; w < g.node_count(); ++w) {
    const auto& r = g.node(w);
    os << "  " << detail::dot_quote(g.form(w)) << " [degree=" << r.degree << ", strength=" << r.strength
       << ", frequency=" << r.frequency << "];\n";
  }
  for (const auto& [a, b] : g.edges()) {
    os << "  " << detail::dot_quote(g.form(a)) << " -- " << detail::dot_quote(g.form(b)) << ";\n";
  }
  os << "}\n";
}

inline void write_graphml(std::ostream& os, const WordGraph& g, const OutputMeta& meta) {
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<!-- chvg " << kVersion << " " << meta.command << " -->\n";
  os << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
  os << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n";
  os << "  <key id=\"degree\" for=\"node\" attr.name=\"degree\" attr.type=\"long\"/>\n";
  os << "  <key id=\"strength\" for=\"node\" attr.name=\"strength\" attr.type=\"long\"/>\n";
  os << "  <key id=\"frequency\" for=\"node\" attr.name=\"frequency\" attr.type=\"long\"/>\n";
  os << "  <key id=\"config\" for=\"graph\" attr.name=\"config\" attr.type=\"string\"/>\n";
  os << "  <graph id=\"" << to_string(g.kind()) << "\" edgedefault=\"undirected\">\n";
  os << "    <data key=\"config\">" << detail::xml_escape(meta.to_json().dump()) << "</data>\n";
  for (WordId w = 0; w < g.node_count(); ++w) {
    const auto& r = g.node(w);
    os << "    <node id=\"n" << w << "\"><data key=\"label\">" << detail::xml_escape(g.form(w))
       << "</data><data key=\"degree\">" << r.degree << "</data><data key=\"strength\">" << r.strength
       << "</data><data key=\"frequency\">" << r.frequency << "</data></node>\n";
  }
  for (const auto& [a, b] : g.edges()) os << "    <edge source=\"n" << a << "\" target=\"n" << b << "\"/>\n";
  os << "  </graph>\n</graphml>\n";
}

/// Two columns, k and 1 - F(k), raw values (log axes are the plotter's job).
inline void write_ccdf_tsv(std::ostream& os, const DegreeDistribution& d, const OutputMeta& meta) {
  detail::comment_header(os, meta);
  os << "# weight_kind: " << to_string(d.weight_kind) << ", nodes: " << d.n_nodes << '\n';
  os << "k\tccdf\n";
  for (const auto& p : d.ccdf) os << p.k << '\t' << format_double(p.value) << '\n';
}

inline void write_zipf_tsv(std::ostream& os, std::span<const RankedWord> table, const OutputMeta& meta) {
  detail::comment_header(os, meta);
  os << "rank\tword\tfrequency\n";
  for (const auto& r : table) os << r.rank << '\t' << r.form << '\t' << r.weight << '\n';
}

inline Json to_json(const PowerLawFit& f) {
  return Json{{"k_min", f.k_min},
              {"exponent_ls", f.exponent_ls},
              {"intercept_ls", f.intercept_ls},
              {"r_squared", f.r_squared},
              {"exponent_mle", f.exponent_mle},
              {"points", f.points},
              {"tail_nodes", f.tail_nodes}};
}

inline Json to_json(std::span<const RankedWord> words) {
  Json arr = Json::array();
  for (const auto& w : words) arr.push_back(Json{{"rank", w.rank}, {"word", w.form}, {"weight", w.weight}});
  return arr;
}

inline Json to_json(const KeywordReport& r, const OutputMeta& meta) {
  return Json{{"meta", meta.to_json()},
              {"source", r.source_name},
              {"n", r.n},
              {"lambda_weight", to_string(r.lambda_kind)},
              {"psi_weight", to_string(r.psi_kind)},
              {"tokenizer", to_json(r.tokenizer)},
              {"lambda", to_json(r.lambda)},
              {"psi", to_json(r.psi)},
              {"omega", to_json(r.omega)}};
}

/// Columns: list, rank, word, weight, in_lambda, in_psi, in_omega. The CHVG
/// list comes first, then the baseline list, each in rank order.
inline void write_report_csv(std::ostream& os, const KeywordReport& r, const OutputMeta& meta) {
  detail::comment_header(os, meta);
  os << "# lambda_weight: " << to_string(r.lambda_kind) << ", psi_weight: " << to_string(r.psi_kind) << ", n: " << r.n
     << '\n';
  os << "list,rank,word,weight,in_lambda,in_psi,in_omega\n";
  std::unordered_set<WordId> lambda_ids, psi_ids, omega_ids;
  for (const auto& w : r.lambda) lambda_ids.insert(w.word);
  for (const auto& w : r.psi) psi_ids.insert(w.word);
  for (const auto& w : r.omega) omega_ids.insert(w.word);
  auto row = [&](std::string_view list, const RankedWord& w) {
    os << list << ',' << w.rank << ',' << detail::csv_field(w.form) << ',' << w.weight << ','
       << lambda_ids.contains(w.word) << ',' << psi_ids.contains(w.word) << ',' << omega_ids.contains(w.word) << '\n';
  };
  for (const auto& w : r.lambda) row("lambda", w);
  for (const auto& w : r.psi) row("psi", w);
}

}  // namespace chvg
