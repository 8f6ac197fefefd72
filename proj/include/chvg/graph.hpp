#pragma once

// Word-level graphs: stage-two compactification of an occurrence graph
// (CHVG) and the adjacent-words baseline network.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chvg/corpus.hpp"
#include "chvg/error.hpp"
#include "chvg/hvg.hpp"

namespace chvg {

enum class GraphKind { chvg, adjacency };

inline std::string_view to_string(GraphKind k) { return k == GraphKind::chvg ? "chvg" : "adjacency"; }

enum class WeightKind { degree, strength, frequency };

inline std::string_view to_string(WeightKind k) {
  switch (k) {
    case WeightKind::degree: return "degree";
    case WeightKind::strength: return "strength";
    case WeightKind::frequency: return "frequency";
  }
  return "?";
}

inline WeightKind parse_weight_kind(std::string_view name) {
  if (name == "degree") return WeightKind::degree;
  if (name == "strength") return WeightKind::strength;
  if (name == "frequency") return WeightKind::frequency;
  throw ConfigError("unknown weight kind '" + std::string(name) + "' (valid: degree, strength, frequency)");
}

struct NodeRecord {
  std::size_t degree = 0;     // distinct neighbors
  std::size_t strength = 0;   // sum of stage-one degrees over the word's occurrences
  std::size_t frequency = 0;  // K
};

using WordEdge = std::pair<WordId, WordId>;  // first < second

/// Simple undirected graph over the words of one document. Node ids are the
/// document's word ids; every lexicon entry occurs in the document, so every
/// id is a node.
class WordGraph {
 public:
  WordGraph(GraphKind kind, const Document& doc, std::vector<NodeRecord> nodes, std::vector<WordEdge> sorted_edges,
            std::size_t stage_one_edges)
      : kind_(kind),
        lexicon_(doc.shared_lexicon()),
        config_(doc.config()),
        source_name_(doc.source_name()),
        fingerprint_(doc.fingerprint()),
        nodes_(std::move(nodes)),
        edges_(std::move(sorted_edges)),
        stage_one_edges_(stage_one_edges) {
    offsets_.assign(nodes_.size() + 1, 0);
    for (const auto& [a, b] : edges_) {
      ++offsets_[a + 1];
      ++offsets_[b + 1];
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) offsets_[i + 1] += offsets_[i];
    adjacency_.resize(edges_.size() * 2);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [a, b] : edges_) {
      adjacency_[fill[a]++] = b;
      adjacency_[fill[b]++] = a;
    }
    check_invariants();
  }

  GraphKind kind() const noexcept { return kind_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return nodes_.empty(); }
  std::span<const WordEdge> edges() const noexcept { return edges_; }
  std::span<const NodeRecord> nodes() const noexcept { return nodes_; }
  /// Edge count of the stage-one graph this was compactified from.
  std::size_t stage_one_edge_count() const noexcept { return stage_one_edges_; }

  const NodeRecord& node(WordId w) const {
    if (w >= nodes_.size()) throw DataError("word graph: unknown word id " + std::to_string(w));
    return nodes_[w];
  }

  std::span<const WordId> neighbors(WordId w) const {
    node(w);
    return std::span<const WordId>(adjacency_).subspan(offsets_[w], offsets_[w + 1] - offsets_[w]);
  }

  bool has_edge(WordId a, WordId b) const {
    if (a > b) std::swap(a, b);
    return std::binary_search(edges_.begin(), edges_.end(), WordEdge{a, b});
  }

  const Lexicon& lexicon() const noexcept { return *lexicon_; }
  const std::string& form(WordId w) const { return lexicon_->form(w); }
  std::optional<WordId> find(std::string_view form) const { return lexicon_->find(form); }
  const TokenizerConfig& tokenizer_config() const noexcept { return config_; }
  const std::string& source_name() const noexcept { return source_name_; }
  std::uint64_t source_fingerprint() const noexcept { return fingerprint_; }

 private:
  void check_invariants() const {
    const std::size_t n = nodes_.size();
    for (std::size_t i = 0; i + 1 < edges_.size(); ++i) {
      if (!(edges_[i] < edges_[i + 1])) throw DataError("word graph: edges not sorted/unique");
    }
    for (const auto& [a, b] : edges_) {
      if (a >= b || b >= n) throw DataError("word graph: self-loop or bad edge");
    }
    for (std::size_t w = 0; w < n; ++w) {
      const auto& r = nodes_[w];
      if (r.degree != offsets_[w + 1] - offsets_[w]) throw DataError("word graph: degree mismatch");
      if (r.degree > r.strength) throw DataError("word graph: degree exceeds strength for " + lexicon_->form(w));
      if (n > 0 && r.degree > n - 1) throw DataError("word graph: degree exceeds node count");
    }
  }

  GraphKind kind_;
  std::shared_ptr<const Lexicon> lexicon_;
  TokenizerConfig config_;
  std::string source_name_;
  std::uint64_t fingerprint_;
  std::vector<NodeRecord> nodes_;
  std::vector<WordEdge> edges_;
  std::size_t stage_one_edges_;
  std::vector<std::size_t> offsets_;
  std::vector<WordId> adjacency_;
};

namespace detail {

inline WordGraph compactify_as(GraphKind kind, const OccurrenceGraph& og, const Document& doc) {
  if (og.node_count() != doc.size()) {
    throw DataError("compactify: occurrence graph has " + std::to_string(og.node_count()) +
                    " nodes but document has " + std::to_string(doc.size()) + " tokens");
  }
  const auto tokens = doc.tokens();
  std::vector<NodeRecord> nodes(doc.lexicon().size());
  for (WordId id : tokens) ++nodes[id].frequency;

  std::vector<WordEdge> edges;
  edges.reserve(og.edge_count());
  for (const auto& [i, j] : og.edges()) {
    const WordId u = tokens[i];
    const WordId v = tokens[j];
    ++nodes[u].strength;
    ++nodes[v].strength;
    if (u != v) edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (const auto& [a, b] : edges) {
    ++nodes[a].degree;
    ++nodes[b].degree;
  }
  return WordGraph(kind, doc, std::move(nodes), std::move(edges), og.edge_count());
}

}  // namespace detail

/// Merges all occurrence nodes of each word into one node, drops self-pairs
/// and duplicate edges. Strength is accumulated before either removal.
inline WordGraph compactify(const OccurrenceGraph& og, const Document& doc) {
  return detail::compactify_as(GraphKind::chvg, og, doc);
}

/// Path over the token positions, then compactified the same way.
inline WordGraph simple_adjacency_network(const Document& doc) {
  std::vector<Edge> path;
  if (doc.size() > 1) path.reserve(doc.size() - 1);
  for (std::size_t i = 0; i + 1 < doc.size(); ++i) {
    path.emplace_back(static_cast<NodeIndex>(i), static_cast<NodeIndex>(i + 1));
  }
  return detail::compactify_as(GraphKind::adjacency, OccurrenceGraph(doc.size(), std::move(path)), doc);
}

inline std::size_t node_weight(const WordGraph& g, WordId w, WeightKind kind) {
  const auto& r = g.node(w);
  switch (kind) {
    case WeightKind::degree: return r.degree;
    case WeightKind::strength: return r.strength;
    case WeightKind::frequency: return r.frequency;
  }
  throw ConfigError("unknown weight kind");
}

inline std::size_t node_weight(const WordGraph& g, std::string_view word, std::string_view kind) {
  const auto id = g.find(word);
  if (!id) throw DataError("word '" + std::string(word) + "' is not a node of the graph");
  return node_weight(g, *id, parse_weight_kind(kind));
}

}  // namespace chvg
