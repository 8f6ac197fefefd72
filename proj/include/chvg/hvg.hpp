#pragma once

// Horizontal visibility graph over a numeric series. Positions i < j are
// linked iff every value strictly between them is strictly lower than both
// endpoints. Equal heights therefore block each other.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chvg/error.hpp"
#include "chvg/weighting.hpp"

namespace chvg {

using NodeIndex = std::uint32_t;
using Edge = std::pair<NodeIndex, NodeIndex>;  // first < second

/// Stage-one graph, node i <-> position i. Edges are kept sorted by
/// (first, second) and each node's neighbor list is sorted ascending.
class OccurrenceGraph {
 public:
  OccurrenceGraph() = default;

  /// Edges must be sorted, unique, with first < second < node_count.
  OccurrenceGraph(std::size_t node_count, std::vector<Edge> sorted_edges)
      : node_count_(node_count), edges_(std::move(sorted_edges)) {
    offsets_.assign(node_count_ + 1, 0);
    for (const auto& [a, b] : edges_) {
      ++offsets_[a + 1];
      ++offsets_[b + 1];
    }
    for (std::size_t i = 0; i < node_count_; ++i) offsets_[i + 1] += offsets_[i];
    neighbors_.resize(edges_.size() * 2);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    // Sorted edge order makes every neighbor list come out ascending:
    // all (h, i) with h < i precede all (i, j).
    for (const auto& [a, b] : edges_) {
      neighbors_[fill[a]++] = b;
      neighbors_[fill[b]++] = a;
    }
  }

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::span<const NodeIndex> neighbors(std::size_t node) const {
    if (node >= node_count_) throw DataError("occurrence graph: node " + std::to_string(node) + " out of range");
    return std::span<const NodeIndex>(neighbors_).subspan(offsets_[node], offsets_[node + 1] - offsets_[node]);
  }
  std::size_t degree(std::size_t node) const { return neighbors(node).size(); }

  bool has_edge(NodeIndex a, NodeIndex b) const {
    if (a > b) std::swap(a, b);
    return std::binary_search(edges_.begin(), edges_.end(), Edge{a, b});
  }

  friend bool operator==(const OccurrenceGraph& x, const OccurrenceGraph& y) {
    return x.node_count_ == y.node_count_ && x.edges_ == y.edges_;
  }

 private:
  std::size_t node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeIndex> neighbors_;
};

namespace detail {

// Stable counting sort of edges by first endpoint. Edges produced by the
// sweep arrive with non-decreasing second endpoint, so the result is fully
// sorted by (first, second) in O(N + E).
inline std::vector<Edge> sort_sweep_edges(std::size_t n, const std::vector<Edge>& raw) {
  std::vector<std::size_t> start(n + 1, 0);
  for (const auto& e : raw) ++start[e.first + 1];
  for (std::size_t i = 0; i < n; ++i) start[i + 1] += start[i];
  std::vector<Edge> out(raw.size());
  for (const auto& e : raw) out[start[e.first]++] = e;
  return out;
}

}  // namespace detail

/// Linear-time construction with a left-to-right monotone stack.
///
/// The stack holds the positions still visible from the right, with
/// strictly decreasing values. A new position j sees every stacked position
/// it pops (those lower than it), the first one that is equal (which it then
/// hides), and the first one that is higher (which stays). Each position is
/// pushed and popped at most once, so the sweep emits at most 2N edges.
inline OccurrenceGraph build_hvg(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<Edge> raw;
  raw.reserve(n > 0 ? 2 * n : 0);
  std::vector<NodeIndex> stack;
  for (std::size_t j = 0; j < n; ++j) {
    const double vj = values[j];
    while (!stack.empty()) {
      const NodeIndex i = stack.back();
      raw.emplace_back(i, static_cast<NodeIndex>(j));
      if (values[i] < vj) {
        stack.pop_back();
        continue;
      }
      if (values[i] == vj) stack.pop_back();
      break;
    }
    stack.push_back(static_cast<NodeIndex>(j));
  }
  return OccurrenceGraph(n, detail::sort_sweep_edges(n, raw));
}

inline OccurrenceGraph build_hvg(const ValueSeries& series) { return build_hvg(std::span<const double>(series.values)); }

inline constexpr std::size_t kDefaultOracleCap = 10'000;

/// Quadratic reference construction straight from the visibility
/// criterion. For testing and verification only.
inline OccurrenceGraph naive_hvg(std::span<const double> values, std::size_t cap = kDefaultOracleCap) {
  const std::size_t n = values.size();
  if (n > cap) {
    throw ConfigError("naive_hvg: series length " + std::to_string(n) + " exceeds oracle cap " + std::to_string(cap));
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    bool any_between = false;
    double max_between = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool visible = !any_between || (values[i] > max_between && values[j] > max_between);
      if (visible) edges.emplace_back(static_cast<NodeIndex>(i), static_cast<NodeIndex>(j));
      max_between = any_between ? std::max(max_between, values[j]) : values[j];
      any_between = true;
    }
  }
  return OccurrenceGraph(n, std::move(edges));
}

inline OccurrenceGraph naive_hvg(const ValueSeries& series, std::size_t cap = kDefaultOracleCap) {
  return naive_hvg(std::span<const double>(series.values), cap);
}

}  // namespace chvg
