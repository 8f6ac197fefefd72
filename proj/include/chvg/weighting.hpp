#pragma once

// Per-word occurrence statistics and the per-position value series that
// the visibility graph is built over.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chvg/corpus.hpp"
#include "chvg/error.hpp"

namespace chvg {

using Position = std::size_t;

/// Positions of every word, grouped by word id. positions(w) is strictly
/// increasing; the lists partition 0..N-1.
class OccurrenceIndex {
 public:
  OccurrenceIndex() = default;
  explicit OccurrenceIndex(std::vector<std::vector<Position>> lists) : lists_(std::move(lists)) {}

  std::span<const Position> positions(WordId w) const {
    if (w >= lists_.size()) throw DataError("occurrence index: unknown word id " + std::to_string(w));
    return lists_[w];
  }
  std::size_t count(WordId w) const { return positions(w).size(); }
  std::size_t word_count() const noexcept { return lists_.size(); }
  bool empty() const noexcept { return lists_.empty(); }

 private:
  std::vector<std::vector<Position>> lists_;
};

inline OccurrenceIndex occurrence_index(const Document& doc) {
  std::vector<std::vector<Position>> lists(doc.lexicon().size());
  const auto tokens = doc.tokens();
  for (Position n = 0; n < tokens.size(); ++n) lists[tokens[n]].push_back(n);
  return OccurrenceIndex(std::move(lists));
}

/// Differences between consecutive occurrences. Gaps from the text
/// boundaries are not included, so K positions give K-1 gaps.
inline std::vector<std::size_t> gap_series(std::span<const Position> positions) {
  std::vector<std::size_t> gaps;
  if (positions.size() < 2) return gaps;
  gaps.reserve(positions.size() - 1);
  for (std::size_t k = 1; k < positions.size(); ++k) {
    if (positions[k] <= positions[k - 1]) {
      throw DataError("gap series: positions not strictly increasing at index " + std::to_string(k));
    }
    gaps.push_back(positions[k] - positions[k - 1]);
  }
  return gaps;
}

struct GapStats {
  WordId word = 0;
  std::size_t occurrences = 0;  // K
  std::vector<std::size_t> gaps;
  double mean_gap = 0.0;
  double mean_sq_gap = 0.0;
  double sigma = 0.0;
};

namespace detail {

// Coefficient of variation of the gaps with population moments:
//   sqrt(<g^2> - <g>^2) / <g>  ==  sqrt(m*S2 - S1^2) / S1
// for m gaps with sum S1 and sum of squares S2. The radicand is an exact
// integer, so it is never negative and arithmetic progressions give 0.
inline double sigma_from_gaps(std::span<const std::size_t> gaps) {
  if (gaps.empty()) return 0.0;
  unsigned __int128 s1 = 0, s2 = 0;
  for (auto g : gaps) {
    s1 += g;
    s2 += static_cast<unsigned __int128>(g) * g;
  }
  const unsigned __int128 m = gaps.size();
  const unsigned __int128 lhs = m * s2;
  const unsigned __int128 rhs = s1 * s1;
  if (lhs <= rhs) return 0.0;
  return std::sqrt(static_cast<long double>(lhs - rhs)) / static_cast<long double>(s1);
}

}  // namespace detail

/// Burstiness estimator of a word from its occurrence positions. Words with
/// fewer than two occurrences have no gaps and get 0.
inline double sigma(std::span<const Position> positions) {
  const auto gaps = gap_series(positions);
  return detail::sigma_from_gaps(gaps);
}

inline GapStats gap_stats(WordId word, std::span<const Position> positions) {
  GapStats st;
  st.word = word;
  st.occurrences = positions.size();
  st.gaps = gap_series(positions);
  if (!st.gaps.empty()) {
    long double s1 = 0, s2 = 0;
    for (auto g : st.gaps) {
      s1 += g;
      s2 += static_cast<long double>(g) * g;
    }
    st.mean_gap = static_cast<double>(s1 / st.gaps.size());
    st.mean_sq_gap = static_cast<double>(s2 / st.gaps.size());
  }
  st.sigma = detail::sigma_from_gaps(st.gaps);
  return st;
}

/// Gap statistics for every word of the document, indexed by word id.
inline std::vector<GapStats> all_gap_stats(const Document& doc, const OccurrenceIndex& index) {
  std::vector<GapStats> out;
  out.reserve(doc.lexicon().size());
  for (WordId w = 0; w < doc.lexicon().size(); ++w) out.push_back(gap_stats(w, index.positions(w)));
  return out;
}

inline std::vector<GapStats> all_gap_stats(const Document& doc) { return all_gap_stats(doc, occurrence_index(doc)); }

enum class Scheme { sigma, frequency, word_length };

inline constexpr std::string_view kValidSchemes = "sigma, frequency, word_length";

inline std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::sigma: return "sigma";
    case Scheme::frequency: return "frequency";
    case Scheme::word_length: return "word_length";
  }
  return "?";
}

inline Scheme parse_scheme(std::string_view name) {
  if (name == "sigma") return Scheme::sigma;
  if (name == "frequency") return Scheme::frequency;
  if (name == "word_length") return Scheme::word_length;
  throw ConfigError("unknown value scheme '" + std::string(name) + "' (valid: " + std::string(kValidSchemes) + ")");
}

struct ValueSeries {
  std::vector<double> values;
  Scheme scheme = Scheme::sigma;

  std::size_t size() const noexcept { return values.size(); }
};

inline ValueSeries value_series(const Document& doc, Scheme scheme) {
  const auto& lex = doc.lexicon();
  std::vector<double> per_word(lex.size(), 0.0);
  switch (scheme) {
    case Scheme::sigma: {
      const auto index = occurrence_index(doc);
      for (WordId w = 0; w < lex.size(); ++w) per_word[w] = sigma(index.positions(w));
      break;
    }
    case Scheme::frequency:
      for (WordId id : doc.tokens()) per_word[id] += 1.0;
      break;
    case Scheme::word_length:
      for (WordId w = 0; w < lex.size(); ++w) {
        const auto& f = lex.form(w);
        // code points, not bytes
        per_word[w] = static_cast<double>(
            std::count_if(f.begin(), f.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
      }
      break;
  }
  ValueSeries series;
  series.scheme = scheme;
  series.values.reserve(doc.size());
  for (WordId id : doc.tokens()) series.values.push_back(per_word[id]);
  return series;
}

inline ValueSeries value_series(const Document& doc, std::string_view scheme) {
  return value_series(doc, parse_scheme(scheme));
}

}  // namespace chvg
