#pragma once

// Text -> normalized, position-indexed token sequence.
//
// A token is a maximal run of word characters (Unicode letters, plus
// combining marks and, when numeric tokens are kept, decimal digits).
// Apostrophes and hyphens survive only between two word characters and
// only when enabled. Everything else separates tokens.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "chvg/error.hpp"

namespace chvg {

using WordId = std::uint32_t;

struct TokenizerConfig {
  bool case_fold = true;
  bool keep_inner_apostrophe = true;
  bool keep_inner_hyphen = false;
  std::size_t min_token_length = 1;
  bool drop_numeric_tokens = true;

  void validate() const {
    if (min_token_length == 0) throw ConfigError("tokenizer: min_token_length must be >= 1");
  }

  /// Stable key/value view, in declaration order. Used for config echoes.
  std::vector<std::pair<std::string, std::string>> to_key_values() const {
    auto b = [](bool v) { return std::string(v ? "true" : "false"); };
    return {{"case_fold", b(case_fold)},
            {"keep_inner_apostrophe", b(keep_inner_apostrophe)},
            {"keep_inner_hyphen", b(keep_inner_hyphen)},
            {"min_token_length", std::to_string(min_token_length)},
            {"drop_numeric_tokens", b(drop_numeric_tokens)}};
  }

  friend bool operator==(const TokenizerConfig&, const TokenizerConfig&) = default;
};

/// Bijective word-id <-> normalized surface form map. Ids are dense and
/// assigned in order of first appearance.
class Lexicon {
 public:
  WordId intern(std::string_view form) {
    auto it = ids_.find(std::string(form));
    if (it != ids_.end()) return it->second;
    auto id = static_cast<WordId>(forms_.size());
    forms_.emplace_back(form);
    ids_.emplace(forms_.back(), id);
    return id;
  }

  std::optional<WordId> find(std::string_view form) const {
    auto it = ids_.find(std::string(form));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& form(WordId id) const {
    if (id >= forms_.size()) throw DataError("lexicon: unknown word id " + std::to_string(id));
    return forms_[id];
  }

  std::size_t size() const noexcept { return forms_.size(); }
  bool empty() const noexcept { return forms_.empty(); }
  const std::vector<std::string>& forms() const noexcept { return forms_; }

 private:
  std::vector<std::string> forms_;
  std::unordered_map<std::string, WordId> ids_;
};

/// Immutable token sequence. Position n of tokens() is the n-th word of the
/// normalized text; size() is the text length N.
class Document {
 public:
  Document() : lexicon_(std::make_shared<const Lexicon>()) { fingerprint_ = compute_fingerprint(); }

  Document(std::string source_name, std::vector<WordId> tokens, Lexicon lexicon,
           TokenizerConfig config)
      : source_name_(std::move(source_name)),
        tokens_(std::move(tokens)),
        lexicon_(std::make_shared<const Lexicon>(std::move(lexicon))),
        config_(config) {
    for (WordId id : tokens_) {
      if (id >= lexicon_->size()) throw DataError("document: token id outside lexicon");
    }
    fingerprint_ = compute_fingerprint();
  }

  /// Builds a document from already-normalized words, bypassing the tokenizer.
  static Document from_words(std::span<const std::string> words, std::string source_name = "<words>",
                             TokenizerConfig config = {}) {
    Lexicon lex;
    std::vector<WordId> toks;
    toks.reserve(words.size());
    for (const auto& w : words) {
      if (w.empty()) throw DataError("document: empty word");
      toks.push_back(lex.intern(w));
    }
    return Document(std::move(source_name), std::move(toks), std::move(lex), config);
  }

  static Document from_words(std::initializer_list<std::string> words, std::string source_name = "<words>") {
    std::vector<std::string> v(words);
    return from_words(std::span<const std::string>(v), std::move(source_name));
  }

  const std::string& source_name() const noexcept { return source_name_; }
  std::span<const WordId> tokens() const noexcept { return tokens_; }
  std::size_t size() const noexcept { return tokens_.size(); }
  bool empty() const noexcept { return tokens_.empty(); }
  const Lexicon& lexicon() const noexcept { return *lexicon_; }
  std::shared_ptr<const Lexicon> shared_lexicon() const noexcept { return lexicon_; }
  const TokenizerConfig& config() const noexcept { return config_; }
  const std::string& form_at(std::size_t position) const { return lexicon_->form(tokens_.at(position)); }

  /// Content hash over the token sequence as surface forms. Two documents
  /// with the same text under the same normalization share a fingerprint.
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

 private:
  std::uint64_t compute_fingerprint() const {
    std::uint64_t h = 14695981039346656037ull;
    auto mix = [&h](unsigned char c) {
      h ^= c;
      h *= 1099511628211ull;
    };
    for (WordId id : tokens_) {
      for (unsigned char c : lexicon_->form(id)) mix(c);
      mix(0);
    }
    return h;
  }

  std::string source_name_;
  std::vector<WordId> tokens_;
  std::shared_ptr<const Lexicon> lexicon_;
  TokenizerConfig config_;
  std::uint64_t fingerprint_ = 0;
};

namespace detail {

/// Decodes UTF-8 into code points; throws DecodeError at the first bad byte.
inline std::vector<UChar32> decode_utf8(std::string_view text, const std::string& where) {
  std::vector<UChar32> out;
  out.reserve(text.size());
  const auto* s = reinterpret_cast<const std::uint8_t*>(text.data());
  const auto length = static_cast<std::int64_t>(text.size());
  std::int64_t i = 0;
  while (i < length) {
    const std::int64_t start = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) throw DecodeError(where, static_cast<std::size_t>(start));
    out.push_back(c);
  }
  return out;
}

inline void append_utf8(std::string& out, UChar32 c) {
  char buf[U8_MAX_LENGTH];
  std::int32_t n = 0;
  U8_APPEND_UNSAFE(buf, n, c);
  out.append(buf, static_cast<std::size_t>(n));
}

inline bool is_apostrophe(UChar32 c) { return c == 0x0027 || c == 0x2019 || c == 0x02BC; }
inline bool is_hyphen(UChar32 c) { return c == 0x002D || c == 0x2010; }

inline bool is_word_char(UChar32 c, const TokenizerConfig& cfg) {
  if (u_isalpha(c)) return true;
  const auto type = u_charType(c);
  if (type == U_NON_SPACING_MARK || type == U_COMBINING_SPACING_MARK) return true;
  return !cfg.drop_numeric_tokens && type == U_DECIMAL_DIGIT_NUMBER;
}

}  // namespace detail

/// Splits text into normalized tokens. Throws DecodeError on invalid UTF-8
/// and ConfigError on an invalid configuration.
inline Document tokenize(std::string_view text, const TokenizerConfig& config = {},
                         std::string source_name = "<text>") {
  config.validate();
  const auto cps = detail::decode_utf8(text, source_name);

  Lexicon lexicon;
  std::vector<WordId> tokens;
  std::string current;
  std::size_t current_len = 0;

  auto flush = [&] {
    if (current_len >= config.min_token_length && current_len > 0) {
      tokens.push_back(lexicon.intern(current));
    }
    current.clear();
    current_len = 0;
  };

  for (std::size_t i = 0; i < cps.size(); ++i) {
    const UChar32 c = cps[i];
    if (detail::is_word_char(c, config)) {
      detail::append_utf8(current, config.case_fold ? u_toupper(c) : c);
      ++current_len;
      continue;
    }
    const bool joiner = (config.keep_inner_apostrophe && detail::is_apostrophe(c)) ||
                        (config.keep_inner_hyphen && detail::is_hyphen(c));
    if (joiner && current_len > 0 && i + 1 < cps.size() && detail::is_word_char(cps[i + 1], config)) {
      current.push_back(detail::is_apostrophe(c) ? '\'' : '-');
      ++current_len;
      continue;
    }
    flush();
  }
  flush();

  return Document(std::move(source_name), std::move(tokens), std::move(lexicon), config);
}

/// Reads the files in order, joins them with a newline and tokenizes the
/// result. Each file is validated separately so decode errors carry the
/// offending path and the byte offset within that file.
inline Document load_corpus(std::span<const std::filesystem::path> paths, const TokenizerConfig& config = {}) {
  config.validate();
  std::string joined;
  std::string name;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& p = paths[i];
    std::ifstream in(p, std::ios::binary);
    if (!in) throw DataError("cannot read '" + p.string() + "'");
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw DataError("cannot read '" + p.string() + "'");
    detail::decode_utf8(content, p.string());
    if (i > 0) {
      joined.push_back('\n');
      name.push_back('+');
    }
    joined += content;
    name += p.filename().string();
  }
  return tokenize(joined, config, name.empty() ? std::string("<empty>") : name);
}

}  // namespace chvg
