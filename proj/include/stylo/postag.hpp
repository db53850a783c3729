// stylo/postag.hpp
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STYLO_POSTAG_HPP
#define STYLO_POSTAG_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace stylo {

// The 13 word categories whose per-tweet frequencies form the syntactic
// feature family. Order is fixed; it defines the feature layout.
enum class PosTag : std::uint8_t {
  adjective,
  preposition_conjunction,
  adverb,
  verb,
  determiner,
  interjection,
  noun,
  numeral,
  particle,
  pronoun,
  punctuation,
  symbol,
  other,
};

inline constexpr int kNumPosTags = 13;

std::string_view pos_tag_name(PosTag tag);
std::optional<PosTag> pos_tag_from_name(std::string_view name);

enum class TokenKind : std::uint8_t { word, number, punctuation, symbol, metatag };

struct Token {
  std::string surface;
  TokenKind kind = TokenKind::word;

  bool operator==(const Token&) const = default;
};

/// Whitespace split, then leading/trailing punctuation and symbol characters
/// are peeled into their own one-character tokens. Interior apostrophes and
/// hyphens stay inside words. Digit-only chunks (with optional `.`/`,`
/// separators) become numbers; the four meta-tag literals become metatags.
std::vector<Token> tokenize(std::string_view text);

/// Deterministic rule-cascade tagger: token kind first, then a
/// case-insensitive closed-class lexicon, then suffix rules, default noun.
class PosTagger {
 public:
  /// Tagger with the compiled-in copy of data/pos_lexicon.tsv.
  static PosTagger builtin();
  static PosTagger from_file(const std::string& path);
  /// Lexicon format: one `word<TAB>tag` per line, `#` comments, tag names
  /// exactly the 13 enumeration names.
  static PosTagger from_text(std::string_view lexicon, std::string_view origin = "<memory>");

  PosTag tag(const Token& token) const;
  std::vector<PosTag> tag_all(std::span<const Token> tokens) const;

  std::size_t lexicon_size() const { return lexicon_.size(); }

 private:
  std::unordered_map<std::string, PosTag> lexicon_;
};

}  // namespace stylo

#endif  // STYLO_POSTAG_HPP
