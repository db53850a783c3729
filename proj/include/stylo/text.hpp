// stylo/text.hpp
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

#ifndef STYLO_TEXT_HPP
#define STYLO_TEXT_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace stylo {

// Meta-tag literals substituted for Twitter-specific elements during
// normalization.
inline constexpr std::string_view kUrlTag = "URLTAG";
inline constexpr std::string_view kUserTag = "USERTAG";
inline constexpr std::string_view kTrendTag = "TRENDTAG";
inline constexpr std::string_view kQuoteTag = "QUOTETAG";

inline constexpr char32_t kPoundSign = 0x00A3;       // £
inline constexpr char32_t kLeftDoubleQuote = 0x201C;  // “
inline constexpr char32_t kRightDoubleQuote = 0x201D; // ”
inline constexpr char32_t kRightSingleQuote = 0x2019; // ’ (apostrophe-like)

/// Decode the UTF-8 sequence starting at `pos` and advance `pos` past it.
/// Invalid bytes decode as their own scalar value so any byte string
/// round-trips deterministically.
char32_t decode_utf8(std::string_view s, std::size_t& pos);

void append_utf8(std::string& out, char32_t c);

std::vector<char32_t> decode_all(std::string_view s);

std::string encode_all(const std::vector<char32_t>& cps);

/// Number of Unicode scalar values in `s`.
std::size_t scalar_count(std::string_view s);

inline bool is_ascii_upper(char32_t c) { return c >= U'A' && c <= U'Z'; }
inline bool is_ascii_lower(char32_t c) { return c >= U'a' && c <= U'z'; }
inline bool is_ascii_letter(char32_t c) { return is_ascii_upper(c) || is_ascii_lower(c); }
inline bool is_ascii_digit(char32_t c) { return c >= U'0' && c <= U'9'; }
inline bool is_word_char(char32_t c) {
  return is_ascii_letter(c) || is_ascii_digit(c) || c == U'_';
}

inline bool is_vowel(char32_t c) {
  switch (c) {
    case U'a': case U'e': case U'i': case U'o': case U'u':
    case U'A': case U'E': case U'I': case U'O': case U'U':
      return true;
    default:
      return false;
  }
}

inline bool is_space_char(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\v' || c == U'\f' ||
         c == U'\r';
}

/// The fixed 33-element special-character set: ASCII 33-47, 58-64, 91-96,
/// 123-126, plus the pound sign.
inline bool is_special_char(char32_t c) {
  return (c >= 33 && c <= 47) || (c >= 58 && c <= 64) || (c >= 91 && c <= 96) ||
         (c >= 123 && c <= 126) || c == kPoundSign;
}

/// Ordinal of `c` within the ordered special set, or -1.
int special_index(char32_t c);

/// Inverse of special_index.
char32_t special_at(int index);

inline char32_t ascii_lower(char32_t c) {
  return is_ascii_upper(c) ? c + 32 : c;
}

std::size_t count_occurrences(std::string_view text, std::string_view needle);

/// Remove every occurrence of the four meta-tag literals from `text`.
/// Surrounding whitespace is left in place.
std::string strip_tags(std::string_view text);

/// Lowercase (ASCII) and remove all whitespace; used for n-gram analysis.
std::string fold_for_ngrams(std::string_view text);

}  // namespace stylo

#endif  // STYLO_TEXT_HPP
