// stylo/postag.cpp
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

#include "stylo/postag.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "stylo/postag_lexicon.hpp"
#include "stylo/text.hpp"

namespace stylo {

namespace {

constexpr std::array<std::string_view, kNumPosTags> kTagNames = {
    "adjective",    "preposition_conjunction",
    "adverb",       "verb",
    "determiner",   "interjection",
    "noun",         "numeral",
    "particle",     "pronoun",
    "punctuation",  "symbol",
    "other",
};

bool is_punct_cp(char32_t c) {
  switch (c) {
    case U'!': case U'"': case U'\'': case U'(': case U')': case U',':
    case U'-': case U'.': case U':': case U';': case U'?': case U'[':
    case U']': case U'`': case U'{': case U'}':
    case 0x2018: case 0x2019: case 0x201C: case 0x201D:  // curly quotes
    case 0x2013: case 0x2014: case 0x2026:               // dashes, ellipsis
      return true;
    default:
      return false;
  }
}

bool is_symbol_cp(char32_t c) {
  switch (c) {
    case U'#': case U'$': case U'%': case U'&': case U'*': case U'+':
    case U'/': case U'<': case U'=': case U'>': case U'@': case U'\\':
    case U'^': case U'|': case U'~':
      return true;
    default:
      return c == kPoundSign;
  }
}

bool is_peelable(char32_t c) { return is_punct_cp(c) || is_symbol_cp(c); }

bool is_metatag_surface(std::string_view s) {
  return s == kUrlTag || s == kUserTag || s == kTrendTag || s == kQuoteTag;
}

bool is_number_surface(const std::vector<char32_t>& cps) {
  if (cps.empty() || !is_ascii_digit(cps.front()) || !is_ascii_digit(cps.back()))
    return false;
  bool prev_sep = false;
  for (char32_t c : cps) {
    if (is_ascii_digit(c)) {
      prev_sep = false;
    } else if ((c == U'.' || c == U',') && !prev_sep) {
      prev_sep = true;
    } else {
      return false;
    }
  }
  return true;
}

void emit_chunk(const std::vector<char32_t>& cps, std::vector<Token>& out) {
  std::size_t begin = 0, end = cps.size();
  std::vector<Token> leading, trailing;
  {
    std::string full = encode_all(cps);
    if (is_metatag_surface(full)) {
      out.push_back({std::move(full), TokenKind::metatag});
      return;
    }
  }
  while (begin < end && is_peelable(cps[begin])) {
    std::string s;
    append_utf8(s, cps[begin]);
    leading.push_back({std::move(s), is_punct_cp(cps[begin]) ? TokenKind::punctuation
                                                             : TokenKind::symbol});
    ++begin;
  }
  while (end > begin && is_peelable(cps[end - 1])) {
    std::string s;
    append_utf8(s, cps[end - 1]);
    trailing.push_back({std::move(s), is_punct_cp(cps[end - 1]) ? TokenKind::punctuation
                                                                : TokenKind::symbol});
    --end;
  }
  for (auto& t : leading) out.push_back(std::move(t));
  if (begin < end) {
    std::vector<char32_t> core(cps.begin() + begin, cps.begin() + end);
    std::string surface = encode_all(core);
    TokenKind kind = TokenKind::word;
    if (is_metatag_surface(surface))
      kind = TokenKind::metatag;
    else if (is_number_surface(core))
      kind = TokenKind::number;
    out.push_back({std::move(surface), kind});
  }
  for (auto it = trailing.rbegin(); it != trailing.rend(); ++it)
    out.push_back(std::move(*it));
}

}  // namespace

std::string_view pos_tag_name(PosTag tag) {
  return kTagNames[static_cast<std::size_t>(tag)];
}

std::optional<PosTag> pos_tag_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kTagNames.size(); ++i) {
    if (kTagNames[i] == name) return static_cast<PosTag>(i);
  }
  return std::nullopt;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::vector<char32_t> chunk;
  std::size_t pos = 0;
  while (pos < text.size()) {
    char32_t c = decode_utf8(text, pos);
    if (is_space_char(c)) {
      if (!chunk.empty()) {
        emit_chunk(chunk, tokens);
        chunk.clear();
      }
    } else {
      chunk.push_back(c);
    }
  }
  if (!chunk.empty()) emit_chunk(chunk, tokens);
  return tokens;
}

PosTagger PosTagger::builtin() { return from_text(detail::kBuiltinLexicon, "<builtin>"); }

PosTagger PosTagger::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open lexicon file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str(), path);
}

PosTagger PosTagger::from_text(std::string_view lexicon, std::string_view origin) {
  PosTagger tagger;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= lexicon.size()) {
    std::size_t eol = lexicon.find('\n', pos);
    std::string_view line = lexicon.substr(
        pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? lexicon.size() + 1 : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw std::runtime_error(std::string(origin) + ":" + std::to_string(line_no) +
                               ": lexicon line has no tab separator");
    }
    std::string word(line.substr(0, tab));
    auto tag = pos_tag_from_name(line.substr(tab + 1));
    if (word.empty() || !tag) {
      throw std::runtime_error(std::string(origin) + ":" + std::to_string(line_no) +
                               ": bad lexicon entry");
    }
    for (char& c : word)
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    tagger.lexicon_.emplace(std::move(word), *tag);  // first entry wins
  }
  return tagger;
}

PosTag PosTagger::tag(const Token& token) const {
  switch (token.kind) {
    case TokenKind::punctuation:
      return PosTag::punctuation;
    case TokenKind::symbol:
      return PosTag::symbol;
    case TokenKind::number:
      return PosTag::numeral;
    case TokenKind::metatag:
      return PosTag::other;
    case TokenKind::word:
      break;
  }
  std::string lower;
  lower.reserve(token.surface.size());
  std::size_t pos = 0, len = 0;
  while (pos < token.surface.size()) {
    append_utf8(lower, ascii_lower(decode_utf8(token.surface, pos)));
    ++len;
  }
  if (auto it = lexicon_.find(lower); it != lexicon_.end()) return it->second;
  auto ends_with = [&](std::string_view suffix) {
    return lower.size() >= suffix.size() &&
           std::string_view(lower).substr(lower.size() - suffix.size()) == suffix;
  };
  if (ends_with("ly")) return PosTag::adverb;
  if (len > 4 && (ends_with("ing") || ends_with("ed"))) return PosTag::verb;
  if (ends_with("ous") || ends_with("ful") || ends_with("ive") || ends_with("able") ||
      ends_with("al"))
    return PosTag::adjective;
  return PosTag::noun;
}

std::vector<PosTag> PosTagger::tag_all(std::span<const Token> tokens) const {
  std::vector<PosTag> tags;
  tags.reserve(tokens.size());
  for (const Token& t : tokens) tags.push_back(tag(t));
  return tags;
}

}  // namespace stylo
