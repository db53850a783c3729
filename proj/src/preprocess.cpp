// stylo/preprocess.cpp
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

#include "stylo/preprocess.hpp"

#include <cctype>

#include "stylo/text.hpp"

namespace stylo {

namespace {

constexpr std::string_view kLeftQuoteUtf8 = "\xE2\x80\x9C";
constexpr std::string_view kRightQuoteUtf8 = "\xE2\x80\x9D";
constexpr std::size_t kMaxUsernameLen = 15;

bool is_word_byte(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return (u >= 'A' && u <= 'Z') || (u >= 'a' && u <= 'z') || (u >= '0' && u <= '9') ||
         u == '_';
}

bool is_space_byte(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\v' || c == '\f' || c == '\r';
}

// Word chars are ASCII-only and a multi-byte code point never ends in an
// ASCII byte, so a one-byte look-behind is enough for boundary checks.
bool at_boundary(std::string_view s, std::size_t i) {
  return i == 0 || !is_word_byte(s[i - 1]);
}

/// Length of an @username starting at s[i] ('@' + 1..15 word chars), or 0.
std::size_t username_len(std::string_view s, std::size_t i) {
  if (i >= s.size() || s[i] != '@') return 0;
  std::size_t j = i + 1;
  while (j < s.size() && j - i - 1 < kMaxUsernameLen && is_word_byte(s[j])) ++j;
  return (j == i + 1) ? 0 : j - i;
}

bool prefix_ci(std::string_view s, std::size_t i, std::string_view prefix) {
  if (s.size() - i < prefix.size()) return false;
  for (std::size_t k = 0; k < prefix.size(); ++k) {
    if (std::tolower(static_cast<unsigned char>(s[i + k])) != prefix[k]) return false;
  }
  return true;
}

/// Rule 1: truncate at the first `RT` token followed by an @username.
/// Returns true when the whole tweet is deleted.
bool truncate_retweet(std::string& text) {
  const std::string_view s = text;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (s[i] != 'R' || s[i + 1] != 'T') continue;
    if (!at_boundary(s, i)) continue;
    std::size_t j = i + 2;
    if (j < s.size() && is_word_byte(s[j])) continue;  // part of a longer word
    while (j < s.size() && is_space_byte(s[j])) ++j;
    if (username_len(s, j) == 0) continue;
    std::size_t end = i;
    while (end > 0 && is_space_byte(s[end - 1])) --end;
    text.resize(end);
    return text.empty();
  }
  return false;
}

/// Rule 2: URLs starting with http://, https:// or www. up to whitespace.
std::string replace_urls(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t prefix = 0;
    if (at_boundary(s, i)) {
      if (prefix_ci(s, i, "https://"))
        prefix = 8;
      else if (prefix_ci(s, i, "http://"))
        prefix = 7;
      else if (prefix_ci(s, i, "www."))
        prefix = 4;
    }
    if (prefix != 0 && i + prefix < s.size() && !is_space_byte(s[i + prefix])) {
      std::size_t j = i + prefix;
      while (j < s.size() && !is_space_byte(s[j])) ++j;
      out += kUrlTag;
      i = j;
    } else {
      out.push_back(s[i++]);
    }
  }
  return out;
}

/// Rule 3: @usernames. Runs longer than 15 word chars are split: the first
/// 15 form the username, the rest stay as text.
std::string replace_usernames(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t len = at_boundary(s, i) ? username_len(s, i) : 0;
    if (len != 0) {
      out += kUserTag;
      i += len;
    } else {
      out.push_back(s[i++]);
    }
  }
  return out;
}

/// Rule 4: hashtags (# + at least one word char).
std::string replace_hashtags(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '#' && at_boundary(s, i) && i + 1 < s.size() && is_word_byte(s[i + 1])) {
      std::size_t j = i + 1;
      while (j < s.size() && is_word_byte(s[j])) ++j;
      out += kTrendTag;
      i = j;
    } else {
      out.push_back(s[i++]);
    }
  }
  return out;
}

/// Rule 5: paired straight or typographic double quotes (quotes included).
/// Unmatched quote characters stay.
std::string replace_quotes(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '"') {
      std::size_t close = s.find('"', i + 1);
      if (close != std::string_view::npos) {
        out += kQuoteTag;
        i = close + 1;
        continue;
      }
    } else if (s.compare(i, kLeftQuoteUtf8.size(), kLeftQuoteUtf8) == 0) {
      std::size_t close = s.find(kRightQuoteUtf8, i + kLeftQuoteUtf8.size());
      if (close != std::string_view::npos) {
        out += kQuoteTag;
        i = close + kRightQuoteUtf8.size();
        continue;
      }
    }
    out.push_back(s[i++]);
  }
  return out;
}

}  // namespace

NormalizedTweet normalize(std::string_view raw_text) {
  NormalizedTweet result;
  std::string text(raw_text);
  if (truncate_retweet(text)) {
    result.deleted = true;
    return result;
  }
  text = replace_urls(text);
  text = replace_usernames(text);
  text = replace_hashtags(text);
  text = replace_quotes(text);
  result.text = std::move(text);
  result.url_count = static_cast<int>(count_occurrences(result.text, kUrlTag));
  result.mention_count = static_cast<int>(count_occurrences(result.text, kUserTag));
  result.hashtag_count = static_cast<int>(count_occurrences(result.text, kTrendTag));
  result.quote_count = static_cast<int>(count_occurrences(result.text, kQuoteTag));
  return result;
}

}  // namespace stylo
