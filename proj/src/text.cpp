// stylo/text.cpp
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

#include "stylo/text.hpp"

#include <array>

namespace stylo {

char32_t decode_utf8(std::string_view s, std::size_t& pos) {
  const auto byte = [&](std::size_t i) -> unsigned char {
    return static_cast<unsigned char>(s[i]);
  };
  unsigned char b0 = byte(pos);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  auto cont = [&](std::size_t i) {
    return i < s.size() && (byte(i) & 0xC0) == 0x80;
  };
  if ((b0 & 0xE0) == 0xC0 && cont(pos + 1)) {
    char32_t c = (char32_t(b0 & 0x1F) << 6) | (byte(pos + 1) & 0x3F);
    if (c >= 0x80) {
      pos += 2;
      return c;
    }
  } else if ((b0 & 0xF0) == 0xE0 && cont(pos + 1) && cont(pos + 2)) {
    char32_t c = (char32_t(b0 & 0x0F) << 12) | (char32_t(byte(pos + 1) & 0x3F) << 6) |
                 (byte(pos + 2) & 0x3F);
    if (c >= 0x800) {
      pos += 3;
      return c;
    }
  } else if ((b0 & 0xF8) == 0xF0 && cont(pos + 1) && cont(pos + 2) && cont(pos + 3)) {
    char32_t c = (char32_t(b0 & 0x07) << 18) | (char32_t(byte(pos + 1) & 0x3F) << 12) |
                 (char32_t(byte(pos + 2) & 0x3F) << 6) | (byte(pos + 3) & 0x3F);
    if (c >= 0x10000 && c <= 0x10FFFF) {
      pos += 4;
      return c;
    }
  }
  // Invalid or truncated sequence: one byte, identity value.
  ++pos;
  return b0;
}

void append_utf8(std::string& out, char32_t c) {
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
}

std::vector<char32_t> decode_all(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  std::size_t pos = 0;
  while (pos < s.size()) out.push_back(decode_utf8(s, pos));
  return out;
}

std::string encode_all(const std::vector<char32_t>& cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t c : cps) append_utf8(out, c);
  return out;
}

std::size_t scalar_count(std::string_view s) {
  std::size_t pos = 0, n = 0;
  while (pos < s.size()) {
    decode_utf8(s, pos);
    ++n;
  }
  return n;
}

namespace {

std::array<char32_t, 33> make_special_table() {
  std::array<char32_t, 33> t{};
  int i = 0;
  for (char32_t c = 33; c <= 47; ++c) t[i++] = c;
  for (char32_t c = 58; c <= 64; ++c) t[i++] = c;
  for (char32_t c = 91; c <= 96; ++c) t[i++] = c;
  for (char32_t c = 123; c <= 126; ++c) t[i++] = c;
  t[i++] = kPoundSign;
  return t;
}

const std::array<char32_t, 33> kSpecialTable = make_special_table();

}  // namespace

int special_index(char32_t c) {
  if (c >= 33 && c <= 47) return static_cast<int>(c - 33);
  if (c >= 58 && c <= 64) return 15 + static_cast<int>(c - 58);
  if (c >= 91 && c <= 96) return 22 + static_cast<int>(c - 91);
  if (c >= 123 && c <= 126) return 28 + static_cast<int>(c - 123);
  if (c == kPoundSign) return 32;
  return -1;
}

char32_t special_at(int index) { return kSpecialTable.at(static_cast<std::size_t>(index)); }

std::size_t count_occurrences(std::string_view text, std::string_view needle) {
  if (needle.empty()) return 0;
  std::size_t n = 0, pos = 0;
  while ((pos = text.find(needle, pos)) != std::string_view::npos) {
    ++n;
    pos += needle.size();
  }
  return n;
}

std::string strip_tags(std::string_view text) {
  static constexpr std::string_view tags[] = {kUrlTag, kUserTag, kTrendTag, kQuoteTag};
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    bool matched = false;
    for (std::string_view tag : tags) {
      if (text.compare(i, tag.size(), tag) == 0) {
        i += tag.size();
        matched = true;
        break;
      }
    }
    if (!matched) out.push_back(text[i++]);
  }
  return out;
}

std::string fold_for_ngrams(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    char32_t c = decode_utf8(text, pos);
    if (is_space_char(c)) continue;
    append_utf8(out, ascii_lower(c));
  }
  return out;
}

}  // namespace stylo
