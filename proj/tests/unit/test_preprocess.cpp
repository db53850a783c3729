// tests/unit/test_preprocess.cpp
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

#include <doctest.h>

#include <string>

#include "stylo/preprocess.hpp"
#include "stylo/rng.hpp"
#include "stylo/text.hpp"
#include "../golden_preprocess.hpp"

using namespace stylo;

namespace {

// Random raw tweets over a charset that can trigger every rule but cannot
// spell a meta-tag literal by accident (no uppercase letters).
std::string random_raw_tweet(Rng& rng) {
  static const std::string alphabet = "abcdefghijklmnopqrstuvwxyz0123456789";
  static const std::string sprinkles = "@#\"'.!?,:;- ";
  std::string out;
  const int pieces = 1 + static_cast<int>(rng.below(18));
  for (int i = 0; i < pieces; ++i) {
    const double u = rng.unit();
    if (u < 0.55) {
      const int len = 1 + static_cast<int>(rng.below(8));
      for (int k = 0; k < len; ++k)
        out.push_back(alphabet[rng.below(alphabet.size())]);
    } else if (u < 0.7) {
      out.push_back(sprinkles[rng.below(sprinkles.size())]);
    } else if (u < 0.78) {
      out += "@user";
      out.push_back(static_cast<char>('0' + rng.below(10)));
    } else if (u < 0.86) {
      out += "#tag";
      out.push_back(static_cast<char>('0' + rng.below(10)));
    } else if (u < 0.92) {
      out += "http://a.b/";
      out.push_back(static_cast<char>('0' + rng.below(10)));
    } else if (u < 0.96) {
      out += "rt ";
    } else {
      out += "RT @u ";
    }
    out.push_back(' ');
  }
  if (out.empty()) out = "x";
  return out;
}

int count_tag(const std::string& text, std::string_view tag) {
  return static_cast<int>(count_occurrences(text, tag));
}

}  // namespace

TEST_SUITE("preprocess") {

TEST_CASE("golden cases are byte exact") {
  for (const auto& c : stylo_tests::golden_preprocess_cases()) {
    CAPTURE(c.name);
    NormalizedTweet got = normalize(c.input);
    CHECK(got.text == c.text);
    CHECK(got.url_count == c.urls);
    CHECK(got.mention_count == c.mentions);
    CHECK(got.hashtag_count == c.hashtags);
    CHECK(got.quote_count == c.quotes);
    CHECK(got.deleted == c.deleted);
  }
}

TEST_CASE("counts always equal literal tag occurrences") {
  Rng rng(2024);
  for (int i = 0; i < 500; ++i) {
    NormalizedTweet n = normalize(random_raw_tweet(rng));
    CHECK(n.url_count == count_tag(n.text, kUrlTag));
    CHECK(n.mention_count == count_tag(n.text, kUserTag));
    CHECK(n.hashtag_count == count_tag(n.text, kTrendTag));
    CHECK(n.quote_count == count_tag(n.text, kQuoteTag));
    if (n.deleted) CHECK(n.text.empty());
  }
}

TEST_CASE("idempotence: renormalizing output changes nothing") {
  Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    NormalizedTweet first = normalize(random_raw_tweet(rng));
    if (first.deleted) continue;
    NormalizedTweet second = normalize(first.text);
    CHECK(second.text == first.text);
    CHECK(second.url_count == first.url_count);
    CHECK(second.mention_count == first.mention_count);
    CHECK(second.hashtag_count == first.hashtag_count);
    CHECK(second.quote_count == first.quote_count);
    CHECK_FALSE(second.deleted);
  }
}

TEST_CASE("tag removal leaves only input characters") {
  // Removing the four literals from the output must leave a subsequence of
  // characters that all appeared in the input.
  Rng rng(99);
  for (int i = 0; i < 300; ++i) {
    std::string raw = random_raw_tweet(rng);
    NormalizedTweet n = normalize(raw);
    std::string residue = strip_tags(n.text);
    for (char ch : residue) {
      CAPTURE(raw);
      CAPTURE(residue);
      CHECK(raw.find(ch) != std::string::npos);
    }
  }
}

TEST_CASE("no mentions without an at sign") {
  Rng rng(123);
  for (int i = 0; i < 300; ++i) {
    std::string raw = random_raw_tweet(rng);
    std::string no_at;
    for (char c : raw)
      if (c != '@') no_at.push_back(c);
    if (no_at.empty()) no_at = "x";
    CHECK(normalize(no_at).mention_count == 0);
  }
}

}  // TEST_SUITE
