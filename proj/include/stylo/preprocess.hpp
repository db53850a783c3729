// stylo/preprocess.hpp
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

#ifndef STYLO_PREPROCESS_HPP
#define STYLO_PREPROCESS_HPP

#include <string>
#include <string_view>

namespace stylo {

struct NormalizedTweet {
  std::string text;
  int url_count = 0;
  int mention_count = 0;
  int hashtag_count = 0;
  int quote_count = 0;
  bool deleted = false;

  bool operator==(const NormalizedTweet&) const = default;
};

/// Normalize a raw tweet, applying in fixed order:
///   1. retweet truncation: at the first token `RT` followed by an
///      @-username, keep only the preceding text; nothing preceding means
///      the whole tweet is deleted.
///   2. URLs (http://, https://, www. up to whitespace)  -> URLTAG
///   3. usernames (@ + 1..15 chars of [A-Za-z0-9_])      -> USERTAG
///   4. hashtags (# + >=1 word character)                -> TRENDTAG
///   5. text between paired straight or typographic
///      double quotes (quotes included)                  -> QUOTETAG
///
/// URL, username and hashtag matches must start at a non-word boundary.
/// Unmatched quote characters are kept. Counts are recomputed from the
/// final text, so they always equal the literal meta-tag occurrences.
NormalizedTweet normalize(std::string_view raw_text);

}  // namespace stylo

#endif  // STYLO_PREPROCESS_HPP
