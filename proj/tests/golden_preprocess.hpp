// tests/golden_preprocess.hpp
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

// Hand-constructed raw tweets with byte-exact expected normalization
// results, covering retweet truncation/deletion, URLs, the 15-character
// username cap, hashtags, matched/unmatched quotes and combinations.

#ifndef STYLO_TESTS_GOLDEN_PREPROCESS_HPP
#define STYLO_TESTS_GOLDEN_PREPROCESS_HPP

#include <string>
#include <vector>

namespace stylo_tests {

struct GoldenCase {
  std::string name;
  std::string input;
  std::string text;
  int urls = 0;
  int mentions = 0;
  int hashtags = 0;
  int quotes = 0;
  bool deleted = false;
};

inline const std::vector<GoldenCase>& golden_preprocess_cases() {
  static const std::vector<GoldenCase> cases = {
      // retweet truncation and deletion
      {"rt_delete", "RT @alice hello world", "", 0, 0, 0, 0, true},
      {"rt_truncate", "great point RT @alice hello", "great point"},
      {"rt_leading_space", "  RT @a hi", "", 0, 0, 0, 0, true},
      {"rt_no_space_before_at", "RT@alice hi", "", 0, 0, 0, 0, true},
      {"rt_inside_word", "RTs @alice hi", "RTs USERTAG hi", 0, 1},
      {"rt_lowercase_kept", "I like rt @a", "I like rt USERTAG", 0, 1},
      {"rt_long_username", "smart RT @toolongusername1234 x", "smart"},
      {"rt_without_username", "no arr RT here @a", "no arr RT here USERTAG", 0, 1},
      {"rt_first_wins", "x RT @a RT @b", "x"},
      {"rt_double_space_trim", "tail  RT @a", "tail"},
      {"rt_after_punct", "- RT @a x", "-"},
      // URLs
      {"url_http", "go http://x.y/z?a=1 now", "go URLTAG now", 1},
      {"url_https", "go https://x.y/z now", "go URLTAG now", 1},
      {"url_www", "www.example.com rocks", "URLTAG rocks", 1},
      {"url_case_insensitive", "visit WWW.Example.COM", "visit URLTAG", 1},
      {"url_mid_word_blocked", "awww.no match", "awww.no match"},
      {"url_bare_prefix_kept", "http:// nothing", "http:// nothing"},
      {"url_two", "see http://a http://b", "see URLTAG URLTAG", 2},
      {"url_after_paren", "(http://a.b) x", "(URLTAG x", 1},
      // usernames
      {"user_simple", "@alice hi", "USERTAG hi", 0, 1},
      {"user_email_kept", "email a@b.com stays", "email a@b.com stays"},
      {"user_15_char_cap", "@toolongusername1234", "USERTAG1234", 0, 1},
      {"user_bare_at", "@ hello", "@ hello"},
      {"user_underscore", "ping @bob_jones ok", "ping USERTAG ok", 0, 1},
      // hashtags
      {"hashtag_simple", "#news now", "TRENDTAG now", 0, 0, 1},
      {"hashtag_digits", "#123 ok", "TRENDTAG ok", 0, 0, 1},
      {"hashtag_mid_word_blocked", "c# is nice", "c# is nice"},
      {"hashtag_after_hash", "## #tag", "## TRENDTAG", 0, 0, 1},
      {"hashtag_long", "love #aVeryLong_Hashtag123", "love TRENDTAG", 0, 0, 1},
      // quotes
      {"quote_simple", "\"quoted\" text", "QUOTETAG text", 0, 0, 0, 1},
      {"quote_two_pairs", "he said \"a b\" and \"c\"", "he said QUOTETAG and QUOTETAG",
       0, 0, 0, 2},
      {"quote_unmatched", "unmatched \" quote", "unmatched \" quote"},
      {"quote_third_unmatched", "a \"b\" c \" d", "a QUOTETAG c \" d", 0, 0, 0, 1},
      {"quote_typographic", "she said \xE2\x80\x9Chi there\xE2\x80\x9D ok",
       "she said QUOTETAG ok", 0, 0, 0, 1},
      {"quote_typographic_unmatched", "only \xE2\x80\x9Cleft side",
       "only \xE2\x80\x9Cleft side"},
      {"quote_empty", "empty \"\" here", "empty QUOTETAG here", 0, 0, 0, 1},
      {"quote_apostrophes_kept", "it's Bob's 'day'", "it's Bob's 'day'"},
      // combinations
      {"combo_all_tags", "see @bob #news http://a.b \"wow\"",
       "see USERTAG TRENDTAG URLTAG QUOTETAG", 1, 1, 1, 1},
      {"combo_rt_not_triggered", "RT fans: #go @a \"x\" www.z.com",
       "RT fans: TRENDTAG USERTAG QUOTETAG URLTAG", 1, 1, 1, 1},
      {"combo_quote_swallows_url", "say \"visit http://x.y now\" ok",
       "say QUOTETAG ok", 0, 0, 0, 1},
      {"combo_literal_tag_in_input", "USERTAG hi", "USERTAG hi", 0, 1},
      {"plain_text", "just a plain message", "just a plain message"},
  };
  return cases;
}

}  // namespace stylo_tests

#endif  // STYLO_TESTS_GOLDEN_PREPROCESS_HPP
