// tests/unit/test_postag.cpp
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

#include <array>
#include <map>

#include "stylo/postag.hpp"

using namespace stylo;

namespace {

std::vector<std::pair<std::string, TokenKind>> flat(const std::vector<Token>& tokens) {
  std::vector<std::pair<std::string, TokenKind>> out;
  for (const Token& t : tokens) out.emplace_back(t.surface, t.kind);
  return out;
}

PosTag tag_word(const PosTagger& tagger, const std::string& word) {
  return tagger.tag({word, TokenKind::word});
}

}  // namespace

TEST_SUITE("postag") {

TEST_CASE("tokenize splits and peels") {
  using P = std::pair<std::string, TokenKind>;
  CHECK(flat(tokenize("don't stop!")) ==
        std::vector<P>{{"don't", TokenKind::word},
                       {"stop", TokenKind::word},
                       {"!", TokenKind::punctuation}});
  CHECK(flat(tokenize("3.5 items")) ==
        std::vector<P>{{"3.5", TokenKind::number}, {"items", TokenKind::word}});
  CHECK(flat(tokenize("USERTAG hi")) ==
        std::vector<P>{{"USERTAG", TokenKind::metatag}, {"hi", TokenKind::word}});
  CHECK(flat(tokenize("(well-known)")) ==
        std::vector<P>{{"(", TokenKind::punctuation},
                       {"well-known", TokenKind::word},
                       {")", TokenKind::punctuation}});
  CHECK(flat(tokenize("!!!")) == std::vector<P>{{"!", TokenKind::punctuation},
                                                {"!", TokenKind::punctuation},
                                                {"!", TokenKind::punctuation}});
  CHECK(flat(tokenize("$5")) ==
        std::vector<P>{{"$", TokenKind::symbol}, {"5", TokenKind::number}});
  CHECK(flat(tokenize("1,000 3. x2")) ==
        std::vector<P>{{"1,000", TokenKind::number},
                       {"3", TokenKind::number},
                       {".", TokenKind::punctuation},
                       {"x2", TokenKind::word}});
  CHECK(tokenize("  \t\n ").empty());
  CHECK(flat(tokenize("URLTAG!")) ==
        std::vector<P>{{"URLTAG", TokenKind::metatag}, {"!", TokenKind::punctuation}});
}

TEST_CASE("tag cascade") {
  PosTagger tagger = PosTagger::builtin();
  CHECK(tag_word(tagger, "the") == PosTag::determiner);
  CHECK(tag_word(tagger, "The") == PosTag::determiner);  // case-insensitive
  CHECK(tag_word(tagger, "quickly") == PosTag::adverb);  // -ly suffix
  CHECK(tag_word(tagger, "zebra") == PosTag::noun);      // default
  CHECK(tag_word(tagger, "asked") == PosTag::verb);      // -ed, length > 4
  CHECK(tag_word(tagger, "red") == PosTag::noun);        // -ed but too short
  CHECK(tag_word(tagger, "running") == PosTag::verb);
  CHECK(tag_word(tagger, "famous") == PosTag::adjective);
  CHECK(tag_word(tagger, "hopeful") == PosTag::adjective);
  CHECK(tag_word(tagger, "radical") == PosTag::adjective);
  CHECK(tag_word(tagger, "they") == PosTag::pronoun);
  CHECK(tag_word(tagger, "and") == PosTag::preposition_conjunction);
  CHECK(tag_word(tagger, "not") == PosTag::particle);
  CHECK(tag_word(tagger, "wow") == PosTag::interjection);
  CHECK(tag_word(tagger, "seven") == PosTag::numeral);
  CHECK(tagger.tag({"!", TokenKind::punctuation}) == PosTag::punctuation);
  CHECK(tagger.tag({"$", TokenKind::symbol}) == PosTag::symbol);
  CHECK(tagger.tag({"3.5", TokenKind::number}) == PosTag::numeral);
  CHECK(tagger.tag({"URLTAG", TokenKind::metatag}) == PosTag::other);
}

TEST_CASE("every token gets exactly one tag and histogram sums to count") {
  PosTagger tagger = PosTagger::builtin();
  auto tokens = tokenize("The cat, which ran quickly, ate 3 fish! \"Wow\" said @nobody");
  auto tags = tagger.tag_all(tokens);
  REQUIRE(tags.size() == tokens.size());
  std::map<PosTag, int> histogram;
  for (PosTag t : tags) ++histogram[t];
  int total = 0;
  for (const auto& [_, n] : histogram) total += n;
  CHECK(total == static_cast<int>(tokens.size()));
}

TEST_CASE("tagging is deterministic") {
  PosTagger tagger = PosTagger::builtin();
  auto tokens = tokenize("some words to tag again and again");
  auto a = tagger.tag_all(tokens);
  auto b = tagger.tag_all(tokens);
  CHECK(a == b);
}

TEST_CASE("lexicon text parsing") {
  PosTagger tagger = PosTagger::from_text("# comment\nfoo\tnoun\nbar\tverb\n\n");
  CHECK(tagger.lexicon_size() == 2);
  CHECK(tag_word(tagger, "FOO") == PosTag::noun);
  CHECK(tag_word(tagger, "bar") == PosTag::verb);

  CHECK_THROWS(PosTagger::from_text("nospace noun\n"));
  CHECK_THROWS(PosTagger::from_text("word\tnot_a_tag\n"));
  CHECK_THROWS(PosTagger::from_file("/nonexistent/lexicon.tsv"));
}

TEST_CASE("tag names round-trip") {
  for (int i = 0; i < kNumPosTags; ++i) {
    PosTag tag = static_cast<PosTag>(i);
    auto back = pos_tag_from_name(pos_tag_name(tag));
    REQUIRE(back.has_value());
    CHECK(*back == tag);
  }
  CHECK_FALSE(pos_tag_from_name("bogus").has_value());
}

}  // TEST_SUITE
