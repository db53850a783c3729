// stylo/synthetic.cpp
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

#include "stylo/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "stylo/rng.hpp"

namespace stylo {

namespace {

struct AuthorStyle {
  std::array<double, 26> letter_cdf{};
  std::array<double, 3> terminator_cdf{};  // . ! ?
  double upper_prob = 0.1;
  double digit_word_prob = 0.05;
  double comma_prob = 0.05;
  double flourish_prob = 0.05;  // decorative special char after a word
  char flourish = ';';
  double words_mean = 10.0;
  double word_len_mean = 5.0;
  double word_len_sd = 1.2;
  double terminator_prob = 0.15;
  double mention_prob = 0.1;
  double hashtag_prob = 0.1;
  double url_prob = 0.1;
  double quote_prob = 0.1;
};

template <std::size_t N>
void normalize_cdf(std::array<double, N>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  double acc = 0.0;
  for (double& w : weights) {
    acc += w / total;
    w = acc;
  }
  weights[N - 1] = 1.0;
}

template <std::size_t N>
std::size_t draw_cdf(Rng& rng, const std::array<double, N>& cdf) {
  const double u = rng.unit();
  return static_cast<std::size_t>(
      std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
}

AuthorStyle draw_style(Rng& rng, double letter_sigma) {
  AuthorStyle style;
  for (double& w : style.letter_cdf) w = std::exp(letter_sigma * rng.normal());
  normalize_cdf(style.letter_cdf);
  for (double& w : style.terminator_cdf) w = std::exp(rng.normal());
  normalize_cdf(style.terminator_cdf);
  style.upper_prob = rng.uniform(0.02, 0.30);
  style.digit_word_prob = rng.uniform(0.01, 0.10);
  style.comma_prob = rng.uniform(0.0, 0.12);
  style.flourish_prob = rng.uniform(0.0, 0.10);
  constexpr std::array<char, 6> flourishes = {';', ':', ')', '(', '-', '&'};
  style.flourish = flourishes[draw_cdf(rng, std::array<double, 6>{
                                                1 / 6.0, 2 / 6.0, 3 / 6.0, 4 / 6.0,
                                                5 / 6.0, 1.0})];
  style.words_mean = rng.uniform(7.0, 13.0);
  style.word_len_mean = rng.uniform(2.8, 7.2);
  style.word_len_sd = rng.uniform(0.8, 1.8);
  style.terminator_prob = rng.uniform(0.08, 0.30);
  style.mention_prob = rng.uniform(0.0, 0.35);
  style.hashtag_prob = rng.uniform(0.0, 0.35);
  style.url_prob = rng.uniform(0.0, 0.30);
  style.quote_prob = rng.uniform(0.0, 0.25);
  return style;
}

std::string draw_word(Rng& rng, const AuthorStyle& style) {
  if (rng.unit() < style.digit_word_prob) {
    const int digits = 1 + static_cast<int>(rng.below(4));
    std::string w;
    for (int i = 0; i < digits; ++i)
      w.push_back(static_cast<char>('0' + rng.below(10)));
    return w;
  }
  int len = static_cast<int>(
      std::lround(style.word_len_mean + style.word_len_sd * rng.normal()));
  len = std::clamp(len, 1, 12);
  std::string w;
  w.reserve(static_cast<std::size_t>(len));
  for (int i = 0; i < len; ++i) {
    char c = static_cast<char>('a' + draw_cdf(rng, style.letter_cdf));
    if (rng.unit() < style.upper_prob) c = static_cast<char>(c - 32);
    w.push_back(c);
  }
  return w;
}

std::string draw_tweet(Rng& rng, const AuthorStyle& style) {
  int n_words = static_cast<int>(std::lround(style.words_mean + 2.0 * rng.normal()));
  n_words = std::clamp(n_words, 3, 24);
  std::vector<std::string> words;
  words.reserve(static_cast<std::size_t>(n_words) + 4);
  for (int i = 0; i < n_words; ++i) {
    std::string w = draw_word(rng, style);
    const double u = rng.unit();
    if (u < style.terminator_prob) {
      constexpr std::array<char, 3> terms = {'.', '!', '?'};
      w.push_back(terms[draw_cdf(rng, style.terminator_cdf)]);
    } else if (u < style.terminator_prob + style.comma_prob) {
      w.push_back(',');
    } else if (rng.unit() < style.flourish_prob) {
      w.push_back(style.flourish);
    }
    words.push_back(std::move(w));
  }
  auto insert_at_random = [&](std::string w) {
    const std::size_t at = rng.below(words.size() + 1);
    words.insert(words.begin() + static_cast<std::ptrdiff_t>(at), std::move(w));
  };
  if (rng.unit() < style.mention_prob)
    insert_at_random("@user" + std::to_string(rng.below(1000)));
  if (rng.unit() < style.hashtag_prob)
    insert_at_random("#topic" + std::to_string(rng.below(100)));
  if (rng.unit() < style.url_prob) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "http://t.co/%06llu",
                  static_cast<unsigned long long>(rng.below(1000000)));
    insert_at_random(buf);
  }
  if (rng.unit() < style.quote_prob)
    insert_at_random("\"" + draw_word(rng, style) + " " + draw_word(rng, style) + "\"");
  std::string text;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) text.push_back(' ');
    text += words[i];
  }
  return text;
}

}  // namespace

Corpus synth_corpus(const SynthConfig& config) {
  Corpus corpus;
  corpus.provenance = "synthetic(seed=" + std::to_string(config.seed) + ")";
  for (int a = 0; a < config.authors; ++a) {
    // Independent per-author stream: style stays fixed when the tweet count
    // changes and authors don't perturb each other.
    const std::uint64_t author_seed =
        config.seed * 0x9E3779B97F4A7C15ULL +
        static_cast<std::uint64_t>(a) * 0xBF58476D1CE4E5B9ULL + 0x94D049BB133111EBULL;
    Rng rng(author_seed);
    AuthorStyle style = draw_style(rng, config.letter_sigma);

    char id[24];
    std::snprintf(id, sizeof(id), "author_%04d", a);
    std::vector<Tweet>& tweets = corpus.authors[id];
    tweets.reserve(static_cast<std::size_t>(config.tweets_per_author));
    for (int t = 0; t < config.tweets_per_author; ++t) {
      Tweet tweet;
      tweet.author_id = id;
      tweet.tweet_id = std::string(id) + "-" + std::to_string(t);
      tweet.timestamp = t;
      if (rng.unit() < config.retweet_prob) {
        tweet.raw_text = "RT @user" + std::to_string(rng.below(1000)) + " " +
                         draw_word(rng, style) + " " + draw_word(rng, style);
      } else {
        tweet.raw_text = draw_tweet(rng, style);
      }
      tweets.push_back(std::move(tweet));
    }
  }
  return corpus;
}

}  // namespace stylo
