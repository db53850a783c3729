// stylo/synthetic.hpp
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

#ifndef STYLO_SYNTHETIC_HPP
#define STYLO_SYNTHETIC_HPP

#include <cstdint>

#include "stylo/corpus.hpp"

namespace stylo {

/// Parameters for the synthetic corpus generator. Each author gets a
/// distinct character distribution, word-length generator, casing and
/// punctuation habits, and meta-element rates (mentions, hashtags, URLs,
/// quotes, occasional pure retweets). Tweets are i.i.d. over time, so the
/// style of an author is stationary.
struct SynthConfig {
  int authors = 50;
  int tweets_per_author = 300;
  std::uint64_t seed = 1;
  double letter_sigma = 1.2;  // spread of per-author letter log-weights
  double retweet_prob = 0.02; // fraction of pure retweets (deleted downstream)
};

Corpus synth_corpus(const SynthConfig& config);

}  // namespace stylo

#endif  // STYLO_SYNTHETIC_HPP
