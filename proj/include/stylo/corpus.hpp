// stylo/corpus.hpp
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

#ifndef STYLO_CORPUS_HPP
#define STYLO_CORPUS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stylo {

struct Tweet {
  std::string author_id;
  std::string tweet_id;
  std::optional<std::int64_t> timestamp;  // seconds since epoch
  std::string raw_text;

  bool operator==(const Tweet&) const = default;
};

/// Author-attributed tweets in per-author chronological order. Immutable
/// after load; safe to share read-only across workers.
struct Corpus {
  std::map<std::string, std::vector<Tweet>> authors;
  std::string provenance;
  std::size_t dropped_empty = 0;  // records dropped at load for empty text

  std::size_t tweet_count() const;
  std::vector<std::string> author_ids() const;
};

enum class CorpusFormat { jsonl, csv };

CorpusFormat corpus_format_from_name(std::string_view name);  // throws on unknown

/// JSONL: one object per line with keys author_id (required), text
/// (required), tweet_id and timestamp (optional). CSV: the same columns
/// with a header row. Tweets are re-sorted ascending by timestamp when
/// timestamps exist (stable, so file order breaks ties and is kept when
/// timestamps are absent). Records with empty text are dropped and counted.
Corpus load_corpus(const std::string& path, CorpusFormat format);

void save_corpus(const Corpus& corpus, const std::string& path, CorpusFormat format);

/// Enrollment/test split of one author's ordered sequence: enrollment is
/// the first `enroll_count` items, test groups are consecutive disjoint
/// blocks of `group_size` from the remainder (trailing partial block
/// discarded). Empty result when the sequence is too short.
struct AuthorSplit {
  std::size_t enroll_count = 0;
  // [begin, end) index ranges, one per test group
  std::vector<std::pair<std::size_t, std::size_t>> groups;
};

std::optional<AuthorSplit> split_indices(std::size_t total, int enroll_count,
                                         int group_size);

/// Spec-shaped convenience wrapper; throws when the author has fewer than
/// enroll_count + group_size tweets.
std::pair<std::vector<Tweet>, std::vector<std::vector<Tweet>>> split_author(
    std::span<const Tweet> tweets, int enroll_count, int group_size);

struct SplitPlan {
  int enroll_count = 0;   // J: enrollment tweets per author
  int group_size = 0;     // K: test tweets averaged per attempt
  int author_count = 0;   // M: authors per experiment
  int fold_count = 1;     // k: disjoint author folds
  std::uint64_t seed = 0;
};

/// k disjoint author sets of size M drawn from `eligible` with a seeded
/// deterministic shuffle. `eligible` is sorted internally first so the
/// result depends only on (set of authors, M, k, seed).
std::vector<std::vector<std::string>> sample_folds(std::vector<std::string> eligible,
                                                   int author_count, int fold_count,
                                                   std::uint64_t seed);

/// Eligibility by raw tweet count >= J + K, then sample_folds.
std::vector<std::vector<std::string>> sample_folds(const Corpus& corpus,
                                                   const SplitPlan& plan);

/// Sizes of three consecutive near-equal parts (earlier parts take the
/// extra when not divisible by 3).
std::array<std::size_t, 3> thirds_sizes(std::size_t n);

/// Split a sequence of test groups into three consecutive disjoint parts;
/// part 0 is closest in time to enrollment. Throws when n < 3.
template <class T>
std::array<std::vector<T>, 3> chronological_thirds(const std::vector<T>& groups) {
  if (groups.size() < 3)
    throw std::invalid_argument("chronological_thirds: fewer than 3 test groups");
  auto sizes = thirds_sizes(groups.size());
  std::array<std::vector<T>, 3> parts;
  std::size_t at = 0;
  for (int p = 0; p < 3; ++p) {
    parts[p].assign(groups.begin() + at, groups.begin() + at + sizes[p]);
    at += sizes[p];
  }
  return parts;
}

}  // namespace stylo

#endif  // STYLO_CORPUS_HPP
