// stylo/corpus.cpp
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

#include "stylo/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "stylo/csv.hpp"
#include "stylo/rng.hpp"

namespace stylo {

namespace {

using nlohmann::json;

[[noreturn]] void record_error(const std::string& path, std::size_t line,
                               const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

void add_record(Corpus& corpus, Tweet tweet, const std::string& path, std::size_t line) {
  if (tweet.author_id.empty()) record_error(path, line, "missing author_id");
  if (tweet.raw_text.empty()) {
    ++corpus.dropped_empty;
    return;
  }
  corpus.authors[tweet.author_id].push_back(std::move(tweet));
}

void finalize(Corpus& corpus, const std::string& path) {
  for (auto& [author, tweets] : corpus.authors) {
    // Stable sort: file order is kept among equal/missing timestamps.
    std::stable_sort(tweets.begin(), tweets.end(), [](const Tweet& a, const Tweet& b) {
      if (a.timestamp && b.timestamp) return *a.timestamp < *b.timestamp;
      return false;
    });
    std::set<std::string> seen;
    for (const Tweet& t : tweets) {
      if (t.tweet_id.empty()) continue;
      if (!seen.insert(t.tweet_id).second) {
        throw std::runtime_error(path + ": duplicate tweet_id '" + t.tweet_id +
                                 "' for author '" + author + "'");
      }
    }
  }
}

Corpus load_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);
  Corpus corpus;
  corpus.provenance = path;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json record = json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object())
      record_error(path, line_no, "malformed JSON record");
    Tweet tweet;
    if (!record.contains("author_id") || !record["author_id"].is_string())
      record_error(path, line_no, "missing author_id");
    if (!record.contains("text") || !record["text"].is_string())
      record_error(path, line_no, "missing text");
    tweet.author_id = record["author_id"].get<std::string>();
    tweet.raw_text = record["text"].get<std::string>();
    if (record.contains("tweet_id")) {
      if (!record["tweet_id"].is_string())
        record_error(path, line_no, "tweet_id must be a string");
      tweet.tweet_id = record["tweet_id"].get<std::string>();
    }
    if (record.contains("timestamp") && !record["timestamp"].is_null()) {
      if (!record["timestamp"].is_number_integer())
        record_error(path, line_no, "timestamp must be an integer");
      tweet.timestamp = record["timestamp"].get<std::int64_t>();
    }
    add_record(corpus, std::move(tweet), path, line_no);
  }
  finalize(corpus, path);
  return corpus;
}

Corpus load_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);
  Corpus corpus;
  corpus.provenance = path;
  csv::Reader reader(in);
  std::vector<std::string> row;
  std::size_t line = 0;
  if (!reader.next(row, &line)) throw std::runtime_error(path + ": missing CSV header");
  int col_author = -1, col_text = -1, col_id = -1, col_ts = -1;
  for (int i = 0; i < static_cast<int>(row.size()); ++i) {
    if (row[i] == "author_id") col_author = i;
    else if (row[i] == "text") col_text = i;
    else if (row[i] == "tweet_id") col_id = i;
    else if (row[i] == "timestamp") col_ts = i;
  }
  if (col_author < 0 || col_text < 0)
    throw std::runtime_error(path + ": CSV header must name author_id and text columns");
  while (reader.next(row, &line)) {
    auto field = [&](int col) -> std::string {
      return (col >= 0 && col < static_cast<int>(row.size())) ? row[col] : std::string();
    };
    Tweet tweet;
    tweet.author_id = field(col_author);
    tweet.raw_text = field(col_text);
    tweet.tweet_id = field(col_id);
    std::string ts = field(col_ts);
    if (!ts.empty()) {
      try {
        std::size_t used = 0;
        tweet.timestamp = std::stoll(ts, &used);
        if (used != ts.size()) throw std::invalid_argument(ts);
      } catch (const std::exception&) {
        record_error(path, line, "bad timestamp '" + ts + "'");
      }
    }
    if (tweet.author_id.empty()) record_error(path, line, "missing author_id");
    add_record(corpus, std::move(tweet), path, line);
  }
  finalize(corpus, path);
  return corpus;
}

}  // namespace

std::size_t Corpus::tweet_count() const {
  std::size_t n = 0;
  for (const auto& [_, tweets] : authors) n += tweets.size();
  return n;
}

std::vector<std::string> Corpus::author_ids() const {
  std::vector<std::string> ids;
  ids.reserve(authors.size());
  for (const auto& [id, _] : authors) ids.push_back(id);
  return ids;
}

CorpusFormat corpus_format_from_name(std::string_view name) {
  if (name == "jsonl") return CorpusFormat::jsonl;
  if (name == "csv") return CorpusFormat::csv;
  throw std::invalid_argument("unknown corpus format: " + std::string(name));
}

Corpus load_corpus(const std::string& path, CorpusFormat format) {
  return format == CorpusFormat::jsonl ? load_jsonl(path) : load_csv(path);
}

void save_corpus(const Corpus& corpus, const std::string& path, CorpusFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write corpus file: " + path);
  if (format == CorpusFormat::jsonl) {
    for (const auto& [author, tweets] : corpus.authors) {
      for (const Tweet& t : tweets) {
        json record;
        record["author_id"] = author;
        record["text"] = t.raw_text;
        if (!t.tweet_id.empty()) record["tweet_id"] = t.tweet_id;
        if (t.timestamp) record["timestamp"] = *t.timestamp;
        out << record.dump() << '\n';
      }
    }
  } else {
    csv::write_row(out, {"author_id", "tweet_id", "timestamp", "text"});
    for (const auto& [author, tweets] : corpus.authors) {
      for (const Tweet& t : tweets) {
        csv::write_row(out, {author, t.tweet_id,
                             t.timestamp ? std::to_string(*t.timestamp) : std::string(),
                             t.raw_text});
      }
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::optional<AuthorSplit> split_indices(std::size_t total, int enroll_count,
                                         int group_size) {
  if (enroll_count < 1 || group_size < 1)
    throw std::invalid_argument("split: enroll_count and group_size must be >= 1");
  const std::size_t j = static_cast<std::size_t>(enroll_count);
  const std::size_t k = static_cast<std::size_t>(group_size);
  if (total < j + k) return std::nullopt;
  AuthorSplit split;
  split.enroll_count = j;
  for (std::size_t begin = j; begin + k <= total; begin += k)
    split.groups.emplace_back(begin, begin + k);
  return split;
}

std::pair<std::vector<Tweet>, std::vector<std::vector<Tweet>>> split_author(
    std::span<const Tweet> tweets, int enroll_count, int group_size) {
  auto split = split_indices(tweets.size(), enroll_count, group_size);
  if (!split) {
    throw std::runtime_error("split_author: insufficient tweets (" +
                             std::to_string(tweets.size()) + " < " +
                             std::to_string(enroll_count + group_size) + ")");
  }
  std::vector<Tweet> enrollment(tweets.begin(), tweets.begin() + split->enroll_count);
  std::vector<std::vector<Tweet>> groups;
  groups.reserve(split->groups.size());
  for (auto [begin, end] : split->groups)
    groups.emplace_back(tweets.begin() + begin, tweets.begin() + end);
  return {std::move(enrollment), std::move(groups)};
}

std::vector<std::vector<std::string>> sample_folds(std::vector<std::string> eligible,
                                                   int author_count, int fold_count,
                                                   std::uint64_t seed) {
  if (author_count < 1 || fold_count < 1)
    throw std::invalid_argument("sample_folds: author_count and fold_count must be >= 1");
  const std::size_t need = static_cast<std::size_t>(author_count) *
                           static_cast<std::size_t>(fold_count);
  if (eligible.size() < need) {
    throw std::runtime_error("sample_folds: " + std::to_string(eligible.size()) +
                             " eligible authors, need " + std::to_string(need));
  }
  std::sort(eligible.begin(), eligible.end());
  Rng rng(seed);
  rng.shuffle(eligible);
  std::vector<std::vector<std::string>> folds(fold_count);
  std::size_t at = 0;
  for (int f = 0; f < fold_count; ++f) {
    folds[f].assign(eligible.begin() + at, eligible.begin() + at + author_count);
    at += author_count;
  }
  return folds;
}

std::vector<std::vector<std::string>> sample_folds(const Corpus& corpus,
                                                   const SplitPlan& plan) {
  std::vector<std::string> eligible;
  const std::size_t need =
      static_cast<std::size_t>(plan.enroll_count) + static_cast<std::size_t>(plan.group_size);
  for (const auto& [author, tweets] : corpus.authors) {
    if (tweets.size() >= need) eligible.push_back(author);
  }
  return sample_folds(std::move(eligible), plan.author_count, plan.fold_count, plan.seed);
}

std::array<std::size_t, 3> thirds_sizes(std::size_t n) {
  std::array<std::size_t, 3> sizes{n / 3, n / 3, n / 3};
  for (std::size_t i = 0; i < n % 3; ++i) ++sizes[i];
  return sizes;
}

}  // namespace stylo
