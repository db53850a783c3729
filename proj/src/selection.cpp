// stylo/selection.cpp
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

#include "stylo/selection.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "stylo/parallel.hpp"

namespace stylo {

namespace {

std::string subset_key(const std::vector<int>& ids) {
  std::string key;
  key.reserve(ids.size() * 4);
  for (int id : ids) {
    key += std::to_string(id);
    key.push_back(',');
  }
  return key;
}

class CriterionCache {
 public:
  explicit CriterionCache(const CriterionFn& fn) : fn_(fn) {}

  double eval(const std::vector<int>& sorted_ids, std::size_t& evaluations) {
    const std::string key = subset_key(sorted_ids);
    {
      std::lock_guard<std::mutex> lock(mutex_);
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    const double value = fn_(sorted_ids);
    if (!std::isfinite(value))
      throw std::runtime_error("criterion returned a non-finite value");
    std::lock_guard<std::mutex> lock(mutex_);
    if (cache_.emplace(key, value).second) ++evaluations;
    return value;
  }

 private:
  const CriterionFn& fn_;
  std::unordered_map<std::string, double> cache_;
  std::mutex mutex_;
};

std::vector<int> with_feature(const std::vector<int>& sorted_ids, int id) {
  std::vector<int> out = sorted_ids;
  out.insert(std::upper_bound(out.begin(), out.end(), id), id);
  return out;
}

std::vector<int> without_feature(const std::vector<int>& sorted_ids, int id) {
  std::vector<int> out = sorted_ids;
  out.erase(std::find(out.begin(), out.end(), id));
  return out;
}

}  // namespace

const BestSubset& SelectionTrace::best_of_size(std::size_t size) const {
  if (size >= best_per_size.size() || !best_per_size[size])
    throw std::out_of_range("no subset of size " + std::to_string(size) + " recorded");
  return *best_per_size[size];
}

const BestSubset& SelectionTrace::overall_best() const {
  const BestSubset* best = nullptr;
  for (const auto& candidate : best_per_size) {
    if (!candidate) continue;
    if (!best || candidate->criterion > best->criterion) best = &*candidate;
  }
  if (!best) throw std::runtime_error("empty selection trace");
  return *best;
}

void SelectionTrace::save_jsonl(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write trace: " + path);
  for (const auto& step : steps) {
    nlohmann::json record;
    record["step"] = step.step;
    record["action"] = step.removed ? "remove" : "add";
    record["feature_id"] = step.feature_id;
    record["criterion"] = step.criterion;
    record["size"] = step.subset_size;
    out << record.dump() << '\n';
  }
}

SelectionTrace sffs(std::size_t feature_count, const CriterionFn& criterion,
                    const SffsOptions& options) {
  if (options.max_size < 1 || options.max_size > feature_count)
    throw std::invalid_argument("sffs: max_size must be in 1..feature_count");

  SelectionTrace trace;
  trace.best_per_size.resize(options.max_size + 1);
  CriterionCache cache(criterion);

  std::vector<int> current;  // sorted
  int step_no = 0;

  auto record_best = [&](const std::vector<int>& ids, double value) {
    auto& slot = trace.best_per_size[ids.size()];
    if (!slot || value > slot->criterion) slot = BestSubset{value, ids};
  };

  while (current.size() < options.max_size) {
    // Forward: evaluate every candidate addition in parallel, then pick the
    // best sequentially (lowest id on ties) so thread count can't matter.
    std::vector<int> candidates;
    candidates.reserve(feature_count - current.size());
    for (int id = 0; id < static_cast<int>(feature_count); ++id) {
      if (!std::binary_search(current.begin(), current.end(), id)) candidates.push_back(id);
    }
    std::vector<double> values(candidates.size());
    parallel_for(candidates.size(), options.threads, [&](std::size_t i) {
      values[i] = cache.eval(with_feature(current, candidates[i]),
                             trace.criterion_evaluations);
    });
    std::size_t best = 0;
    for (std::size_t i = 1; i < candidates.size(); ++i) {
      if (values[i] > values[best]) best = i;
    }
    current = with_feature(current, candidates[best]);
    trace.steps.push_back({step_no++, false, candidates[best], values[best], current.size()});
    record_best(current, values[best]);

    if (!options.backward_step) continue;

    // Conditional backward: drop a feature while that strictly improves on
    // the recorded best of the reduced size.
    while (current.size() > 2) {
      std::vector<double> removal_values(current.size());
      std::vector<int> removal_ids = current;
      parallel_for(removal_ids.size(), options.threads, [&](std::size_t i) {
        removal_values[i] = cache.eval(without_feature(current, removal_ids[i]),
                                       trace.criterion_evaluations);
      });
      std::size_t best_removal = 0;
      for (std::size_t i = 1; i < removal_ids.size(); ++i) {
        if (removal_values[i] > removal_values[best_removal]) best_removal = i;
      }
      const std::size_t reduced = current.size() - 1;
      const auto& recorded = trace.best_per_size[reduced];
      // Every size below the current one has been visited, so a record
      // always exists; strict improvement is required to float back.
      if (!recorded || removal_values[best_removal] <= recorded->criterion) break;
      current = without_feature(current, removal_ids[best_removal]);
      trace.steps.push_back({step_no++, true, removal_ids[best_removal],
                             removal_values[best_removal], current.size()});
      record_best(current, removal_values[best_removal]);
    }
  }
  return trace;
}

Rank1Criterion::Rank1Criterion(const FeatureTable& table, int enroll_count, int group_size,
                               Measure measure, int threads)
    : measure_(measure), threads_(threads) {
  auto eligible = table.eligible_authors(enroll_count, group_size);
  if (eligible.size() < 2)
    throw std::runtime_error("Rank1Criterion: need at least 2 eligible authors");
  profiles_.resize(eligible.size());
  parallel_for(eligible.size(), threads, [&](std::size_t i) {
    const auto& vectors = table.by_author.at(eligible[i]);
    std::span<const FeatureVector> head(vectors.data(),
                                        static_cast<std::size_t>(enroll_count));
    profiles_[i] = make_profile(eligible[i], head);
  });
  std::unordered_map<std::string, std::size_t> column;
  for (std::size_t c = 0; c < profiles_.size(); ++c) column[profiles_[c].author_id] = c;
  for (const auto& author : eligible) {
    const auto& vectors = table.by_author.at(author);
    auto split = split_indices(vectors.size(), enroll_count, group_size);
    int group_index = 0;
    for (auto [begin, end] : split->groups) {
      std::span<const FeatureVector> group(vectors.data() + begin, end - begin);
      tests_.push_back({{author, group_index++}, mean_vector(group)});
      truth_column_.push_back(column.at(author));
    }
  }
}

double Rank1Criterion::operator()(const std::vector<int>& subset) const {
  if (subset.empty()) throw std::invalid_argument("Rank1Criterion: empty subset");
  const Polarity polarity = polarity_of(measure_);
  std::vector<int> hits(tests_.size(), 0);
  parallel_for(tests_.size(), threads_, [&](std::size_t r) {
    const double own =
        score(measure_, tests_[r].vector.values, profiles_[truth_column_[r]].vector.values,
              subset);
    int rank = 1;
    for (std::size_t c = 0; c < profiles_.size(); ++c) {
      if (c == truth_column_[r]) continue;
      const double s =
          score(measure_, tests_[r].vector.values, profiles_[c].vector.values, subset);
      const bool is_better = polarity == Polarity::distance ? s < own : s > own;
      if (is_better || s == own) {
        rank = 2;  // pessimistic ties: rank 1 already lost
        break;
      }
    }
    hits[r] = rank == 1 ? 1 : 0;
  });
  std::size_t correct = 0;
  for (int h : hits) correct += static_cast<std::size_t>(h);
  return static_cast<double>(correct) / static_cast<double>(tests_.size());
}

void save_subset(const std::string& path, const std::vector<int>& ids,
                 std::uint64_t layout_hash, const std::string& source) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write subset: " + path);
  char hash[32];
  std::snprintf(hash, sizeof(hash), "%016llx", static_cast<unsigned long long>(layout_hash));
  out << "# layout_hash=" << hash << '\n';
  out << "# source=" << source << '\n';
  for (int id : ids) out << id << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

LoadedSubset load_subset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open subset: " + path);
  LoadedSubset subset;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::istringstream ss(line.substr(1));
      std::string kv;
      while (ss >> kv) {
        if (kv.starts_with("layout_hash="))
          subset.layout_hash = std::strtoull(kv.c_str() + 12, nullptr, 16);
        else if (kv.starts_with("source="))
          subset.source = kv.substr(7);
      }
      continue;
    }
    try {
      subset.ids.push_back(std::stoi(line));
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": bad feature id '" +
                               line + "'");
    }
  }
  std::sort(subset.ids.begin(), subset.ids.end());
  return subset;
}

}  // namespace stylo
