// stylo/selection.hpp
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

#ifndef STYLO_SELECTION_HPP
#define STYLO_SELECTION_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stylo/evaluation.hpp"

namespace stylo {

struct SelectionStep {
  int step = 0;
  bool removed = false;  // false = forward add, true = backward removal
  int feature_id = -1;
  double criterion = 0.0;
  std::size_t subset_size = 0;
};

struct BestSubset {
  double criterion = 0.0;
  std::vector<int> feature_ids;  // sorted
};

struct SelectionTrace {
  std::vector<SelectionStep> steps;
  /// best_per_size[s] = best subset of size s found so far (index 0 unused).
  std::vector<std::optional<BestSubset>> best_per_size;
  std::size_t criterion_evaluations = 0;

  const BestSubset& best_of_size(std::size_t size) const;
  /// Overall best subset (highest criterion; smallest size breaks ties).
  const BestSubset& overall_best() const;

  /// One JSON object per step.
  void save_jsonl(const std::string& path) const;
};

using CriterionFn = std::function<double(const std::vector<int>&)>;

struct SffsOptions {
  std::size_t max_size = 0;       // stop after the subset reaches this size
  bool backward_step = true;      // disable to get plain SFS
  int threads = 1;
};

/// Sequential forward floating selection. Forward: add the feature with the
/// best criterion. Conditional backward (size > 2): while removing some
/// feature strictly beats the recorded best at the reduced size, remove the
/// best such feature. Ties break toward the lowest feature id; criterion
/// values are cached per subset.
SelectionTrace sffs(std::size_t feature_count, const CriterionFn& criterion,
                    const SffsOptions& options);

/// Rank-1 identification accuracy over a fixed selection corpus: profiles
/// from the first J vectors of every eligible author, K-sized test-group
/// means, restricted to the candidate subset's columns. Profiles and test
/// vectors are prepared once so subset evaluations are cheap.
class Rank1Criterion {
 public:
  Rank1Criterion(const FeatureTable& table, int enroll_count, int group_size,
                 Measure measure, int threads = 1);

  double operator()(const std::vector<int>& subset) const;

  int author_count() const { return static_cast<int>(profiles_.size()); }
  int test_count() const { return static_cast<int>(tests_.size()); }

 private:
  std::vector<Profile> profiles_;
  std::vector<TestSample> tests_;
  std::vector<std::size_t> truth_column_;  // per test row
  Measure measure_;
  int threads_;
};

/// Plain-text subset artifact: `# layout_hash=...` and `# source=...`
/// comments, then one feature id per line.
void save_subset(const std::string& path, const std::vector<int>& ids,
                 std::uint64_t layout_hash, const std::string& source);

struct LoadedSubset {
  std::vector<int> ids;
  std::uint64_t layout_hash = 0;
  std::string source;
};

LoadedSubset load_subset(const std::string& path);

}  // namespace stylo

#endif  // STYLO_SELECTION_HPP
