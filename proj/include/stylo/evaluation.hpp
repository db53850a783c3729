// stylo/evaluation.hpp
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

#ifndef STYLO_EVALUATION_HPP
#define STYLO_EVALUATION_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stylo/corpus.hpp"
#include "stylo/matching.hpp"

namespace stylo {

/// Identification accuracy by rank; values[N-1] is the probability that the
/// true author is within the best N candidates. Non-decreasing, ends at 1.
struct CmcCurve {
  std::vector<double> values;
};

/// Rank of each test row's true author with pessimistic tie handling:
/// 1 + (strictly better candidates) + (equal-scored other candidates).
std::vector<int> row_ranks(const ScoreMatrix& matrix);

CmcCurve cmc(const ScoreMatrix& matrix);

double rank_n(const CmcCurve& curve, int n);  // throws when n is out of range

struct ScoreSet {
  std::vector<double> mated;
  std::vector<double> non_mated;
  Polarity polarity = Polarity::distance;
};

/// mated = each row's true-author score, non_mated = everything else.
ScoreSet split_scores(const ScoreMatrix& matrix);

/// Equal error rate from a threshold sweep over the sorted score union
/// (accept = score strictly better than threshold), linearly interpolated
/// at the FMR/FNMR crossing.
double eer(const ScoreSet& scores);

/// (false-match rate, false-non-match rate) locus over the sweep, with the
/// (0,1) and (1,0) endpoints; one point per distinct threshold plus two.
struct DetCurve {
  std::vector<std::array<double, 2>> points;
};

DetCurve det_curve(const ScoreSet& scores);

/// Per-tweet feature vectors for every author, normalization-deleted tweets
/// removed, chronological order kept.
struct FeatureTable {
  std::map<std::string, std::vector<FeatureVector>> by_author;
  std::uint64_t registry_hash = 0;

  std::vector<std::string> eligible_authors(int enroll_count, int group_size) const;
};

class FeatureExtractor;

FeatureTable build_feature_table(const Corpus& corpus, const FeatureExtractor& extractor,
                                 int threads = 1);

struct ExperimentConfig {
  SplitPlan plan;
  Measure measure = Measure::chi2;
  std::string subset_name = "all";
  std::vector<int> subset_ids;  // empty = full registry
};

struct FoldResult {
  int fold = 0;
  double rank1 = 0.0;
  double rank5 = 0.0;
  std::optional<double> eer;  // absent when undefined (single author)
  CmcCurve cmc;
  DetCurve det;
  int test_count = 0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<FoldResult> folds;
  double mean_rank1 = 0.0;
  double mean_rank5 = 0.0;
  std::optional<double> mean_eer;
  double wall_ms = 0.0;
  std::vector<std::string> warnings;
  bool skipped = false;  // grid point had too few eligible authors
};

/// One grid point of the enrollment/test protocol: sample k disjoint folds
/// of M authors, build mean profiles from the first J vectors, score K-sized
/// test-group means against every profile, aggregate CMC/EER over folds.
ExperimentReport run_experiment(const FeatureTable& table, const ExperimentConfig& config,
                                int threads = 1);

/// Full grid driver: one experiment per (J, K) pair per M. Ineligible grid
/// points are reported as skipped, not dropped.
std::vector<ExperimentReport> run_protocol(const FeatureTable& table,
                                           const std::vector<int>& enroll_grid,
                                           const std::vector<int>& group_grid,
                                           const std::vector<int>& author_grid,
                                           int fold_count, std::uint64_t seed,
                                           Measure measure, const std::string& subset_name,
                                           const std::vector<int>& subset_ids,
                                           int threads = 1);

struct PermanenceReport {
  int enroll_count = 0;
  int group_size = 0;
  std::string subset_name;
  std::array<CmcCurve, 3> per_third;
  std::array<double, 3> rank5{};
  std::array<int, 3> test_counts{};
  int author_count = 0;
  std::vector<std::string> excluded_authors;  // fewer than 3 test groups
};

/// Time-permanence analysis: test groups of every author are divided into
/// three chronological parts and each part is evaluated separately against
/// the same enrollment profiles.
PermanenceReport time_permanence(const FeatureTable& table, int enroll_count,
                                 int group_size, Measure measure,
                                 const std::string& subset_name,
                                 const std::vector<int>& subset_ids, int threads = 1);

}  // namespace stylo

#endif  // STYLO_EVALUATION_HPP
