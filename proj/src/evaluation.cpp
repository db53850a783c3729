// stylo/evaluation.cpp
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

#include "stylo/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "stylo/parallel.hpp"
#include "stylo/preprocess.hpp"

namespace stylo {

namespace {

bool better(Polarity polarity, double a, double b) {
  return polarity == Polarity::distance ? a < b : a > b;
}

struct SweepPoint {
  double fmr;
  double fnmr;
};

/// (FMR, FNMR) locus over thresholds -inf, each distinct score, +inf.
/// Similarity scores are negated so the sweep always runs in distance
/// direction; accept = score strictly better than the threshold.
std::vector<SweepPoint> threshold_sweep(const ScoreSet& scores) {
  if (scores.mated.empty() || scores.non_mated.empty())
    throw std::invalid_argument("threshold sweep needs mated and non-mated scores");
  const double sign = scores.polarity == Polarity::distance ? 1.0 : -1.0;
  std::vector<double> mated, non_mated;
  mated.reserve(scores.mated.size());
  non_mated.reserve(scores.non_mated.size());
  for (double s : scores.mated) mated.push_back(sign * s);
  for (double s : scores.non_mated) non_mated.push_back(sign * s);
  std::sort(mated.begin(), mated.end());
  std::sort(non_mated.begin(), non_mated.end());

  std::vector<double> thresholds;
  thresholds.reserve(mated.size() + non_mated.size());
  thresholds.insert(thresholds.end(), mated.begin(), mated.end());
  thresholds.insert(thresholds.end(), non_mated.begin(), non_mated.end());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  const double nm = static_cast<double>(non_mated.size());
  const double m = static_cast<double>(mated.size());
  std::vector<SweepPoint> points;
  points.reserve(thresholds.size() + 2);
  points.push_back({0.0, 1.0});
  for (double t : thresholds) {
    // accepted non-mated: score < t; rejected mated: score >= t
    double accepted_nm = static_cast<double>(
        std::lower_bound(non_mated.begin(), non_mated.end(), t) - non_mated.begin());
    double kept_m = static_cast<double>(
        std::lower_bound(mated.begin(), mated.end(), t) - mated.begin());
    points.push_back({accepted_nm / nm, (m - kept_m) / m});
  }
  points.push_back({1.0, 0.0});
  return points;
}

}  // namespace

std::vector<int> row_ranks(const ScoreMatrix& matrix) {
  std::vector<int> ranks(matrix.rows.size());
  for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
    auto col = std::find(matrix.cols.begin(), matrix.cols.end(), matrix.rows[r].author_id);
    if (col == matrix.cols.end())
      throw std::invalid_argument("true author '" + matrix.rows[r].author_id +
                                  "' is not enrolled");
    const std::size_t truth = static_cast<std::size_t>(col - matrix.cols.begin());
    const double own = matrix.at(r, truth);
    int rank = 1;
    for (std::size_t c = 0; c < matrix.cols.size(); ++c) {
      if (c == truth) continue;
      const double s = matrix.at(r, c);
      if (better(matrix.polarity, s, own) || s == own) ++rank;  // pessimistic ties
    }
    ranks[r] = rank;
  }
  return ranks;
}

CmcCurve cmc(const ScoreMatrix& matrix) {
  if (matrix.rows.empty() || matrix.cols.empty())
    throw std::invalid_argument("cmc: empty score matrix");
  auto ranks = row_ranks(matrix);
  CmcCurve curve;
  curve.values.assign(matrix.cols.size(), 0.0);
  for (int rank : ranks) curve.values[static_cast<std::size_t>(rank) - 1] += 1.0;
  double cumulative = 0.0;
  for (double& v : curve.values) {
    cumulative += v;
    v = cumulative / static_cast<double>(ranks.size());
  }
  return curve;
}

double rank_n(const CmcCurve& curve, int n) {
  if (n < 1 || static_cast<std::size_t>(n) > curve.values.size())
    throw std::out_of_range("rank_n: rank " + std::to_string(n) + " out of range");
  return curve.values[static_cast<std::size_t>(n) - 1];
}

ScoreSet split_scores(const ScoreMatrix& matrix) {
  ScoreSet set;
  set.polarity = matrix.polarity;
  for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
    auto col = std::find(matrix.cols.begin(), matrix.cols.end(), matrix.rows[r].author_id);
    if (col == matrix.cols.end())
      throw std::invalid_argument("true author '" + matrix.rows[r].author_id +
                                  "' is not enrolled");
    const std::size_t truth = static_cast<std::size_t>(col - matrix.cols.begin());
    for (std::size_t c = 0; c < matrix.cols.size(); ++c) {
      (c == truth ? set.mated : set.non_mated).push_back(matrix.at(r, c));
    }
  }
  return set;
}

double eer(const ScoreSet& scores) {
  auto points = threshold_sweep(scores);
  // FMR-FNMR is non-decreasing from -1 to +1 along the sweep; interpolate
  // linearly inside the first bracketing segment.
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d = points[i].fmr - points[i].fnmr;
    if (d == 0.0) return 0.5 * (points[i].fmr + points[i].fnmr);
    if (d > 0.0) {
      const double d_prev = points[i - 1].fmr - points[i - 1].fnmr;
      const double alpha = -d_prev / (d - d_prev);
      return points[i - 1].fmr + alpha * (points[i].fmr - points[i - 1].fmr);
    }
  }
  throw std::logic_error("eer: sweep had no crossing");
}

DetCurve det_curve(const ScoreSet& scores) {
  DetCurve curve;
  for (const SweepPoint& p : threshold_sweep(scores)) curve.points.push_back({p.fmr, p.fnmr});
  return curve;
}

std::vector<std::string> FeatureTable::eligible_authors(int enroll_count,
                                                        int group_size) const {
  std::vector<std::string> out;
  const std::size_t need =
      static_cast<std::size_t>(enroll_count) + static_cast<std::size_t>(group_size);
  for (const auto& [author, vectors] : by_author) {
    if (vectors.size() >= need) out.push_back(author);
  }
  return out;
}

FeatureTable build_feature_table(const Corpus& corpus, const FeatureExtractor& extractor,
                                 int threads) {
  std::vector<const std::vector<Tweet>*> tweet_lists;
  std::vector<std::string> authors;
  for (const auto& [author, tweets] : corpus.authors) {
    authors.push_back(author);
    tweet_lists.push_back(&tweets);
  }
  std::vector<std::vector<FeatureVector>> rows(authors.size());
  parallel_for(authors.size(), threads, [&](std::size_t i) {
    rows[i].reserve(tweet_lists[i]->size());
    for (const Tweet& tweet : *tweet_lists[i]) {
      NormalizedTweet norm = normalize(tweet.raw_text);
      if (norm.deleted) continue;
      rows[i].push_back(extractor.extract(norm));
    }
  });
  FeatureTable table;
  table.registry_hash = extractor.registry().layout_hash();
  for (std::size_t i = 0; i < authors.size(); ++i)
    table.by_author.emplace(std::move(authors[i]), std::move(rows[i]));
  return table;
}

namespace {

std::vector<Profile> make_profiles(const FeatureTable& table,
                                   const std::vector<std::string>& authors,
                                   int enroll_count, int threads) {
  std::vector<Profile> profiles(authors.size());
  parallel_for(authors.size(), threads, [&](std::size_t i) {
    const auto& vectors = table.by_author.at(authors[i]);
    std::span<const FeatureVector> head(vectors.data(),
                                        static_cast<std::size_t>(enroll_count));
    profiles[i] = make_profile(authors[i], head);
  });
  return profiles;
}

std::vector<TestSample> make_tests(const FeatureTable& table,
                                   const std::vector<std::string>& authors,
                                   int enroll_count, int group_size) {
  std::vector<TestSample> tests;
  for (const auto& author : authors) {
    const auto& vectors = table.by_author.at(author);
    auto split = split_indices(vectors.size(), enroll_count, group_size);
    if (!split) continue;
    int group_index = 0;
    for (auto [begin, end] : split->groups) {
      std::span<const FeatureVector> group(vectors.data() + begin, end - begin);
      tests.push_back({{author, group_index++}, mean_vector(group)});
    }
  }
  return tests;
}

FoldResult evaluate_fold(int fold, const FeatureTable& table,
                         std::vector<std::string> authors, const ExperimentConfig& config,
                         int threads) {
  std::sort(authors.begin(), authors.end());
  auto profiles = make_profiles(table, authors, config.plan.enroll_count, threads);
  auto tests = make_tests(table, authors, config.plan.enroll_count, config.plan.group_size);
  auto matrix = score_all(tests, profiles, config.measure, config.subset_ids, threads);
  FoldResult result;
  result.fold = fold;
  result.test_count = static_cast<int>(tests.size());
  result.cmc = cmc(matrix);
  result.rank1 = result.cmc.values.front();
  result.rank5 = rank_n(result.cmc, std::min<int>(5, static_cast<int>(authors.size())));
  if (authors.size() >= 2) {
    auto scores = split_scores(matrix);
    result.eer = eer(scores);
    result.det = det_curve(scores);
  }
  return result;
}

}  // namespace

ExperimentReport run_experiment(const FeatureTable& table, const ExperimentConfig& config,
                                int threads) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport report;
  report.config = config;
  const SplitPlan& plan = config.plan;

  auto eligible = table.eligible_authors(plan.enroll_count, plan.group_size);
  const std::size_t need =
      static_cast<std::size_t>(plan.author_count) * static_cast<std::size_t>(plan.fold_count);
  if (plan.author_count < 1 || eligible.size() < need) {
    report.skipped = true;
    report.warnings.push_back(
        "skipped: " + std::to_string(eligible.size()) + " eligible authors for J=" +
        std::to_string(plan.enroll_count) + " K=" + std::to_string(plan.group_size) +
        ", need " + std::to_string(need));
    return report;
  }
  auto folds = sample_folds(eligible, plan.author_count, plan.fold_count, plan.seed);
  double sum1 = 0.0, sum5 = 0.0, sum_eer = 0.0;
  bool all_have_eer = true;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    FoldResult result =
        evaluate_fold(static_cast<int>(f), table, folds[f], config, threads);
    sum1 += result.rank1;
    sum5 += result.rank5;
    if (result.eer)
      sum_eer += *result.eer;
    else
      all_have_eer = false;
    report.folds.push_back(std::move(result));
  }
  const double n = static_cast<double>(report.folds.size());
  report.mean_rank1 = sum1 / n;
  report.mean_rank5 = sum5 / n;
  if (all_have_eer) report.mean_eer = sum_eer / n;
  report.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return report;
}

std::vector<ExperimentReport> run_protocol(const FeatureTable& table,
                                           const std::vector<int>& enroll_grid,
                                           const std::vector<int>& group_grid,
                                           const std::vector<int>& author_grid,
                                           int fold_count, std::uint64_t seed,
                                           Measure measure, const std::string& subset_name,
                                           const std::vector<int>& subset_ids,
                                           int threads) {
  std::vector<ExperimentReport> reports;
  for (int authors : author_grid) {
    for (int enroll : enroll_grid) {
      for (int group : group_grid) {
        ExperimentConfig config;
        config.plan = {enroll, group, authors, fold_count, seed};
        config.measure = measure;
        config.subset_name = subset_name;
        config.subset_ids = subset_ids;
        reports.push_back(run_experiment(table, config, threads));
      }
    }
  }
  return reports;
}

PermanenceReport time_permanence(const FeatureTable& table, int enroll_count,
                                 int group_size, Measure measure,
                                 const std::string& subset_name,
                                 const std::vector<int>& subset_ids, int threads) {
  PermanenceReport report;
  report.enroll_count = enroll_count;
  report.group_size = group_size;
  report.subset_name = subset_name;

  std::vector<std::string> included;
  for (const auto& [author, vectors] : table.by_author) {
    auto split = split_indices(vectors.size(), enroll_count, group_size);
    if (!split) continue;
    if (split->groups.size() >= 3)
      included.push_back(author);
    else
      report.excluded_authors.push_back(author);
  }
  if (included.empty())
    throw std::runtime_error("time_permanence: no author has 3 test groups");
  report.author_count = static_cast<int>(included.size());

  auto profiles = make_profiles(table, included, enroll_count, threads);

  for (int third = 0; third < 3; ++third) {
    std::vector<TestSample> tests;
    for (const auto& author : included) {
      const auto& vectors = table.by_author.at(author);
      auto split = split_indices(vectors.size(), enroll_count, group_size);
      auto parts = chronological_thirds(split->groups);
      int group_index = 0;
      for (int p = 0; p < third; ++p) group_index += static_cast<int>(parts[p].size());
      for (auto [begin, end] : parts[third]) {
        std::span<const FeatureVector> group(vectors.data() + begin, end - begin);
        tests.push_back({{author, group_index++}, mean_vector(group)});
      }
    }
    auto matrix = score_all(tests, profiles, measure, subset_ids, threads);
    report.per_third[third] = cmc(matrix);
    report.rank5[third] =
        rank_n(report.per_third[third], std::min<int>(5, report.author_count));
    report.test_counts[third] = static_cast<int>(tests.size());
  }
  return report;
}

}  // namespace stylo
