// tests/unit/test_evaluation.cpp
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

#include <algorithm>
#include <cmath>

#include "stylo/evaluation.hpp"
#include "stylo/rng.hpp"
#include "stylo/synthetic.hpp"

using namespace stylo;

namespace {

ScoreMatrix matrix_from(std::vector<TestLabel> rows, std::vector<std::string> cols,
                        std::vector<double> values,
                        Polarity polarity = Polarity::distance) {
  ScoreMatrix m;
  m.rows = std::move(rows);
  m.cols = std::move(cols);
  m.values = std::move(values);
  m.polarity = polarity;
  return m;
}

ScoreMatrix random_matrix(Rng& rng, int rows_per_author, int authors) {
  std::vector<std::string> cols;
  for (int a = 0; a < authors; ++a) cols.push_back("a" + std::to_string(a));
  ScoreMatrix m;
  m.cols = cols;
  m.polarity = Polarity::distance;
  for (int a = 0; a < authors; ++a) {
    for (int g = 0; g < rows_per_author; ++g) {
      m.rows.push_back({cols[a], g});
      for (int c = 0; c < authors; ++c) m.values.push_back(rng.uniform(0.0, 1.0));
    }
  }
  return m;
}

/// Brute-force EER: recount both error rates from scratch at every threshold
/// in the union, find the sign change, interpolate at the crossing.
double eer_oracle(const ScoreSet& s) {
  const double sign = s.polarity == Polarity::distance ? 1.0 : -1.0;
  std::vector<double> thresholds;
  for (double x : s.mated) thresholds.push_back(sign * x);
  for (double x : s.non_mated) thresholds.push_back(sign * x);
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  auto rates = [&](double t, bool infinite_low, bool infinite_high) {
    if (infinite_low) return std::pair<double, double>(0.0, 1.0);
    if (infinite_high) return std::pair<double, double>(1.0, 0.0);
    int accepted_nm = 0, rejected_m = 0;
    for (double x : s.non_mated)
      if (sign * x < t) ++accepted_nm;
    for (double x : s.mated)
      if (sign * x >= t) ++rejected_m;
    return std::pair<double, double>(
        accepted_nm / static_cast<double>(s.non_mated.size()),
        rejected_m / static_cast<double>(s.mated.size()));
  };

  double prev_fmr = 0.0, prev_fnmr = 1.0;
  for (std::size_t i = 0; i <= thresholds.size() + 1; ++i) {
    auto [fmr, fnmr] =
        rates(i >= 1 && i <= thresholds.size() ? thresholds[i - 1] : 0.0, i == 0,
              i == thresholds.size() + 1);
    const double d = fmr - fnmr;
    if (d == 0.0) return 0.5 * (fmr + fnmr);
    if (d > 0.0) {
      const double d_prev = prev_fmr - prev_fnmr;
      const double alpha = -d_prev / (d - d_prev);
      return prev_fmr + alpha * (fmr - prev_fmr);
    }
    prev_fmr = fmr;
    prev_fnmr = fnmr;
  }
  return 1.0;
}

}  // namespace

TEST_SUITE("evaluation") {

TEST_CASE("cmc by hand") {
  // single enrolled author: curve is [1.0] whatever the scores
  auto single = matrix_from({{"a", 0}}, {"a"}, {0.7});
  CHECK(cmc(single).values == std::vector<double>{1.0});

  // distances (0.1 true, 0.5, 0.9) -> rank 1
  auto best = matrix_from({{"a", 0}}, {"a", "b", "c"}, {0.1, 0.5, 0.9});
  CHECK(row_ranks(best) == std::vector<int>{1});

  // tie with another candidate is pessimistic: rank 2
  auto tie = matrix_from({{"a", 0}}, {"a", "b"}, {0.5, 0.5});
  CHECK(row_ranks(tie) == std::vector<int>{2});
  CHECK(cmc(tie).values == std::vector<double>{0.0, 1.0});

  // similarity polarity ranks the other way
  auto sim = matrix_from({{"a", 0}}, {"a", "b"}, {0.9, 0.2}, Polarity::similarity);
  CHECK(row_ranks(sim) == std::vector<int>{1});

  auto missing = matrix_from({{"zz", 0}}, {"a"}, {0.1});
  CHECK_THROWS_AS(cmc(missing), std::invalid_argument);
}

TEST_CASE("cmc is monotone and ends at 1 on random matrices") {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int authors = 1 + static_cast<int>(rng.below(20));
    ScoreMatrix m = random_matrix(rng, 1 + static_cast<int>(rng.below(3)), authors);
    CmcCurve curve = cmc(m);
    REQUIRE(curve.values.size() == static_cast<std::size_t>(authors));
    for (std::size_t i = 1; i < curve.values.size(); ++i)
      CHECK(curve.values[i] >= curve.values[i - 1]);
    CHECK(curve.values.back() == doctest::Approx(1.0));
  }
}

TEST_CASE("rank_n bounds") {
  CmcCurve curve{{0.25, 0.5, 1.0}};
  CHECK(rank_n(curve, 1) == 0.25);
  CHECK(rank_n(curve, 3) == 1.0);
  CHECK(rank_n(curve, 1) <= rank_n(curve, 2));
  CHECK_THROWS_AS(rank_n(curve, 0), std::out_of_range);
  CHECK_THROWS_AS(rank_n(curve, 4), std::out_of_range);
}

TEST_CASE("split_scores partitions the matrix") {
  auto m = matrix_from({{"a", 0}, {"b", 0}, {"a", 1}}, {"a", "b", "c"},
                       {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9});
  ScoreSet s = split_scores(m);
  CHECK(s.polarity == m.polarity);
  CHECK(s.mated == std::vector<double>{0.1, 0.5, 0.7});
  CHECK(s.mated.size() + s.non_mated.size() == m.rows.size() * m.cols.size());

  auto one = matrix_from({{"a", 0}}, {"a"}, {0.3});
  ScoreSet lone = split_scores(one);
  CHECK(lone.mated.size() == 1);
  CHECK(lone.non_mated.empty());
  CHECK_THROWS_AS(eer(lone), std::invalid_argument);
}

TEST_CASE("eer by hand") {
  // perfectly separated distances
  ScoreSet sep{{0.1, 0.2}, {0.8, 0.9}, Polarity::distance};
  CHECK(eer(sep) == 0.0);

  // identical multisets: pure chance
  ScoreSet same{{0.1, 0.5}, {0.1, 0.5}, Polarity::distance};
  CHECK(eer(same) == doctest::Approx(0.5));

  // crossing case swept by hand over thresholds .1 .2 .3 .4: at t=.3 both
  // error rates are 1/2
  ScoreSet cross{{0.1, 0.4}, {0.3, 0.2}, Polarity::distance};
  CHECK(eer(cross) == doctest::Approx(0.5));
}

TEST_CASE("eer matches the brute-force oracle") {
  Rng rng(1234);
  for (int trial = 0; trial < 300; ++trial) {
    ScoreSet s;
    s.polarity = rng.unit() < 0.5 ? Polarity::distance : Polarity::similarity;
    const int nm = 1 + static_cast<int>(rng.below(40));
    const int nn = 1 + static_cast<int>(rng.below(40));
    const double shift = s.polarity == Polarity::distance ? 0.3 : -0.3;
    for (int i = 0; i < nm; ++i) s.mated.push_back(rng.uniform(0.0, 1.0));
    for (int i = 0; i < nn; ++i) s.non_mated.push_back(shift + rng.uniform(0.0, 1.0));
    // occasional exact ties across the two sides
    if (nm > 1 && nn > 1 && rng.unit() < 0.5) s.non_mated[0] = s.mated[0];
    CHECK(eer(s) == doctest::Approx(eer_oracle(s)).epsilon(1e-12));
  }
}

TEST_CASE("det curve endpoints and point count") {
  ScoreSet s{{0.1, 0.3}, {0.2, 0.4, 0.2}, Polarity::distance};
  DetCurve curve = det_curve(s);
  // distinct thresholds: .1 .2 .3 .4 -> 4 + 2 endpoint rows
  CHECK(curve.points.size() == 6);
  CHECK(curve.points.front() == std::array<double, 2>{0.0, 1.0});
  CHECK(curve.points.back() == std::array<double, 2>{1.0, 0.0});
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    CHECK(curve.points[i][0] >= curve.points[i - 1][0]);  // FMR grows
    CHECK(curve.points[i][1] <= curve.points[i - 1][1]);  // FNMR falls
  }

  ScoreSet same{{0.5}, {0.5}, Polarity::distance};
  DetCurve knot = det_curve(same);
  bool through_half = false;
  double prev_fmr = 0, prev_fnmr = 1;
  for (auto [fmr, fnmr] : knot.points) {
    // the (0.5, 0.5) point lies on some segment of the locus
    if ((prev_fmr <= 0.5 && 0.5 <= fmr) && (fnmr <= 0.5 && 0.5 <= prev_fnmr))
      through_half = true;
    prev_fmr = fmr;
    prev_fnmr = fnmr;
  }
  CHECK(through_half);
}

TEST_CASE("polarity flip and column permutation leave cmc and eer unchanged") {
  Rng rng(55);
  for (int trial = 0; trial < 100; ++trial) {
    ScoreMatrix m = random_matrix(rng, 2, 2 + static_cast<int>(rng.below(8)));
    CmcCurve base_cmc = cmc(m);
    double base_eer = eer(split_scores(m));

    ScoreMatrix flipped = m;
    flipped.polarity = Polarity::similarity;
    for (double& v : flipped.values) v = -v;
    CHECK(cmc(flipped).values == base_cmc.values);
    CHECK(eer(split_scores(flipped)) == base_eer);

    // permute enrolled columns
    ScoreMatrix permuted = m;
    std::vector<std::size_t> order(m.cols.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    for (std::size_t c = 0; c < order.size(); ++c) {
      permuted.cols[c] = m.cols[order[c]];
      for (std::size_t r = 0; r < m.rows.size(); ++r)
        permuted.at(r, c) = m.at(r, order[c]);
    }
    CHECK(cmc(permuted).values == base_cmc.values);
    CHECK(eer(split_scores(permuted)) == base_eer);
  }
}

TEST_CASE("feature table drops deleted tweets") {
  Corpus corpus;
  corpus.authors["a"] = {{"a", "1", 0, "hello there"},
                         {"a", "2", 1, "RT @x gone"},
                         {"a", "3", 2, "back again"}};
  RegistryConfig config;
  FeatureExtractor extractor(build_registry(config, {}), {}, PosTagger::builtin());
  FeatureTable table = build_feature_table(corpus, extractor);
  CHECK(table.by_author.at("a").size() == 2);
  CHECK(table.registry_hash == extractor.registry().layout_hash());
}

TEST_CASE("run_experiment on a separable synthetic corpus") {
  SynthConfig config;
  config.authors = 8;
  config.tweets_per_author = 60;
  config.seed = 99;
  Corpus corpus = synth_corpus(config);

  RegistryConfig rc;
  FeatureExtractor extractor(build_registry(rc, {}), {}, PosTagger::builtin());
  FeatureTable table = build_feature_table(corpus, extractor, 2);

  ExperimentConfig ec;
  ec.plan = {20, 10, 8, 1, 7};
  ec.measure = Measure::chi2;
  ec.subset_name = "unigrams99";
  ec.subset_ids = named_subset(extractor.registry(), "unigrams99");
  ExperimentReport report = run_experiment(table, ec, 2);
  REQUIRE_FALSE(report.skipped);
  REQUIRE(report.folds.size() == 1);
  CHECK(report.mean_rank1 > 0.5);  // authors are built to be separable
  CHECK(report.folds[0].cmc.values.back() == doctest::Approx(1.0));
  REQUIRE(report.mean_eer.has_value());
  CHECK(*report.mean_eer < 0.5);

  // same seed, same numbers, any thread count
  ExperimentReport again = run_experiment(table, ec, 7);
  CHECK(again.mean_rank1 == report.mean_rank1);
  CHECK(again.mean_rank5 == report.mean_rank5);
  CHECK(*again.mean_eer == *report.mean_eer);

  // grid point too large for the corpus is skipped with a warning
  ExperimentConfig big = ec;
  big.plan.author_count = 500;
  ExperimentReport skipped = run_experiment(table, big);
  CHECK(skipped.skipped);
  REQUIRE_FALSE(skipped.warnings.empty());

  auto reports = run_protocol(table, {10, 20}, {5}, {8}, 1, 7, Measure::chi2,
                              "unigrams99", ec.subset_ids, 2);
  CHECK(reports.size() == 2);
}

TEST_CASE("time permanence on a stationary corpus") {
  SynthConfig config;
  config.authors = 6;
  config.tweets_per_author = 80;
  config.seed = 5;
  Corpus corpus = synth_corpus(config);
  RegistryConfig rc;
  FeatureExtractor extractor(build_registry(rc, {}), {}, PosTagger::builtin());
  FeatureTable table = build_feature_table(corpus, extractor, 2);

  PermanenceReport report = time_permanence(table, 20, 5, Measure::chi2, "unigrams99",
                                            named_subset(extractor.registry(), "unigrams99"), 2);
  CHECK(report.author_count == 6);
  int total_groups = 0;
  for (int t = 0; t < 3; ++t) total_groups += report.test_counts[t];
  // thirds partition the groups: sizes differ by at most 1 per author
  CHECK(report.test_counts[0] >= report.test_counts[1]);
  CHECK(report.test_counts[1] >= report.test_counts[2]);
  CHECK(total_groups > 0);
  for (int t = 0; t < 3; ++t) CHECK(report.per_third[t].values.back() ==
                                    doctest::Approx(1.0));
}

}  // TEST_SUITE
