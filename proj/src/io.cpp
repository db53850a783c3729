// stylo/io.cpp
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

#include "stylo/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace stylo {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write: " + path);
  return out;
}

}  // namespace

void save_cmc_csv(const CmcCurve& curve, const std::string& path) {
  auto out = open_out(path);
  out << "rank,value\n";
  char buf[32];
  for (std::size_t i = 0; i < curve.values.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", curve.values[i]);
    out << (i + 1) << ',' << buf << '\n';
  }
}

void save_det_csv(const DetCurve& curve, const std::string& path) {
  auto out = open_out(path);
  out << "fmr,fnmr\n";
  char a[32], b[32];
  for (const auto& point : curve.points) {
    std::snprintf(a, sizeof(a), "%.17g", point[0]);
    std::snprintf(b, sizeof(b), "%.17g", point[1]);
    out << a << ',' << b << '\n';
  }
}

nlohmann::json report_to_json(const ExperimentReport& report) {
  nlohmann::json j;
  j["config"] = {
      {"train", report.config.plan.enroll_count},
      {"test", report.config.plan.group_size},
      {"authors", report.config.plan.author_count},
      {"folds", report.config.plan.fold_count},
      {"seed", report.config.plan.seed},
      {"measure", std::string(measure_name(report.config.measure))},
      {"subset", report.config.subset_name},
      {"subset_size", report.config.subset_ids.size()},
  };
  j["skipped"] = report.skipped;
  j["warnings"] = report.warnings;
  if (report.skipped) return j;
  j["mean"] = {{"rank1", report.mean_rank1}, {"rank5", report.mean_rank5}};
  if (report.mean_eer) j["mean"]["eer"] = *report.mean_eer;
  j["folds"] = nlohmann::json::array();
  for (const auto& fold : report.folds) {
    nlohmann::json f;
    f["fold"] = fold.fold;
    f["rank1"] = fold.rank1;
    f["rank5"] = fold.rank5;
    f["tests"] = fold.test_count;
    if (fold.eer) f["eer"] = *fold.eer;
    j["folds"].push_back(std::move(f));
  }
  j["timings"] = {{"wall_ms", report.wall_ms}};
  return j;
}

nlohmann::json permanence_to_json(const PermanenceReport& report) {
  nlohmann::json j;
  j["config"] = {
      {"train", report.enroll_count},
      {"test", report.group_size},
      {"subset", report.subset_name},
  };
  j["authors"] = report.author_count;
  j["excluded_authors"] = report.excluded_authors;
  j["thirds"] = nlohmann::json::array();
  for (int t = 0; t < 3; ++t) {
    j["thirds"].push_back({{"third", t + 1},
                           {"rank5", report.rank5[t]},
                           {"tests", report.test_counts[t]}});
  }
  j["rank5_drop_1_to_3"] = report.rank5[0] - report.rank5[2];
  return j;
}

nlohmann::json normalized_tweet_to_json(const NormalizedTweet& tweet) {
  return nlohmann::json{
      {"text", tweet.text},
      {"url_count", tweet.url_count},
      {"mention_count", tweet.mention_count},
      {"hashtag_count", tweet.hashtag_count},
      {"quote_count", tweet.quote_count},
      {"deleted", tweet.deleted},
  };
}

}  // namespace stylo
