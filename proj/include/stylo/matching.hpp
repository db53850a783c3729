// stylo/matching.hpp
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

#ifndef STYLO_MATCHING_HPP
#define STYLO_MATCHING_HPP

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stylo/features.hpp"

namespace stylo {

/// Profile-based representation: an author is the coordinate-wise mean of
/// their per-tweet feature vectors.
struct Profile {
  std::string author_id;
  FeatureVector vector;
  int tweet_count = 0;
};

/// Coordinate-wise arithmetic mean; inputs must share a registry hash.
FeatureVector mean_vector(std::span<const FeatureVector> vectors);

Profile make_profile(std::string author_id, std::span<const FeatureVector> vectors);

/// Symmetric histogram chi-squared: sum (u-v)^2/(u+v) over coordinates with
/// u+v > 0. Coordinates must be non-negative.
double chi2_distance(std::span<const double> u, std::span<const double> v);

/// Standard cosine; a zero vector against anything scores 0.
double cosine_similarity(std::span<const double> u, std::span<const double> v);

double euclidean_distance(std::span<const double> u, std::span<const double> v);

enum class Measure { chi2, cosine, euclidean };
enum class Polarity { distance, similarity };

Measure measure_from_name(std::string_view name);  // throws on unknown
std::string_view measure_name(Measure measure);
Polarity polarity_of(Measure measure);

/// Score restricted to the given registry ids, or the full vectors when
/// subset is empty.
double score(Measure measure, std::span<const double> u, std::span<const double> v,
             std::span<const int> subset = {});

struct TestLabel {
  std::string author_id;  // true author
  int group_index = 0;

  bool operator==(const TestLabel&) const = default;
};

struct TestSample {
  TestLabel label;
  FeatureVector vector;
};

/// Full cross-comparison of test vectors against enrolled profiles.
struct ScoreMatrix {
  std::vector<TestLabel> rows;
  std::vector<std::string> cols;  // enrolled author ids
  std::vector<double> values;     // row-major, rows.size() x cols.size()
  Polarity polarity = Polarity::distance;

  double at(std::size_t r, std::size_t c) const { return values[r * cols.size() + c]; }
  double& at(std::size_t r, std::size_t c) { return values[r * cols.size() + c]; }

  /// CSV with a header row of author ids and a first column of test labels
  /// (author#group); the sidecar JSON manifest records the polarity.
  void save_csv(const std::string& path, const std::string& manifest_path) const;
};

ScoreMatrix score_all(std::span<const TestSample> tests, std::span<const Profile> profiles,
                      Measure measure, std::span<const int> subset = {}, int threads = 1);

}  // namespace stylo

#endif  // STYLO_MATCHING_HPP
