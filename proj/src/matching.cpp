// stylo/matching.cpp
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

#include "stylo/matching.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "stylo/csv.hpp"
#include "stylo/parallel.hpp"

namespace stylo {

namespace {

void check_lengths(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size())
    throw std::invalid_argument("vector length mismatch: " + std::to_string(u.size()) +
                                " vs " + std::to_string(v.size()));
}

}  // namespace

FeatureVector mean_vector(std::span<const FeatureVector> vectors) {
  if (vectors.empty()) throw std::invalid_argument("mean_vector: empty input");
  const std::size_t dim = vectors.front().values.size();
  const std::uint64_t hash = vectors.front().registry_hash;
  FeatureVector out;
  out.registry_hash = hash;
  out.values.assign(dim, 0.0);
  for (const FeatureVector& v : vectors) {
    if (v.registry_hash != hash || v.values.size() != dim)
      throw std::invalid_argument("mean_vector: registry mismatch");
    for (std::size_t i = 0; i < dim; ++i) out.values[i] += v.values[i];
  }
  const double scale = 1.0 / static_cast<double>(vectors.size());
  for (double& x : out.values) x *= scale;
  return out;
}

Profile make_profile(std::string author_id, std::span<const FeatureVector> vectors) {
  Profile p;
  p.author_id = std::move(author_id);
  p.vector = mean_vector(vectors);
  p.tweet_count = static_cast<int>(vectors.size());
  return p;
}

double chi2_distance(std::span<const double> u, std::span<const double> v) {
  check_lengths(u, v);
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] < 0.0 || v[i] < 0.0)
      throw std::invalid_argument("chi2_distance: negative coordinate");
    const double denom = u[i] + v[i];
    if (denom > 0.0) {
      const double diff = u[i] - v[i];
      sum += diff * diff / denom;
    }
  }
  return sum;
}

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
  check_lengths(u, v);
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

double euclidean_distance(std::span<const double> u, std::span<const double> v) {
  check_lengths(u, v);
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double diff = u[i] - v[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

Measure measure_from_name(std::string_view name) {
  if (name == "chi2") return Measure::chi2;
  if (name == "cosine") return Measure::cosine;
  if (name == "euclidean") return Measure::euclidean;
  throw std::invalid_argument("unknown measure: " + std::string(name));
}

std::string_view measure_name(Measure measure) {
  switch (measure) {
    case Measure::chi2: return "chi2";
    case Measure::cosine: return "cosine";
    case Measure::euclidean: return "euclidean";
  }
  return "?";
}

Polarity polarity_of(Measure measure) {
  return measure == Measure::cosine ? Polarity::similarity : Polarity::distance;
}

double score(Measure measure, std::span<const double> u, std::span<const double> v,
             std::span<const int> subset) {
  thread_local std::vector<double> su, sv;
  if (!subset.empty()) {
    check_lengths(u, v);
    su.resize(subset.size());
    sv.resize(subset.size());
    for (std::size_t i = 0; i < subset.size(); ++i) {
      const std::size_t id = static_cast<std::size_t>(subset[i]);
      if (id >= u.size()) throw std::invalid_argument("subset id out of range");
      su[i] = u[id];
      sv[i] = v[id];
    }
    u = su;
    v = sv;
  }
  switch (measure) {
    case Measure::chi2: return chi2_distance(u, v);
    case Measure::cosine: return cosine_similarity(u, v);
    case Measure::euclidean: return euclidean_distance(u, v);
  }
  throw std::logic_error("unreachable");
}

ScoreMatrix score_all(std::span<const TestSample> tests, std::span<const Profile> profiles,
                      Measure measure, std::span<const int> subset, int threads) {
  ScoreMatrix m;
  m.polarity = polarity_of(measure);
  m.rows.reserve(tests.size());
  for (const TestSample& t : tests) m.rows.push_back(t.label);
  m.cols.reserve(profiles.size());
  for (const Profile& p : profiles) m.cols.push_back(p.author_id);
  m.values.assign(tests.size() * profiles.size(), 0.0);
  parallel_for(tests.size(), threads, [&](std::size_t r) {
    for (std::size_t c = 0; c < profiles.size(); ++c) {
      m.at(r, c) =
          score(measure, tests[r].vector.values, profiles[c].vector.values, subset);
    }
  });
  return m;
}

void ScoreMatrix::save_csv(const std::string& path, const std::string& manifest_path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write score matrix: " + path);
  std::vector<std::string> header{"test"};
  header.insert(header.end(), cols.begin(), cols.end());
  csv::write_row(out, header);
  char buf[32];
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::vector<std::string> row{rows[r].author_id + "#" + std::to_string(rows[r].group_index)};
    for (std::size_t c = 0; c < cols.size(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", at(r, c));
      row.emplace_back(buf);
    }
    csv::write_row(out, row);
  }
  nlohmann::json manifest;
  manifest["polarity"] = polarity == Polarity::distance ? "distance" : "similarity";
  manifest["rows"] = rows.size();
  manifest["cols"] = cols.size();
  std::ofstream mout(manifest_path, std::ios::binary);
  if (!mout) throw std::runtime_error("cannot write manifest: " + manifest_path);
  mout << manifest.dump(2) << '\n';
}

}  // namespace stylo
