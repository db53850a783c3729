// tests/unit/test_matching.cpp
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

#include <cmath>

#include "stylo/matching.hpp"
#include "stylo/rng.hpp"

using namespace stylo;

namespace {

FeatureVector vec(std::vector<double> values, std::uint64_t hash = 42) {
  FeatureVector v;
  v.values = std::move(values);
  v.registry_hash = hash;
  return v;
}

std::vector<double> random_nonneg(Rng& rng, std::size_t dim) {
  std::vector<double> v(dim);
  for (double& x : v) x = rng.unit() < 0.15 ? 0.0 : rng.uniform(0.0, 3.0);
  return v;
}

}  // namespace

TEST_SUITE("matching") {

TEST_CASE("profile means") {
  std::vector<FeatureVector> one{vec({1, 2, 3})};
  CHECK(mean_vector(one).values == std::vector<double>{1, 2, 3});

  std::vector<FeatureVector> two{vec({0, 2}), vec({2, 0})};
  CHECK(mean_vector(two).values == std::vector<double>{1, 1});

  std::vector<FeatureVector> copies(5, vec({0.25, 0.5, 0.125}));
  CHECK(mean_vector(copies).values == std::vector<double>{0.25, 0.5, 0.125});

  Profile p = make_profile("alice", two);
  CHECK(p.author_id == "alice");
  CHECK(p.tweet_count == 2);

  CHECK_THROWS_AS(mean_vector({}), std::invalid_argument);
  std::vector<FeatureVector> mismatched{vec({1}, 1), vec({2}, 2)};
  CHECK_THROWS_AS(mean_vector(mismatched), std::invalid_argument);
}

TEST_CASE("chi2 by hand") {
  std::vector<double> u{1, 0}, v{0, 1};
  CHECK(chi2_distance(u, v) == 2.0);  // 1/1 + 1/1
  CHECK(chi2_distance(u, u) == 0.0);
  std::vector<double> zero{0, 0};
  CHECK(chi2_distance(zero, zero) == 0.0);

  // hand-evaluated: (1-3)^2/4 + (2-2)^2/4 + skip + (0-5)^2/5
  std::vector<double> a{1, 2, 0, 0}, b{3, 2, 0, 5};
  CHECK(chi2_distance(a, b) == doctest::Approx(1.0 + 0.0 + 5.0).epsilon(1e-15));

  std::vector<double> neg{-1, 0};
  CHECK_THROWS_AS(chi2_distance(neg, u), std::invalid_argument);
  std::vector<double> shorter{1};
  CHECK_THROWS_AS(chi2_distance(u, shorter), std::invalid_argument);
}

TEST_CASE("cosine and euclidean by hand") {
  std::vector<double> u{1, 0}, v{0, 1}, origin{0, 0}, p{3, 4};
  CHECK(cosine_similarity(u, u) == doctest::Approx(1.0));
  CHECK(cosine_similarity(u, v) == 0.0);
  CHECK(cosine_similarity(origin, u) == 0.0);  // defined to 0 for zero vectors
  CHECK(euclidean_distance(origin, p) == doctest::Approx(5.0));
  CHECK(euclidean_distance(p, p) == 0.0);
  // hand: sqrt((1-4)^2 + (2-6)^2) = 5
  std::vector<double> a{1, 2}, b{4, 6};
  CHECK(euclidean_distance(a, b) == doctest::Approx(5.0));
}

TEST_CASE("metric properties over random non-negative pairs") {
  Rng rng(404);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t dim = 1 + rng.below(8);
    auto u = random_nonneg(rng, dim);
    auto v = random_nonneg(rng, dim);
    const double chi = chi2_distance(u, v);
    CHECK(chi >= 0.0);
    CHECK(chi2_distance(v, u) == chi);
    CHECK(chi2_distance(u, u) == 0.0);
    const double euc = euclidean_distance(u, v);
    CHECK(euc >= 0.0);
    CHECK(euclidean_distance(v, u) == euc);
    const double cos = cosine_similarity(u, v);
    CHECK(cos >= -1.0 - 1e-12);
    CHECK(cos <= 1.0 + 1e-12);
  }
}

TEST_CASE("chi2 scaling keeps the argmin") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto u = random_nonneg(rng, 6);
    auto v = random_nonneg(rng, 6);
    const double c = rng.uniform(0.1, 9.0);
    auto su = u, sv = v;
    for (double& x : su) x *= c;
    for (double& x : sv) x *= c;
    CHECK(chi2_distance(su, sv) == doctest::Approx(c * chi2_distance(u, v)).epsilon(1e-9));
  }
}

TEST_CASE("score_all shape and polarity") {
  std::vector<Profile> profiles{make_profile("a", std::vector<FeatureVector>{vec({1, 0})}),
                                make_profile("b", std::vector<FeatureVector>{vec({0, 1})})};
  std::vector<TestSample> tests{{{"a", 0}, vec({1, 0})},
                                {{"a", 1}, vec({0.5, 0.5})},
                                {{"b", 0}, vec({0, 1})}};
  ScoreMatrix m = score_all(tests, profiles, Measure::chi2);
  CHECK(m.rows.size() == 3);
  CHECK(m.cols == std::vector<std::string>{"a", "b"});
  CHECK(m.polarity == Polarity::distance);
  CHECK(m.at(0, 0) == 0.0);  // identical vectors
  CHECK(m.at(2, 1) == 0.0);

  ScoreMatrix cos = score_all(tests, profiles, Measure::cosine);
  CHECK(cos.polarity == Polarity::similarity);

  // single test, single profile, identical vectors
  std::vector<Profile> one_p{make_profile("x", std::vector<FeatureVector>{vec({2, 3})})};
  std::vector<TestSample> one_t{{{"x", 0}, vec({2, 3})}};
  ScoreMatrix single = score_all(one_t, one_p, Measure::chi2);
  CHECK(single.values == std::vector<double>{0.0});
}

TEST_CASE("subset selection commutes with scoring") {
  Rng rng(8);
  std::vector<int> subset{1, 3, 4};
  for (int trial = 0; trial < 200; ++trial) {
    auto u = random_nonneg(rng, 6);
    auto v = random_nonneg(rng, 6);
    std::vector<double> su, sv;
    for (int id : subset) {
      su.push_back(u[id]);
      sv.push_back(v[id]);
    }
    for (Measure measure : {Measure::chi2, Measure::cosine, Measure::euclidean}) {
      CHECK(score(measure, u, v, subset) == score(measure, su, sv));
    }
  }
}

TEST_CASE("score_all is thread-count invariant") {
  Rng rng(21);
  std::vector<Profile> profiles;
  for (int i = 0; i < 7; ++i)
    profiles.push_back(make_profile("p" + std::to_string(i),
                                    std::vector<FeatureVector>{vec(random_nonneg(rng, 12))}));
  std::vector<TestSample> tests;
  for (int i = 0; i < 23; ++i)
    tests.push_back({{"p" + std::to_string(i % 7), i}, vec(random_nonneg(rng, 12))});
  ScoreMatrix serial = score_all(tests, profiles, Measure::chi2, {}, 1);
  ScoreMatrix parallel = score_all(tests, profiles, Measure::chi2, {}, 8);
  CHECK(serial.values == parallel.values);
}

TEST_CASE("measure names") {
  CHECK(measure_from_name("chi2") == Measure::chi2);
  CHECK(measure_from_name("cosine") == Measure::cosine);
  CHECK(measure_from_name("euclidean") == Measure::euclidean);
  CHECK_THROWS_AS(measure_from_name("manhattan"), std::invalid_argument);
  CHECK(polarity_of(Measure::chi2) == Polarity::distance);
  CHECK(polarity_of(Measure::cosine) == Polarity::similarity);
  CHECK(polarity_of(Measure::euclidean) == Polarity::distance);
}

}  // TEST_SUITE
