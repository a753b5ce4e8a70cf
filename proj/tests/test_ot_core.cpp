// Copyright 2026 The otil Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "otil/oracles.hpp"
#include "otil/ot_core.hpp"

namespace otil {
namespace {

DiscreteMeasure line(std::vector<double> xs) {
  return DiscreteMeasure(1, std::move(xs));
}

// Minimum over every bijection, written without the library oracle.
double min_assignment(std::vector<double> x, const std::vector<double>& y) {
  std::vector<std::size_t> perm(y.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = INFINITY;
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      s += (x[i] - y[perm[i]]) * (x[i] - y[perm[i]]);
    }
    best = std::min(best, s / static_cast<double>(x.size()));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

TEST(SampleProjections, OneDimensionalDirectionsAreSigns) {
  const auto p = sample_projections(1, 4, 123);
  ASSERT_EQ(p.size(), 4u);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_TRUE(p.direction(k)[0] == 1.0 || p.direction(k)[0] == -1.0);
  }
}

TEST(SampleProjections, UnitNormAndDeterministic) {
  const auto a = sample_projections(5, 200, 9);
  const auto b = sample_projections(5, 200, 9);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, sample_projections(5, 200, 10));
  for (std::size_t k = 0; k < a.size(); ++k) {
    double n = 0.0;
    for (double v : a.direction(k)) n += v * v;
    EXPECT_NEAR(std::sqrt(n), 1.0, 1e-12);
  }
}

TEST(SampleProjections, SecondMomentIsIsotropic) {
  const auto p = sample_projections(3, 10000, 2024);
  double m[3][3] = {};
  for (std::size_t k = 0; k < p.size(); ++k) {
    const auto d = p.direction(k);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] += d[i] * d[j] / 10000.0;
  }
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(m[i][i], 1.0 / 3.0, 0.02);
    for (int j = 0; j < 3; ++j) {
      if (i != j) {
        EXPECT_NEAR(m[i][j], 0.0, 0.02);
      }
    }
  }
}

TEST(SampleProjections, RejectsEmpty) {
  EXPECT_THROW(sample_projections(0, 3, 1), std::invalid_argument);
  EXPECT_THROW(sample_projections(3, 0, 1), std::invalid_argument);
}

TEST(ProjectionSet, RejectsNonUnitDirections) {
  EXPECT_THROW(ProjectionSet(2, {{1.0, 1.0}}), std::invalid_argument);
  EXPECT_NO_THROW(ProjectionSet(2, {{0.6, 0.8}}));
}

TEST(ProjectAndSort, TwoDimensionalExample) {
  const DiscreteMeasure m(std::vector<Vector>{{0, 1}, {1, 0}});
  const std::vector<double> dir = {1, 0};
  const auto s = project_and_sort(m, dir);
  EXPECT_EQ(s.sorted, (Vector{0, 1}));
  EXPECT_EQ(s.rank, (std::vector<std::size_t>{0, 1}));
}

TEST(ProjectAndSort, PositiveAndNegativeDirection) {
  const auto m = line({3, 1, 2});
  const std::vector<double> up = {1}, down = {-1};
  const auto a = project_and_sort(m, up);
  EXPECT_EQ(a.sorted, (Vector{1, 2, 3}));
  EXPECT_EQ(a.rank, (std::vector<std::size_t>{2, 0, 1}));
  const auto b = project_and_sort(m, down);
  EXPECT_EQ(b.sorted, (Vector{-3, -2, -1}));
  EXPECT_EQ(b.rank, (std::vector<std::size_t>{0, 2, 1}));
  for (std::size_t r = 0; r < 3; ++r) EXPECT_EQ(b.rank[b.order[r]], r);
}

TEST(ProjectAndSort, DimensionMismatch) {
  const std::vector<double> dir = {1, 0};
  EXPECT_THROW(project_and_sort(line({1, 2}), dir), std::invalid_argument);
}

TEST(W2Squared1d, HandValues) {
  EXPECT_DOUBLE_EQ(w2_squared_1d(Vector{0}, Vector{1}), 1.0);
  EXPECT_DOUBLE_EQ(w2_squared_1d(Vector{1, 3}, Vector{2, 4}), 1.0);
  EXPECT_DOUBLE_EQ(w2_squared_1d(Vector{-1, 0.5, 7}, Vector{-1, 0.5, 7}), 0.0);
  EXPECT_THROW(w2_squared_1d(Vector{1}, Vector{1, 2}), std::invalid_argument);
}

TEST(W2Squared1d, MatchesMinimumAssignment) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t t = 1 + trial % 6;
    std::vector<double> x(t), y(t);
    for (auto& v : x) v = u(rng);
    for (auto& v : y) v = u(rng);
    const double expected = min_assignment(x, y);
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    EXPECT_NEAR(w2_squared_1d(x, y), expected, 1e-9);
    EXPECT_NEAR(oracle::brute_force_w2_1d(x, y), expected, 1e-9);
  }
}

TEST(SlicedW2, IdentityAndOneDimensionalValue) {
  const auto proj = sample_projections(1, 7, 3);
  EXPECT_EQ(sliced_w2_squared(line({1, 3}), line({1, 3}), proj), 0.0);
  EXPECT_NEAR(sliced_w2_squared(line({1, 3}), line({2, 4}), proj), 1.0, 1e-15);
}

TEST(SlicedW2, PointMassLaw) {
  const auto proj = sample_projections(3, 10000, 77);
  const DiscreteMeasure a(std::vector<Vector>{{1.0, -2.0, 0.5}});
  const DiscreteMeasure b(std::vector<Vector>{{-0.5, 1.0, 2.0}});
  const double sq = 1.5 * 1.5 + 3.0 * 3.0 + 1.5 * 1.5;
  EXPECT_NEAR(sliced_w2_squared(a, b, proj), sq / 3.0, 0.05 * sq / 3.0);
}

TEST(SlicedW2, SymmetricAndPermutationInvariant) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    auto xs = oracle::random_points(12, 4, rng);
    auto ys = oracle::random_points(12, 4, rng);
    const auto proj = sample_projections(4, 15, trial);
    const DiscreteMeasure mu(xs), nu(ys);
    EXPECT_EQ(sliced_w2_squared(mu, nu, proj), sliced_w2_squared(nu, mu, proj));
    std::shuffle(xs.begin(), xs.end(), rng);
    EXPECT_NEAR(sliced_w2_squared(DiscreteMeasure(xs), nu, proj),
                sliced_w2_squared(mu, nu, proj), 1e-12);
    EXPECT_GE(sliced_w2_squared(mu, nu, proj), 0.0);
  }
}

TEST(SlicedW2, Mismatches) {
  const auto proj = sample_projections(2, 3, 1);
  const DiscreteMeasure a(std::vector<Vector>{{0, 0}, {1, 1}});
  const DiscreteMeasure b(std::vector<Vector>{{0, 0}});
  EXPECT_THROW(sliced_w2_squared(a, b, proj), std::invalid_argument);
  EXPECT_THROW(sliced_w2_squared(line({1, 2}), line({1, 2}), proj),
               std::invalid_argument);
}

TEST(SlicedW2, MonteCarloErrorShrinksWithK) {
  std::mt19937_64 rng(11);
  const DiscreteMeasure mu(oracle::random_points(10, 3, rng));
  const DiscreteMeasure nu(oracle::random_points(10, 3, rng, 2.0));
  auto spread = [&](std::size_t k) {
    std::vector<double> vals;
    for (std::uint64_t r = 0; r < 50; ++r) {
      vals.push_back(sliced_w2_squared(mu, nu, sample_projections(3, k, 1000 * k + r)));
    }
    const double mean = std::accumulate(vals.begin(), vals.end(), 0.0) / 50.0;
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    return std::sqrt(var / 49.0);
  };
  // 1/sqrt(K) predicts a ratio of ~0.316; allow sampling noise.
  EXPECT_LT(spread(1000), 0.5 * 1.3 * spread(100));
}

TEST(MwSquared1d, HandValues) {
  const auto half = BarycentricWeights::uniform(2);
  EXPECT_DOUBLE_EQ(mw_squared_1d(std::vector<Vector>{{0, 2}, {2, 4}}, half), 1.0);
  EXPECT_DOUBLE_EQ(
      mw_squared_1d(std::vector<Vector>{{1, 2, 3}, {1, 2, 3}, {1, 2, 3}},
                    BarycentricWeights::uniform(3)),
      0.0);
  EXPECT_DOUBLE_EQ(mw_squared_1d(std::vector<Vector>{{0, 5}, {3, 9}},
                                 BarycentricWeights({1.0, 0.0})),
                   0.0);
}

TEST(MwSquared1d, Errors) {
  const auto half = BarycentricWeights::uniform(2);
  EXPECT_THROW(mw_squared_1d(std::vector<Vector>{{0, 2}, {2}}, half),
               std::invalid_argument);
  EXPECT_THROW(mw_squared_1d(std::vector<Vector>{{0}, {1}, {2}}, half),
               std::invalid_argument);
  EXPECT_THROW(BarycentricWeights({0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW(BarycentricWeights({1.5, -0.5}), std::invalid_argument);
}

TEST(MwSquared1d, TranslationCovariance) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3, 3);
  const BarycentricWeights w({0.2, 0.5, 0.3});
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vector> lists(3, Vector(8));
    for (auto& l : lists) {
      for (auto& v : l) v = u(rng);
      std::sort(l.begin(), l.end());
    }
    auto shifted = lists;
    for (auto& l : shifted)
      for (auto& v : l) v += 4.25;
    EXPECT_NEAR(mw_squared_1d(lists, w), mw_squared_1d(shifted, w), 1e-9);
  }
}

TEST(SlicedMw, TwoMarginalReduction) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 1 + trial % 5, t = 1 + (trial * 7) % 50;
    const DiscreteMeasure mu(oracle::random_points(t, d, rng));
    const DiscreteMeasure nu(oracle::random_points(t, d, rng));
    const auto proj = sample_projections(d, 1 + trial % 20, trial);
    const std::vector<DiscreteMeasure> pair = {mu, nu};
    EXPECT_NEAR(sliced_mw_squared(pair, BarycentricWeights::uniform(2), proj),
                sliced_w2_squared(mu, nu, proj) / 4.0, 1e-9);
  }
}

TEST(SlicedMw, IdenticalMeasuresAndErrors) {
  std::mt19937_64 rng(1);
  const DiscreteMeasure mu(oracle::random_points(6, 2, rng));
  const auto proj = sample_projections(2, 5, 1);
  const std::vector<DiscreteMeasure> same = {mu, mu, mu};
  EXPECT_NEAR(sliced_mw_squared(same, BarycentricWeights::uniform(3), proj),
              0.0, 1e-24);
  const std::vector<DiscreteMeasure> one = {mu};
  EXPECT_THROW(sliced_mw_squared(one, BarycentricWeights::uniform(1), proj),
               std::invalid_argument);
  EXPECT_THROW(sliced_mw_squared(same, BarycentricWeights::uniform(2), proj),
               std::invalid_argument);
}

TEST(BuildAlignment, PermutationsPerMarginal) {
  const std::vector<DiscreteMeasure> ms = {line({3, 1, 2}), line({1, 2, 3})};
  const ProjectionSet up(1, {{1.0}});
  const auto a = build_alignment(ms, up);
  EXPECT_EQ(a.at(0, 0).rank, (std::vector<std::size_t>{2, 0, 1}));
  EXPECT_EQ(a.at(0, 1).rank, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(a.aligned_index(0, 0, 0), 1u);

  const std::vector<DiscreteMeasure> twins = {line({5, -1, 2}), line({5, -1, 2})};
  const auto b = build_alignment(twins, sample_projections(1, 4, 2));
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(b.at(k, 0).rank, b.at(k, 1).rank);
}

TEST(DiscreteMeasure, RejectsBadInput) {
  EXPECT_THROW(DiscreteMeasure(std::vector<Vector>{}), std::invalid_argument);
  EXPECT_THROW(DiscreteMeasure(std::vector<Vector>{{1, 2}, {3}}),
               std::invalid_argument);
  EXPECT_THROW(DiscreteMeasure(std::vector<Vector>{{NAN}}), std::invalid_argument);
}

}  // namespace
}  // namespace otil
