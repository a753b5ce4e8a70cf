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


#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "otil/oracles.hpp"
#include "otil/reward_engine.hpp"

namespace otil {
namespace {

Trajectory make_traj(std::vector<Vector> states) {
  Trajectory t;
  t.states = std::move(states);
  t.env_name = "Test";
  return t;
}

Trajectory random_traj(std::size_t n, std::size_t d, std::mt19937_64& rng,
                       double scale = 1.0) {
  return make_traj(oracle::random_points(n, d, rng, scale));
}

double sum(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

TEST(CombineConcatSample, SingleExpertVerbatim) {
  std::mt19937_64 rng(1);
  ExpertSet set{{random_traj(30, 3, rng)}, 30};
  for (auto s : {CombineStrategy::kStratified, CombineStrategy::kUniformPool}) {
    EXPECT_EQ(combine_concat_sample(set, 30, s, 42).states,
              set.trajectories[0].states);
  }
}

TEST(CombineConcatSample, IdenticalExperts) {
  std::mt19937_64 rng(2);
  const auto t = random_traj(20, 2, rng);
  ExpertSet set{{t, t, t}, 20};
  for (auto s : {CombineStrategy::kStratified, CombineStrategy::kUniformPool}) {
    EXPECT_EQ(combine_concat_sample(set, 20, s, 5).states, t.states);
  }
}

TEST(CombineConcatSample, StratifiedIsFairCoinPerSlot) {
  ExpertSet set{{make_traj({{0}, {0}, {0}}), make_traj({{10}, {10}, {10}})}, 3};
  int tens[3] = {0, 0, 0};
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto c = combine_concat_sample(set, 3, CombineStrategy::kStratified, seed);
    for (int t = 0; t < 3; ++t) {
      ASSERT_TRUE(c.states[t][0] == 0.0 || c.states[t][0] == 10.0);
      tens[t] += c.states[t][0] == 10.0;
    }
  }
  for (int t = 0; t < 3; ++t) EXPECT_NEAR(tens[t] / 1000.0, 0.5, 0.05);
}

TEST(CombineConcatSample, UniformPoolDrawsDistinctStatesInTimeOrder) {
  ExpertSet set{{make_traj({{0}, {1}, {2}, {3}}), make_traj({{10}, {11}, {12}, {13}})}, 4};
  const auto c = combine_concat_sample(set, 4, CombineStrategy::kUniformPool, 3);
  ASSERT_EQ(c.size(), 4u);
  for (std::size_t i = 1; i < c.size(); ++i) {
    const auto phase = [](double v) { return std::fmod(v, 10.0); };
    EXPECT_LE(phase(c.states[i - 1][0]), phase(c.states[i][0]));
    EXPECT_NE(c.states[i - 1][0], c.states[i][0]);
  }
}

TEST(CombineConcatSample, Errors) {
  EXPECT_THROW(combine_concat_sample(ExpertSet{}, 3, CombineStrategy::kStratified, 0),
               std::invalid_argument);
}

TEST(ScotilCosts, HandExample) {
  const DiscreteMeasure agent(1, {0, 2}), expert(1, {1, 3});
  const ProjectionSet up(1, {{1.0}});
  const auto c = scotil_costs(agent, expert, up);
  EXPECT_EQ(c, (std::vector<double>{0.5, 0.5}));
  EXPECT_DOUBLE_EQ(sum(c), sliced_w2_squared(agent, expert, up));
}

TEST(ScotilCosts, AttributesToOriginalIndex) {
  // Agent visits 3 then 0: rank 1 belongs to step 0.
  const DiscreteMeasure agent(1, {3, 0}), expert(1, {0, 1});
  const auto c = scotil_costs(agent, expert, ProjectionSet(1, {{1.0}}));
  EXPECT_DOUBLE_EQ(c[0], 4.0 / 2.0);
  EXPECT_DOUBLE_EQ(c[1], 0.0);
}

TEST(ScotilCosts, ZeroForIdenticalAndErrors) {
  std::mt19937_64 rng(3);
  const DiscreteMeasure a(oracle::random_points(9, 4, rng));
  const auto proj = sample_projections(4, 10, 1);
  for (double c : scotil_costs(a, a, proj)) EXPECT_EQ(c, 0.0);
  const DiscreteMeasure short_m(oracle::random_points(8, 4, rng));
  EXPECT_THROW(scotil_costs(a, short_m, proj), std::invalid_argument);
}

TEST(SmmotilCosts, HandExample) {
  const DiscreteMeasure agent(1, {0});
  const std::vector<DiscreteMeasure> experts = {DiscreteMeasure(1, {4})};
  const auto c = smmotil_costs(agent, experts, BarycentricWeights::uniform(2),
                               ProjectionSet(1, {{1.0}}));
  ASSERT_EQ(c.size(), 1u);
  EXPECT_DOUBLE_EQ(c[0], 4.0);
}

TEST(SmmotilCosts, SingleExpertIsQuarterOfScotil) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const DiscreteMeasure a(oracle::random_points(25, 3, rng));
    const DiscreteMeasure e(oracle::random_points(25, 3, rng, 2.0));
    const auto proj = sample_projections(3, 1 + trial, trial);
    const std::vector<DiscreteMeasure> experts = {e};
    const double mm = sum(smmotil_costs(a, experts, BarycentricWeights::uniform(2), proj));
    EXPECT_NEAR(mm, sliced_w2_squared(a, e, proj) / 4.0, 1e-9);
    EXPECT_NEAR(mm, sum(scotil_costs(a, e, proj)) / 4.0, 1e-9);
  }
}

TEST(SmmotilCosts, Errors) {
  const DiscreteMeasure a(1, {0, 1});
  const std::vector<DiscreteMeasure> experts = {DiscreteMeasure(1, {4, 5})};
  const ProjectionSet up(1, {{1.0}});
  EXPECT_THROW(smmotil_costs(a, experts, BarycentricWeights::uniform(3), up),
               std::invalid_argument);
  EXPECT_THROW(smmotil_costs(a, {}, BarycentricWeights::uniform(1), up),
               std::invalid_argument);
  const std::vector<DiscreteMeasure> bad = {DiscreteMeasure(1, {4})};
  EXPECT_THROW(smmotil_costs(a, bad, BarycentricWeights::uniform(2), up),
               std::invalid_argument);
}

TEST(RewardSumIdentity, BothModesAllProjectionCounts) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (std::size_t k : {1u, 5u, 50u}) {
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t d = 1 + trial % 4, n = 2 + trial;
      const DiscreteMeasure agent(oracle::random_points(n, d, rng));
      std::vector<DiscreteMeasure> experts;
      for (int p = 0; p < 3; ++p) {
        experts.emplace_back(oracle::random_points(n, d, rng, 3.0));
      }
      const auto proj = sample_projections(d, k, 100 + trial);
      EXPECT_NEAR(sum(scotil_costs(agent, experts[0], proj)),
                  sliced_w2_squared(agent, experts[0], proj), 1e-9);

      Vector w(4);
      for (auto& x : w) x = u(rng);
      const double total = std::accumulate(w.begin(), w.end(), 0.0);
      for (auto& x : w) x /= total;
      w.back() = 1.0 - (w[0] + w[1] + w[2]);
      const BarycentricWeights weights(w);
      std::vector<DiscreteMeasure> all = {agent};
      all.insert(all.end(), experts.begin(), experts.end());
      const auto c = smmotil_costs(agent, experts, weights, proj);
      for (double x : c) EXPECT_GE(x, 0.0);
      EXPECT_NEAR(sum(c), sliced_mw_squared(all, weights, proj), 1e-9);
    }
  }
}

TEST(RewardSumIdentity, TranslationInvariant) {
  std::mt19937_64 rng(6);
  const Vector shift = {1.5, -2.0, 0.25};
  auto moved = [&](std::vector<Vector> pts) {
    for (auto& p : pts)
      for (int i = 0; i < 3; ++i) p[i] += shift[i];
    return pts;
  };
  const auto a = oracle::random_points(15, 3, rng);
  const auto e1 = oracle::random_points(15, 3, rng);
  const auto e2 = oracle::random_points(15, 3, rng);
  const auto proj = sample_projections(3, 20, 6);
  const auto w = BarycentricWeights::uniform(3);
  const std::vector<DiscreteMeasure> ex = {DiscreteMeasure(e1), DiscreteMeasure(e2)};
  const std::vector<DiscreteMeasure> ex_m = {DiscreteMeasure(moved(e1)),
                                             DiscreteMeasure(moved(e2))};
  EXPECT_NEAR(sum(smmotil_costs(DiscreteMeasure(a), ex, w, proj)),
              sum(smmotil_costs(DiscreteMeasure(moved(a)), ex_m, w, proj)), 1e-9);
  EXPECT_NEAR(sum(scotil_costs(DiscreteMeasure(a), ex[0], proj)),
              sum(scotil_costs(DiscreteMeasure(moved(a)), ex_m[0], proj)), 1e-9);
}

TEST(TransformCosts, NegateAndExp) {
  RewardConfig neg;
  neg.transform = CostTransform::kNegate;
  EXPECT_EQ(transform_costs(std::vector<double>{0, 0.5}, neg),
            (std::vector<double>{0, -0.5}));
  RewardConfig ex;
  ex.transform = CostTransform::kExp;
  for (double beta : {0.1, 5.0, 40.0}) {
    ex.beta = beta;
    const auto r = transform_costs(std::vector<double>{0, 0.01, 3.0}, ex);
    EXPECT_EQ(r[0], 1.0);
    EXPECT_DOUBLE_EQ(r[1], std::exp(-beta * 0.01 * 3.0));
    for (double x : r) {
      EXPECT_GT(x, 0.0);
      EXPECT_LE(x, 1.0);
    }
  }
  EXPECT_THROW(transform_costs(std::vector<double>{-1.0}, neg),
               std::invalid_argument);
}

TEST(Relabel, ExpertImitatesItself) {
  std::mt19937_64 rng(7);
  const auto t = random_traj(40, 4, rng);
  for (auto mode : {RewardMode::kScotil, RewardMode::kSmmotil}) {
    RewardConfig cfg;
    cfg.mode = mode;
    const auto ep = relabel_episode(t.states, ExpertSet{{t}, 40}, cfg, 3);
    EXPECT_NEAR(ep.total_cost, 0.0, 1e-24);
    for (double r : ep.rewards) EXPECT_NEAR(r, 0.0, 1e-24);
  }
}

TEST(Relabel, TotalMatchesReferenceAndIsDeterministic) {
  std::mt19937_64 rng(8);
  ExpertSet set;
  set.nominal_horizon = 60;
  for (int p = 0; p < 5; ++p) set.trajectories.push_back(random_traj(60, 4, rng, 1.0 + p));
  for (auto mode : {RewardMode::kScotil, RewardMode::kSmmotil}) {
    RewardConfig cfg;
    cfg.mode = mode;
    cfg.projection_seed = 11;
    const Relabeler relabeler(set, cfg);
    for (std::size_t len : {1u, 17u, 60u, 75u}) {
      const auto agent = oracle::random_points(len, 4, rng);
      const auto a = relabeler.relabel(agent, len);
      const auto b = relabeler.relabel(agent, len);
      EXPECT_EQ(a, b);
      ASSERT_EQ(a.costs.size(), len);
      EXPECT_NEAR(a.total_cost, a.reference_distance, 1e-9);
      EXPECT_NEAR(sum(a.rewards), -a.total_cost, 1e-12);
      for (double c : a.costs) EXPECT_GE(c, 0.0);
    }
  }
}

TEST(Relabel, FreshProjectionsDependOnEpisodeSeed) {
  std::mt19937_64 rng(9);
  const ExpertSet set{{random_traj(30, 3, rng)}, 30};
  const auto agent = oracle::random_points(30, 3, rng);
  RewardConfig cfg;
  cfg.mode = RewardMode::kSmmotil;
  cfg.projection_count = 3;
  const Relabeler fresh(set, cfg);
  EXPECT_NE(fresh.relabel(agent, 1).total_cost, fresh.relabel(agent, 2).total_cost);
  cfg.fresh_projections = false;
  const Relabeler fixed(set, cfg);
  EXPECT_EQ(fixed.relabel(agent, 1).total_cost, fixed.relabel(agent, 2).total_cost);
}

TEST(Relabel, ScotilCombinesOncePerRunUnlessAsked) {
  std::mt19937_64 rng(10);
  ExpertSet set{{random_traj(20, 2, rng), random_traj(20, 2, rng, 4.0)}, 20};
  RewardConfig cfg;
  cfg.mode = RewardMode::kScotil;
  const Relabeler once(set, cfg);
  ASSERT_TRUE(once.combined_expert().has_value());
  EXPECT_EQ(once.combined_expert()->size(), 20u);
  cfg.recombine_each_episode = true;
  EXPECT_FALSE(Relabeler(set, cfg).combined_expert().has_value());
}

TEST(Relabel, AbsoluteStepTermRuns) {
  std::mt19937_64 rng(12);
  const ExpertSet set{{random_traj(10, 2, rng)}, 10};
  RewardConfig cfg;
  cfg.mode = RewardMode::kScotil;
  cfg.step_term = StepTerm::kAbsolute;
  const auto ep = relabel_episode(oracle::random_points(10, 2, rng), set, cfg, 0);
  EXPECT_GT(ep.total_cost, 0.0);
}

TEST(Relabel, Errors) {
  std::mt19937_64 rng(13);
  const ExpertSet set{{random_traj(10, 2, rng)}, 10};
  RewardConfig cfg;
  EXPECT_THROW(relabel_episode({}, set, cfg, 0), std::invalid_argument);
  EXPECT_THROW(relabel_episode(oracle::random_points(5, 3, rng), set, cfg, 0),
               std::invalid_argument);
  cfg.weights = Vector{0.5, 0.25, 0.25};
  EXPECT_THROW(Relabeler(set, cfg), std::invalid_argument);
  cfg.weights.reset();
  cfg.projection_count = 0;
  EXPECT_THROW(Relabeler(set, cfg), std::invalid_argument);
}

TEST(RewardEnums, RoundTripNames) {
  for (auto m : {RewardMode::kScotil, RewardMode::kSmmotil}) {
    EXPECT_EQ(parse_reward_mode(to_string(m)), m);
  }
  EXPECT_EQ(parse_combine_strategy("uniform_pool"), CombineStrategy::kUniformPool);
  EXPECT_EQ(parse_cost_transform("Exp"), CostTransform::kExp);
  EXPECT_EQ(parse_step_term("absolute"), StepTerm::kAbsolute);
  EXPECT_THROW(parse_reward_mode("PWIL"), std::invalid_argument);
}

}  // namespace
}  // namespace otil
