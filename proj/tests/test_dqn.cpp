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
#include <random>

#include <gtest/gtest.h>

#include "otil/dqn.hpp"
#include "otil/oracles.hpp"

namespace otil {
namespace {

TEST(LossAndGradient, LinearHandCheck) {
  Mlp net = zero_mlp({2, 1});
  net.weights[0] = {0.5, -1.0};
  net.biases[0] = {0.25};
  const std::vector<Transition> batch = {{{2.0, 1.0}, 0, 3.0, {0.0, 0.0}, true}};
  const auto lg = loss_and_gradient(net, net, batch, 0.99);
  const double err = 0.5 * 2.0 - 1.0 + 0.25 - 3.0;
  EXPECT_DOUBLE_EQ(lg.loss, err * err);
  EXPECT_DOUBLE_EQ(lg.gradient.weights[0][0], 2.0 * err * 2.0);
  EXPECT_DOUBLE_EQ(lg.gradient.weights[0][1], 2.0 * err * 1.0);
  EXPECT_DOUBLE_EQ(lg.gradient.biases[0][0], 2.0 * err);
}

TEST(LossAndGradient, ZeroWhenPredictionsMatchTargets) {
  const Mlp net = make_mlp({3, 5, 2}, 1);
  std::mt19937_64 rng(2);
  auto batch = oracle::random_batch(6, 3, 2, rng);
  for (auto& t : batch) {
    t.done = true;
    t.reward = forward(net, t.state)[t.action];
  }
  const auto lg = loss_and_gradient(net, net, batch, 0.99);
  EXPECT_EQ(lg.loss, 0.0);
  EXPECT_EQ(lg.gradient, zero_mlp(net.layer_sizes));
}

TEST(LossAndGradient, TerminalIgnoresTargetNetwork) {
  const Mlp net = make_mlp({3, 4, 2}, 3);
  std::mt19937_64 rng(4);
  auto batch = oracle::random_batch(5, 3, 2, rng);
  for (auto& t : batch) t.done = true;
  const auto a = loss_and_gradient(net, make_mlp({3, 4, 2}, 10), batch, 0.99);
  const auto b = loss_and_gradient(net, make_mlp({3, 4, 2}, 11), batch, 0.99);
  EXPECT_EQ(a.loss, b.loss);
  EXPECT_EQ(a.gradient, b.gradient);
  batch[0].done = false;
  EXPECT_NE(loss_and_gradient(net, make_mlp({3, 4, 2}, 10), batch, 0.99).loss,
            loss_and_gradient(net, make_mlp({3, 4, 2}, 11), batch, 0.99).loss);
}

TEST(LossAndGradient, MatchesCentralDifferences) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> width(1, 8);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t in = width(rng), out = 1 + width(rng) % 4;
    std::vector<std::size_t> sizes = {in};
    for (int h = 0; h < 1 + trial % 2; ++h) sizes.push_back(width(rng));
    sizes.push_back(out);
    const Mlp net = make_mlp(sizes, 100 + trial);
    const Mlp target = make_mlp(sizes, 200 + trial);
    const auto batch = oracle::random_batch(1 + trial % 6, in, out, rng);
    const auto lg = loss_and_gradient(net, target, batch, 0.9);
    const auto fd = oracle::finite_difference_gradient(net, target, batch, 0.9, 1e-5);
    EXPECT_LT(oracle::max_relative_error(lg.gradient, fd, 1e-10), 1e-4) << trial;
  }
}

TEST(LossAndGradient, Errors) {
  const Mlp net = make_mlp({2, 2}, 0);
  EXPECT_THROW(loss_and_gradient(net, net, {}, 0.9), std::invalid_argument);
  const std::vector<Transition> bad = {{{0, 0}, 5, 0, {0, 0}, true}};
  EXPECT_THROW(loss_and_gradient(net, net, bad, 0.9), std::invalid_argument);
  EXPECT_THROW(loss_and_gradient(net, make_mlp({2, 3, 2}, 0), bad, 0.9),
               std::invalid_argument);
}

TEST(ReplayBuffer, EvictsOldestAtCapacity) {
  ReplayBuffer buf(5);
  for (int i = 0; i < 8; ++i) {
    buf.push({{static_cast<double>(i)}, 0, 0.0, {0.0}, false});
    EXPECT_LE(buf.size(), 5u);
  }
  for (std::size_t i = 0; i < buf.size(); ++i) {
    EXPECT_EQ(buf[i].state[0], static_cast<double>(i + 3));
  }
  std::mt19937_64 rng(1);
  const auto s = buf.sample(20, rng);
  EXPECT_EQ(s.size(), 20u);
  for (const auto& t : s) EXPECT_GE(t.state[0], 3.0);
  EXPECT_THROW(ReplayBuffer(0), std::invalid_argument);
  EXPECT_THROW(ReplayBuffer(3).sample(1, rng), std::invalid_argument);
}

TEST(Epsilon, NonIncreasingAndFloored) {
  DqnConfig cfg;
  double prev = 2.0;
  for (std::size_t e = 0; e < 2000; ++e) {
    const double eps = epsilon_for_episode(cfg, e);
    EXPECT_LE(eps, prev);
    EXPECT_GE(eps, cfg.epsilon_end);
    prev = eps;
  }
  EXPECT_EQ(epsilon_for_episode(cfg, 0), 1.0);
  EXPECT_DOUBLE_EQ(epsilon_for_episode(cfg, 1), 0.995);
  EXPECT_EQ(epsilon_for_episode(cfg, 1999), 0.01);
}

TEST(Act, GreedyChoiceAndTies) {
  Mlp net = zero_mlp({1, 2});
  net.biases[0] = {0.1, 0.9};
  std::mt19937_64 rng(0);
  EXPECT_EQ(act(net, Vector{0.0}, 0.0, rng), 1);
  net.biases[0] = {0.5, 0.5};
  EXPECT_EQ(act(net, Vector{0.0}, 0.0, rng), 0);
}

TEST(Act, ArgmaxInvariantUnderShift) {
  Mlp net = make_mlp({4, 6, 3}, 8);
  std::mt19937_64 rng(8);
  const auto states = oracle::random_points(50, 4, rng);
  std::vector<int> before;
  for (const auto& s : states) before.push_back(greedy_action(net, s));
  for (auto& b : net.biases.back()) b += 17.5;
  for (std::size_t i = 0; i < states.size(); ++i) {
    EXPECT_EQ(greedy_action(net, states[i]), before[i]);
  }
}

TEST(Act, FullExplorationIsUniform) {
  const Mlp net = make_mlp({2, 3}, 1);
  std::mt19937_64 rng(12);
  int counts[3] = {0, 0, 0};
  const int n = 10000;
  for (int i = 0; i < n; ++i) ++counts[act(net, Vector{0.3, -0.2}, 1.0, rng)];
  const double p = 1.0 / 3.0, sigma = std::sqrt(n * p * (1 - p));
  for (int c : counts) EXPECT_NEAR(c, n * p, 3 * sigma);
}

TEST(MovingAverage, Definition) {
  const std::vector<double> r = {1, 2, 3, 4, 5};
  EXPECT_EQ(moving_average(r, 2), (std::vector<double>{1, 1.5, 2.5, 3.5, 4.5}));
  EXPECT_EQ(moving_average(r, 50), (std::vector<double>{1, 1.5, 2, 2.5, 3}));
  EXPECT_THROW(moving_average(r, 0), std::invalid_argument);
}

TEST(DqnConfig, Validation) {
  DqnConfig c;
  EXPECT_NO_THROW(c.validate());
  c.discount = 1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = DqnConfig{};
  c.batch_size = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = DqnConfig{};
  c.epsilon_decay = 1.5;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

ExpertSet cartpole_experts() {
  const EnvParams env = CartPoleParams{};
  Trajectory t;
  t.env_name = "CartPole";
  auto s = reset(env, 1);
  for (int i = 0; i < 200; ++i) {
    t.states.push_back(state_vector(s));
    s = step(s, i % 2, env).state;
  }
  return ExpertSet{{t}, 200};
}

TEST(TrainImitation, ZeroEpisodes) {
  DqnConfig cfg;
  cfg.train_episodes = 0;
  const auto curve = train_imitation(CartPoleParams{}, cartpole_experts(),
                                     RewardConfig{}, cfg);
  EXPECT_TRUE(curve.true_returns.empty());
  EXPECT_TRUE(curve.moving_average.empty());
  EXPECT_EQ(curve.params, DqnLearner(4, 2, cfg).params());
}

TEST(TrainImitation, DeterministicPerSeed) {
  DqnConfig cfg;
  cfg.train_episodes = 15;
  cfg.seed = 3;
  for (auto mode : {RewardMode::kScotil, RewardMode::kSmmotil}) {
    RewardConfig rc;
    rc.mode = mode;
    const auto a = train_imitation(CartPoleParams{}, cartpole_experts(), rc, cfg);
    const auto b = train_imitation(CartPoleParams{}, cartpole_experts(), rc, cfg);
    EXPECT_EQ(a.true_returns, b.true_returns);
    EXPECT_EQ(a.params, b.params);
    ASSERT_EQ(a.true_returns.size(), 15u);
    for (double r : a.true_returns) {
      EXPECT_GE(r, 1.0);
      EXPECT_LE(r, 200.0);
    }
  }
}

TEST(TrainImitation, RejectsDimensionMismatch) {
  EXPECT_THROW(train_imitation(PendulumParams{}, cartpole_experts(),
                               RewardConfig{}, DqnConfig{}),
               std::invalid_argument);
}

TEST(TrainTrueReward, SolvesDefaultCartPole) {
  DqnConfig cfg;
  cfg.seed = 0;
  const auto r = train_true_reward(CartPoleParams{}, cfg, 2000, SolveCriterion{});
  ASSERT_TRUE(r.solved_after_episodes.has_value());
  EXPECT_GE(r.last_eval_return, 195.0);
  EXPECT_GE(evaluate_greedy(r.params, CartPoleParams{}, 20, 99), 150.0);
}

TEST(RolloutGreedy, RecordsPreActionStates) {
  const Mlp net = make_mlp({4, 8, 2}, 2);
  const EnvParams env = CartPoleParams{};
  const auto t = rollout_greedy(net, env, 5);
  EXPECT_EQ(t.states.front(), state_vector(reset(env, 5)));
  EXPECT_EQ(t.states.size(), t.actions.size());
  EXPECT_EQ(t.true_return, static_cast<double>(t.size()));
  EXPECT_EQ(t, rollout_greedy(net, env, 5));
}

}  // namespace
}  // namespace otil
