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


#ifndef OTIL_DQN_HPP_
#define OTIL_DQN_HPP_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "otil/envs.hpp"
#include "otil/mlp.hpp"
#include "otil/reward_engine.hpp"
#include "otil/trajectory.hpp"

namespace otil {

struct Transition {
  Vector state;
  int action = 0;
  double reward = 0.0;
  Vector next_state;
  // True only for genuine terminal states; time-limit cut-offs bootstrap.
  bool done = false;

  bool operator==(const Transition&) const = default;
};

struct DqnConfig {
  std::vector<std::size_t> hidden = {64, 64};
  double learning_rate = 1e-3;
  double discount = 0.99;
  std::size_t batch_size = 32;
  std::size_t replay_capacity = 2000;
  double epsilon_start = 1.0;
  double epsilon_end = 0.01;
  // Multiplicative, applied once per episode.
  double epsilon_decay = 0.995;
  // Gradient steps between target syncs; 0 disables the target network.
  std::size_t target_sync_interval = 100;
  std::size_t train_episodes = 500;
  std::uint64_t seed = 0;

  void validate() const;
};

// Oldest-first ring of transitions with a fixed capacity.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(Transition t);
  std::size_t size() const { return items_.size(); }
  std::size_t capacity() const { return capacity_; }
  const Transition& operator[](std::size_t i) const { return items_[i]; }

  // Uniform with replacement.
  std::vector<Transition> sample(std::size_t count,
                                 std::mt19937_64& rng) const;

 private:
  std::size_t capacity_;
  std::deque<Transition> items_;
};

struct LossAndGradient {
  double loss = 0.0;
  Mlp gradient;
};

// Mean over the batch of (Q(s, a) - y)^2 with y = r for terminal transitions
// and r + discount * max_a' Q_target(s', a') otherwise.
LossAndGradient loss_and_gradient(const Mlp& params, const Mlp& target_params,
                                  std::span<const Transition> batch,
                                  double discount);

// Lowest index wins ties.
int greedy_action(const Mlp& params, std::span<const double> state);
int act(const Mlp& params, std::span<const double> state, double epsilon,
        std::mt19937_64& rng);

double epsilon_for_episode(const DqnConfig& config, std::size_t episode);

// Entry e is the mean of the last min(e + 1, window) returns.
std::vector<double> moving_average(std::span<const double> returns,
                                   std::size_t window);

struct LearningCurve {
  std::vector<double> true_returns;
  std::vector<double> moving_average;
  Mlp params;
};

// Online network, target network, optimiser and replay memory of one run.
class DqnLearner {
 public:
  DqnLearner(std::size_t state_dim, int actions, const DqnConfig& config);

  int act(std::span<const double> state, double epsilon);
  void remember(Transition t) { buffer_.push(std::move(t)); }
  // One gradient step on a replay minibatch; no-op until the buffer holds a
  // full batch. Returns the minibatch loss when a step was taken.
  std::optional<double> learn();

  const Mlp& params() const { return online_; }
  const ReplayBuffer& buffer() const { return buffer_; }
  std::size_t gradient_steps() const { return gradient_steps_; }

 private:
  DqnConfig config_;
  Mlp online_;
  Mlp target_;
  AdamState adam_;
  ReplayBuffer buffer_;
  std::mt19937_64 rng_;
  std::size_t gradient_steps_ = 0;
};

// Trains on pseudo-rewards from `reward`. Each episode is rolled out
// epsilon-greedily, relabeled once it ends, and only then pushed to replay,
// followed by one gradient step per environment step. The returned curve
// tracks the true environment return, which the learner never sees.
LearningCurve train_imitation(const EnvParams& env, const ExpertSet& experts,
                              const RewardConfig& reward,
                              const DqnConfig& config,
                              std::size_t moving_average_window = 50);

// Early-stopping rule for true-reward training. Every `check_interval`
// episodes the greedy policy is screened on `screen_episodes` rollouts; if
// that clears the bar it is evaluated on `eval_episodes` fresh rollouts.
struct SolveCriterion {
  double target_return = 195.0;
  std::size_t eval_episodes = 100;
  std::size_t screen_episodes = 10;
  std::size_t check_interval = 10;
};

struct TrueRewardResult {
  Mlp params;
  std::vector<double> true_returns;
  std::optional<std::size_t> solved_after_episodes;
  double last_eval_return = 0.0;
};

// Standard online DQN on the environment's own reward, used to train
// experts. Stops early once `criterion` (if any) is met.
TrueRewardResult train_true_reward(const EnvParams& env,
                                   const DqnConfig& config,
                                   std::size_t max_episodes,
                                   const std::optional<SolveCriterion>& criterion,
                                   double reward_scale = 1.0);

// One greedy episode. States are pre-action observations, one per action.
Trajectory rollout_greedy(const Mlp& params, const EnvParams& env,
                          std::uint64_t seed);

double evaluate_greedy(const Mlp& params, const EnvParams& env,
                       std::size_t episodes, std::uint64_t seed);

}  // namespace otil

#endif  // OTIL_DQN_HPP_
