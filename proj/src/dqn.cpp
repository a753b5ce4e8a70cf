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


#include "otil/dqn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "otil/seeding.hpp"

namespace otil {

namespace {

// Stream indices for mix_seed, so every consumer of the run seed draws from
// an independent generator.
constexpr std::uint64_t kInitStream = 1;
constexpr std::uint64_t kPolicyStream = 2;
constexpr std::uint64_t kEnvStream = 3;
constexpr std::uint64_t kRewardStream = 4;
constexpr std::uint64_t kScreenStream = 5;
constexpr std::uint64_t kEvalStream = 6;

std::vector<std::size_t> layer_sizes(std::size_t state_dim, int actions,
                                     const DqnConfig& config) {
  std::vector<std::size_t> sizes;
  sizes.push_back(state_dim);
  sizes.insert(sizes.end(), config.hidden.begin(), config.hidden.end());
  sizes.push_back(static_cast<std::size_t>(actions));
  return sizes;
}

}  // namespace

void DqnConfig::validate() const {
  if (!(discount > 0.0 && discount < 1.0)) {
    throw std::invalid_argument("discount must be in (0, 1)");
  }
  if (batch_size == 0) throw std::invalid_argument("batch_size must be >= 1");
  if (replay_capacity == 0) {
    throw std::invalid_argument("replay_capacity must be >= 1");
  }
  if (!(epsilon_start >= 0.0 && epsilon_start <= 1.0) ||
      !(epsilon_end >= 0.0 && epsilon_end <= epsilon_start)) {
    throw std::invalid_argument(
        "need 0 <= epsilon_end <= epsilon_start <= 1");
  }
  if (!(epsilon_decay > 0.0 && epsilon_decay <= 1.0)) {
    throw std::invalid_argument("epsilon_decay must be in (0, 1]");
  }
  if (!(learning_rate > 0.0)) {
    throw std::invalid_argument("learning_rate must be positive");
  }
  for (auto h : hidden) {
    if (h == 0) throw std::invalid_argument("hidden sizes must be positive");
  }
}

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) {
    throw std::invalid_argument("replay capacity must be positive");
  }
}

void ReplayBuffer::push(Transition t) {
  if (items_.size() == capacity_) items_.pop_front();
  items_.push_back(std::move(t));
}

std::vector<Transition> ReplayBuffer::sample(std::size_t count,
                                             std::mt19937_64& rng) const {
  if (items_.empty()) throw std::invalid_argument("replay buffer is empty");
  std::uniform_int_distribution<std::size_t> pick(0, items_.size() - 1);
  std::vector<Transition> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(items_[pick(rng)]);
  return out;
}

LossAndGradient loss_and_gradient(const Mlp& params, const Mlp& target_params,
                                  std::span<const Transition> batch,
                                  double discount) {
  if (batch.empty()) throw std::invalid_argument("empty training batch");
  if (!params.same_shape(target_params)) {
    throw std::invalid_argument("online and target networks differ in shape");
  }
  LossAndGradient out;
  out.gradient = zero_mlp(params.layer_sizes);
  const double inv_batch = 1.0 / static_cast<double>(batch.size());
  Vector output_grad(params.output_dim());
  for (const auto& t : batch) {
    if (t.action < 0 ||
        static_cast<std::size_t>(t.action) >= params.output_dim()) {
      throw std::invalid_argument("transition action out of range");
    }
    double target = t.reward;
    if (!t.done) {
      const Vector next_q = forward(target_params, t.next_state);
      target += discount * *std::max_element(next_q.begin(), next_q.end());
    }
    const ForwardTrace trace = forward_trace(params, t.state);
    const double err = trace.activations.back()[t.action] - target;
    out.loss += err * err * inv_batch;
    std::fill(output_grad.begin(), output_grad.end(), 0.0);
    output_grad[t.action] = 2.0 * err * inv_batch;
    accumulate_gradient(params, trace, output_grad, out.gradient);
  }
  return out;
}

int greedy_action(const Mlp& params, std::span<const double> state) {
  const Vector q = forward(params, state);
  return static_cast<int>(std::max_element(q.begin(), q.end()) - q.begin());
}

int act(const Mlp& params, std::span<const double> state, double epsilon,
        std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (coin(rng) < epsilon) {
    std::uniform_int_distribution<int> any(
        0, static_cast<int>(params.output_dim()) - 1);
    return any(rng);
  }
  return greedy_action(params, state);
}

double epsilon_for_episode(const DqnConfig& config, std::size_t episode) {
  const double e = config.epsilon_start *
                   std::pow(config.epsilon_decay, static_cast<double>(episode));
  return std::max(config.epsilon_end, e);
}

std::vector<double> moving_average(std::span<const double> returns,
                                   std::size_t window) {
  if (window == 0) throw std::invalid_argument("window must be >= 1");
  std::vector<double> out(returns.size());
  for (std::size_t e = 0; e < returns.size(); ++e) {
    const std::size_t first = e + 1 >= window ? e + 1 - window : 0;
    double s = 0.0;
    for (std::size_t i = first; i <= e; ++i) s += returns[i];
    out[e] = s / static_cast<double>(e + 1 - first);
  }
  return out;
}

DqnLearner::DqnLearner(std::size_t state_dim, int actions,
                       const DqnConfig& config)
    : config_(config),
      online_(make_mlp(layer_sizes(state_dim, actions, config),
                       mix_seed(config.seed, kInitStream))),
      target_(online_),
      adam_(AdamState::for_params(online_, config.learning_rate)),
      buffer_(config.replay_capacity),
      rng_(mix_seed(config.seed, kPolicyStream)) {
  config_.validate();
}

int DqnLearner::act(std::span<const double> state, double epsilon) {
  return otil::act(online_, state, epsilon, rng_);
}

std::optional<double> DqnLearner::learn() {
  if (buffer_.size() < config_.batch_size) return std::nullopt;
  const auto batch = buffer_.sample(config_.batch_size, rng_);
  const Mlp& target = config_.target_sync_interval > 0 ? target_ : online_;
  auto lg = loss_and_gradient(online_, target, batch, config_.discount);
  adam_step(online_, adam_, lg.gradient);
  ++gradient_steps_;
  if (config_.target_sync_interval > 0 &&
      gradient_steps_ % config_.target_sync_interval == 0) {
    target_ = online_;
  }
  return lg.loss;
}

LearningCurve train_imitation(const EnvParams& env, const ExpertSet& experts,
                              const RewardConfig& reward,
                              const DqnConfig& config,
                              std::size_t moving_average_window) {
  validate(env);
  config.validate();
  validate(experts);
  if (experts.dim() != state_dim(env)) {
    throw std::invalid_argument("expert state dimension " +
                                std::to_string(experts.dim()) +
                                " does not match the environment (" +
                                std::to_string(state_dim(env)) + ")");
  }
  // Tie the reward randomness to the run seed.
  RewardConfig run_reward = reward;
  run_reward.projection_seed = mix_seed(reward.projection_seed, config.seed);
  run_reward.combine_seed = mix_seed(reward.combine_seed, config.seed);
  const Relabeler relabeler(experts, run_reward);

  DqnLearner learner(state_dim(env), action_count(env), config);
  const std::uint64_t env_seed = mix_seed(config.seed, kEnvStream);
  const std::uint64_t reward_seed = mix_seed(config.seed, kRewardStream);

  LearningCurve curve;
  std::vector<Vector> states;
  std::vector<Vector> next_states;
  std::vector<int> actions;
  std::vector<bool> done;
  for (std::size_t episode = 0; episode < config.train_episodes; ++episode) {
    const double epsilon = epsilon_for_episode(config, episode);
    states.clear();
    next_states.clear();
    actions.clear();
    done.clear();

    EnvState state = reset(env, mix_seed(env_seed, episode));
    Vector obs = state_vector(state);
    double true_return = 0.0;
    for (;;) {
      const int a = learner.act(obs, epsilon);
      const auto r = step(state, a, env);
      Vector next_obs = state_vector(r.state);
      states.push_back(obs);
      actions.push_back(a);
      next_states.push_back(next_obs);
      done.push_back(r.terminated && !r.time_limit);
      true_return += r.true_reward;
      state = r.state;
      obs = std::move(next_obs);
      if (r.terminated) break;
    }

    // Each transition is rewarded for the state its action leads to.
    const RewardedEpisode rewarded =
        relabeler.relabel(next_states, mix_seed(reward_seed, episode));
    for (std::size_t t = 0; t < states.size(); ++t) {
      learner.remember({std::move(states[t]), actions[t], rewarded.rewards[t],
                        std::move(next_states[t]), done[t]});
    }
    for (std::size_t t = 0; t < actions.size(); ++t) learner.learn();
    curve.true_returns.push_back(true_return);
  }
  curve.moving_average =
      moving_average(curve.true_returns, moving_average_window);
  curve.params = learner.params();
  return curve;
}

TrueRewardResult train_true_reward(
    const EnvParams& env, const DqnConfig& config, std::size_t max_episodes,
    const std::optional<SolveCriterion>& criterion, double reward_scale) {
  validate(env);
  config.validate();
  DqnLearner learner(state_dim(env), action_count(env), config);
  const std::uint64_t env_seed = mix_seed(config.seed, kEnvStream);

  TrueRewardResult result;
  for (std::size_t episode = 0; episode < max_episodes; ++episode) {
    const double epsilon = epsilon_for_episode(config, episode);
    EnvState state = reset(env, mix_seed(env_seed, episode));
    Vector obs = state_vector(state);
    double true_return = 0.0;
    for (;;) {
      const int a = learner.act(obs, epsilon);
      const auto r = step(state, a, env);
      Vector next_obs = state_vector(r.state);
      learner.remember({obs, a, r.true_reward * reward_scale, next_obs,
                        r.terminated && !r.time_limit});
      learner.learn();
      true_return += r.true_reward;
      state = r.state;
      obs = std::move(next_obs);
      if (r.terminated) break;
    }
    result.true_returns.push_back(true_return);

    if (criterion && (episode + 1) % criterion->check_interval == 0) {
      const double screen = evaluate_greedy(
          learner.params(), env, criterion->screen_episodes,
          mix_seed(mix_seed(config.seed, kScreenStream), episode));
      if (screen >= criterion->target_return) {
        result.last_eval_return = evaluate_greedy(
            learner.params(), env, criterion->eval_episodes,
            mix_seed(mix_seed(config.seed, kEvalStream), episode));
        if (result.last_eval_return >= criterion->target_return) {
          result.solved_after_episodes = episode + 1;
          break;
        }
      }
    }
  }
  result.params = learner.params();
  return result;
}

Trajectory rollout_greedy(const Mlp& params, const EnvParams& env,
                          std::uint64_t seed) {
  Trajectory traj;
  traj.env_name = env_name(env);
  traj.env_params = params_snapshot(env);
  traj.seed = seed;
  EnvState state = reset(env, seed);
  for (;;) {
    Vector obs = state_vector(state);
    const int a = greedy_action(params, obs);
    const auto r = step(state, a, env);
    traj.states.push_back(std::move(obs));
    traj.actions.push_back(a);
    traj.true_return += r.true_reward;
    state = r.state;
    if (r.terminated) break;
  }
  return traj;
}

double evaluate_greedy(const Mlp& params, const EnvParams& env,
                       std::size_t episodes, std::uint64_t seed) {
  if (episodes == 0) throw std::invalid_argument("need >= 1 episode");
  double total = 0.0;
  for (std::size_t i = 0; i < episodes; ++i) {
    total += rollout_greedy(params, env, mix_seed(seed, i)).true_return;
  }
  return total / static_cast<double>(episodes);
}

}  // namespace otil
