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


#ifndef OTIL_CONFIG_HPP_
#define OTIL_CONFIG_HPP_

// Experiment configuration files.
//
// The format is INI-like: `[section]` headers followed by `key = value`
// lines; lines starting with `;` or `#` are comments (no trailing comments);
// list values are comma separated.
// Unknown sections or keys are rejected. Sections:
//
//   [experiment]  environment, variation_axis, expert_param_values,
//                 agent_param_value, modes, seeds, train_episodes,
//                 moving_average_window, demo_seed, demo_file, parallelism
//   [env]         any environment parameter name (see params_snapshot)
//   [experts]     max_episodes, pendulum_episodes, attempts,
//                 candidate_rollouts, cartpole_quality
//   [dqn]         hidden, learning_rate, discount, batch_size,
//                 replay_capacity, epsilon_start, epsilon_end,
//                 epsilon_decay, target_sync_interval
//   [reward]      projection_count, projection_seed, fresh_projections,
//                 combine_strategy, combine_seed, recombine_each_episode,
//                 weights, transform, beta, step_term

#include <cstddef>
#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "otil/demonstrations.hpp"
#include "otil/dqn.hpp"
#include "otil/envs.hpp"
#include "otil/reward_engine.hpp"

namespace otil {

enum class EnvKind { kCartPole, kPendulum };
enum class VariationAxis { kLength, kMass };

struct ExperimentConfig {
  EnvKind environment = EnvKind::kCartPole;
  VariationAxis variation_axis = VariationAxis::kLength;
  std::vector<double> expert_param_values;
  double agent_param_value = 0.0;
  std::vector<RewardMode> modes = {RewardMode::kScotil, RewardMode::kSmmotil};
  std::vector<std::uint64_t> seeds;
  std::size_t train_episodes = 0;
  std::size_t moving_average_window = 50;
  std::uint64_t demo_seed = 0;
  std::string demo_file = "experts.demo";
  std::size_t parallelism = 1;

  // Base environment; the variation axis is applied on top.
  EnvParams base_env;
  ExpertOptions experts;
  DqnConfig dqn;
  RewardConfig reward;

  // Throws ValidationError.
  void validate() const;
};

std::string to_string(EnvKind kind);
std::string to_string(VariationAxis axis);

// Default expert values (five per axis) and the agent value.
std::vector<double> default_expert_values(EnvKind env, VariationAxis axis);
double default_agent_value(EnvKind env, VariationAxis axis);

// A configuration with every default filled in.
ExperimentConfig default_config(EnvKind env, VariationAxis axis);

// Throws ParseError for syntax problems and ValidationError for unknown keys
// or invalid values.
ExperimentConfig parse_config(std::istream& in,
                              const std::string& source = "config");
ExperimentConfig load_config(const std::string& path);

EnvParams with_axis_value(const EnvParams& base, VariationAxis axis,
                          double value);
EnvParams agent_env(const ExperimentConfig& config);
std::vector<EnvParams> expert_envs(const ExperimentConfig& config);

}  // namespace otil

#endif  // OTIL_CONFIG_HPP_
