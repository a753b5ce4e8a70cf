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


#ifndef OTIL_DEMONSTRATIONS_HPP_
#define OTIL_DEMONSTRATIONS_HPP_

// Expert generation and the demonstration-set file format.
//
// A demo-set file is line oriented:
//
//   otil-demos 1.0 {"count":5,"nominal_horizon":200}
//   {"dim":4,"env":"CartPole","has_actions":true,"length":200,
//    "params":{...},"seed":17,"true_return":200.0}
//   s_0,s_1,s_2,s_3,a
//   ...                                  one line per timestep
//                                        blank line between trajectories
//   {"dim":4,...}
//
// State components are written with 17 significant digits, so a save/load
// cycle reproduces every double exactly. Readers reject files whose major
// version differs from theirs.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "otil/dqn.hpp"
#include "otil/envs.hpp"
#include "otil/mlp.hpp"
#include "otil/trajectory.hpp"

namespace otil {

inline constexpr int kDemoFormatMajor = 1;
inline constexpr int kDemoFormatMinor = 0;

// kPercentile applies the Pendulum acceptance rule to CartPole as well, for
// parameter settings that cannot be balanced for a full episode.
enum class CartPoleQuality { kStrict, kPercentile };

struct ExpertOptions {
  // Training budget per attempt. CartPole stops early once solved.
  std::size_t max_episodes = 2000;
  std::size_t pendulum_episodes = 400;
  std::size_t attempts = 3;
  // Greedy rollouts considered when picking the recorded episode.
  std::size_t candidate_rollouts = 20;
  SolveCriterion cartpole_criterion;
  CartPoleQuality cartpole_quality = CartPoleQuality::kStrict;
};

struct GeneratedExpert {
  Trajectory trajectory;
  Mlp policy;
  std::size_t attempts_used = 0;
};

// Trains a DQN on the true reward of `env` and records one greedy episode.
// CartPole experts must be solved (195 over 100 greedy episodes) and the
// recorded episode must last the full max_steps; Pendulum experts record a
// rollout at or above the 75th percentile of the candidate returns.
// With CartPoleQuality::kPercentile, CartPole uses the Pendulum rule. Throws
// GenerationFailure naming the parameters when every attempt falls short.
GeneratedExpert generate_expert(const EnvParams& env, const DqnConfig& config,
                                std::uint64_t demo_seed,
                                const ExpertOptions& options = {});

// Linear interpolation between order statistics.
double percentile(std::vector<double> values, double q);

void save_demo_set(const ExpertSet& experts, std::ostream& out);
void save_demo_set(const ExpertSet& experts, const std::string& path);
// Throws ParseError (with line number) for malformed text and
// ValidationError for well-formed but inconsistent content, including an
// empty file.
ExpertSet load_demo_set(std::istream& in, const std::string& source = "demo");
ExpertSet load_demo_set(const std::string& path);

}  // namespace otil

#endif  // OTIL_DEMONSTRATIONS_HPP_
