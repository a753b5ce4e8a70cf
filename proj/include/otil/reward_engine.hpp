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


#ifndef OTIL_REWARD_ENGINE_HPP_
#define OTIL_REWARD_ENGINE_HPP_

// Optimal-transport pseudo-rewards for imitation from several experts.
//
// Two ways of combining the experts are supported:
//
//  * SCOTIL concatenates all expert states into one pool, sub-samples a single
//    expert trajectory from it, and charges each agent state the squared
//    projected gap to its rank-aligned expert state.
//  * SMMOTIL keeps the experts separate. The agent becomes marginal 0 of a
//    (P + 1)-marginal problem and each agent state is charged the full
//    multi-marginal cost of the rank it occupies.
//
// In both cases the per-step costs of an episode sum to the corresponding
// squared sliced distance evaluated on the same projections. RewardedEpisode
// carries both numbers so callers can check the identity.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "otil/ot_core.hpp"
#include "otil/trajectory.hpp"

namespace otil {

enum class RewardMode { kScotil, kSmmotil };
// kStratified: resample every expert to the horizon, then fill each time slot
//   with the state of a uniformly chosen expert.
// kUniformPool: sort the pooled states of all experts by normalised time, cut
//   the pool into `horizon` contiguous strata and draw one state uniformly
//   from each (sampling without replacement, experts keep native lengths).
enum class CombineStrategy { kStratified, kUniformPool };
enum class CostTransform { kNegate, kExp };
// kAbsolute drops the square on the per-step projected gap. The costs then no
// longer sum to the sliced distance.
enum class StepTerm { kSquared, kAbsolute };

std::string to_string(RewardMode mode);
std::string to_string(CombineStrategy strategy);
std::string to_string(CostTransform transform);
std::string to_string(StepTerm term);
// Case-insensitive; throw std::invalid_argument on unknown names.
RewardMode parse_reward_mode(const std::string& name);
CombineStrategy parse_combine_strategy(const std::string& name);
CostTransform parse_cost_transform(const std::string& name);
StepTerm parse_step_term(const std::string& name);

struct RewardConfig {
  RewardMode mode = RewardMode::kSmmotil;
  std::size_t projection_count = 50;
  std::uint64_t projection_seed = 0;
  // Draw a new projection set for every episode instead of reusing one.
  bool fresh_projections = true;

  CombineStrategy combine_strategy = CombineStrategy::kStratified;
  std::uint64_t combine_seed = 0;
  bool recombine_each_episode = false;

  // SMMOTIL weights over agent + P experts; uniform when unset.
  std::optional<Vector> weights;

  CostTransform transform = CostTransform::kNegate;
  double beta = 5.0;
  StepTerm step_term = StepTerm::kSquared;

  void validate() const;
};

struct RewardedEpisode {
  std::vector<Vector> states;
  std::vector<int> actions;
  std::vector<double> costs;
  std::vector<double> rewards;
  double total_cost = 0.0;
  // Sliced distance recomputed directly on the same projections.
  double reference_distance = 0.0;

  bool operator==(const RewardedEpisode&) const = default;
};

Trajectory combine_concat_sample(const ExpertSet& experts,
                                 std::size_t horizon,
                                 CombineStrategy strategy,
                                 std::uint64_t seed);

// Per-step SCOTIL costs, indexed by the agent's original time index.
std::vector<double> scotil_costs(const DiscreteMeasure& agent,
                                 const DiscreteMeasure& combined_expert,
                                 const ProjectionSet& projections,
                                 StepTerm term = StepTerm::kSquared);

// Per-step SMMOTIL costs. `weights` covers the agent (index 0) followed by
// the experts.
std::vector<double> smmotil_costs(const DiscreteMeasure& agent,
                                  std::span<const DiscreteMeasure> experts,
                                  const BarycentricWeights& weights,
                                  const ProjectionSet& projections);

std::vector<double> transform_costs(std::span<const double> costs,
                                    const RewardConfig& config);

// Holds the run-level state of reward relabeling: the experts and, in SCOTIL
// mode, the combined expert drawn once per run.
class Relabeler {
 public:
  Relabeler(ExpertSet experts, RewardConfig config);

  // Throws std::invalid_argument on an empty episode or a state dimension
  // that differs from the experts'. Throws std::logic_error if the reward-sum
  // identity is violated by more than 1e-9.
  RewardedEpisode relabel(const std::vector<Vector>& agent_states,
                          std::uint64_t episode_seed,
                          std::span<const int> actions = {}) const;

  const RewardConfig& config() const { return config_; }
  const ExpertSet& experts() const { return experts_; }
  // Combined SCOTIL demonstration at the nominal horizon, if drawn per run.
  const std::optional<Trajectory>& combined_expert() const {
    return combined_;
  }

 private:
  ExpertSet experts_;
  RewardConfig config_;
  std::optional<Trajectory> combined_;
};

RewardedEpisode relabel_episode(const std::vector<Vector>& agent_states,
                                const ExpertSet& experts,
                                const RewardConfig& config,
                                std::uint64_t episode_seed);

}  // namespace otil

#endif  // OTIL_REWARD_ENGINE_HPP_
