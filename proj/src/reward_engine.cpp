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


#include "otil/reward_engine.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <tuple>

#include "otil/seeding.hpp"

namespace otil {

namespace {

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

std::vector<DiscreteMeasure> resampled_measures(const ExpertSet& experts,
                                                std::size_t length) {
  std::vector<DiscreteMeasure> out;
  out.reserve(experts.size());
  for (const auto& t : experts.trajectories) {
    out.push_back(to_measure(
        t.size() == length ? t : evenly_resample(t, length)));
  }
  return out;
}

}  // namespace

std::string to_string(RewardMode mode) {
  return mode == RewardMode::kScotil ? "SCOTIL" : "SMMOTIL";
}
std::string to_string(CombineStrategy strategy) {
  return strategy == CombineStrategy::kStratified ? "STRATIFIED"
                                                  : "UNIFORM_POOL";
}
std::string to_string(CostTransform transform) {
  return transform == CostTransform::kNegate ? "NEGATE" : "EXP";
}
std::string to_string(StepTerm term) {
  return term == StepTerm::kSquared ? "SQUARED" : "ABSOLUTE";
}

RewardMode parse_reward_mode(const std::string& name) {
  const auto n = upper(name);
  if (n == "SCOTIL") return RewardMode::kScotil;
  if (n == "SMMOTIL") return RewardMode::kSmmotil;
  throw std::invalid_argument("unknown reward mode '" + name + "'");
}
CombineStrategy parse_combine_strategy(const std::string& name) {
  const auto n = upper(name);
  if (n == "STRATIFIED") return CombineStrategy::kStratified;
  if (n == "UNIFORM_POOL") return CombineStrategy::kUniformPool;
  throw std::invalid_argument("unknown combine strategy '" + name + "'");
}
CostTransform parse_cost_transform(const std::string& name) {
  const auto n = upper(name);
  if (n == "NEGATE") return CostTransform::kNegate;
  if (n == "EXP") return CostTransform::kExp;
  throw std::invalid_argument("unknown reward transform '" + name + "'");
}
StepTerm parse_step_term(const std::string& name) {
  const auto n = upper(name);
  if (n == "SQUARED") return StepTerm::kSquared;
  if (n == "ABSOLUTE") return StepTerm::kAbsolute;
  throw std::invalid_argument("unknown step term '" + name + "'");
}

void RewardConfig::validate() const {
  if (projection_count == 0) {
    throw std::invalid_argument("projection_count must be >= 1");
  }
  if (transform == CostTransform::kExp && !(beta > 0.0)) {
    throw std::invalid_argument("beta must be positive");
  }
  if (weights) BarycentricWeights check(*weights);
}

Trajectory combine_concat_sample(const ExpertSet& experts,
                                 std::size_t horizon,
                                 CombineStrategy strategy,
                                 std::uint64_t seed) {
  validate(experts);
  if (horizon == 0) {
    throw std::invalid_argument("combined horizon must be positive");
  }
  const std::size_t P = experts.size();
  std::mt19937_64 rng(seed);

  // (expert, time index) of every selected state, in output order.
  std::vector<std::pair<std::size_t, std::size_t>> picks;
  std::vector<Trajectory> source = experts.trajectories;

  if (strategy == CombineStrategy::kStratified) {
    for (auto& t : source) {
      if (t.size() != horizon) t = evenly_resample(t, horizon);
    }
    std::uniform_int_distribution<std::size_t> which(0, P - 1);
    picks.reserve(horizon);
    for (std::size_t t = 0; t < horizon; ++t) picks.emplace_back(which(rng), t);
  } else {
    std::size_t pool_size = 0;
    for (const auto& t : source) pool_size += t.size();
    if (pool_size < horizon) {
      for (auto& t : source) {
        if (t.size() != horizon) t = evenly_resample(t, horizon);
      }
    }
    std::vector<std::pair<std::size_t, std::size_t>> pool;
    for (std::size_t p = 0; p < P; ++p) {
      for (std::size_t t = 0; t < source[p].size(); ++t) pool.emplace_back(p, t);
    }
    auto phase = [&](const std::pair<std::size_t, std::size_t>& e) {
      const std::size_t len = source[e.first].size();
      return len <= 1 ? 0.0
                      : static_cast<double>(e.second) /
                            static_cast<double>(len - 1);
    };
    std::sort(pool.begin(), pool.end(), [&](const auto& a, const auto& b) {
      return std::make_tuple(phase(a), a.first, a.second) <
             std::make_tuple(phase(b), b.first, b.second);
    });
    const std::size_t n = pool.size();
    picks.reserve(horizon);
    for (std::size_t t = 0; t < horizon; ++t) {
      std::uniform_int_distribution<std::size_t> pick(t * n / horizon,
                                                      (t + 1) * n / horizon - 1);
      picks.push_back(pool[pick(rng)]);
    }
  }

  Trajectory out;
  out.env_name = source.front().env_name;
  if (P == 1) out.env_params = source.front().env_params;
  out.seed = seed;
  double mean_return = 0.0;
  for (const auto& t : source) mean_return += t.true_return;
  out.true_return = mean_return / static_cast<double>(P);
  const bool with_actions = std::all_of(
      source.begin(), source.end(), [](const Trajectory& t) {
        return !t.actions.empty();
      });
  out.states.reserve(picks.size());
  for (const auto& [p, t] : picks) {
    out.states.push_back(source[p].states[t]);
    if (with_actions) out.actions.push_back(source[p].actions[t]);
  }
  return out;
}

std::vector<double> scotil_costs(const DiscreteMeasure& agent,
                                 const DiscreteMeasure& combined_expert,
                                 const ProjectionSet& projections,
                                 StepTerm term) {
  if (agent.size() != combined_expert.size() ||
      agent.dim() != combined_expert.dim()) {
    throw std::invalid_argument(
        "agent and expert must have equal atom counts and dimensions");
  }
  const std::vector<DiscreteMeasure> measures = {agent, combined_expert};
  const auto align = build_alignment(measures, projections);
  const std::size_t T = agent.size();
  const std::size_t K = projections.size();

  std::vector<double> costs(T, 0.0);
  for (std::size_t k = 0; k < K; ++k) {
    const auto& a = align.at(k, 0);
    const auto& e = align.at(k, 1);
    for (std::size_t r = 0; r < T; ++r) {
      const double gap = a.sorted[r] - e.sorted[r];
      costs[a.order[r]] += term == StepTerm::kSquared ? gap * gap
                                                      : std::abs(gap);
    }
  }
  const double scale = 1.0 / static_cast<double>(K * T);
  for (auto& c : costs) c *= scale;
  return costs;
}

std::vector<double> smmotil_costs(const DiscreteMeasure& agent,
                                  std::span<const DiscreteMeasure> experts,
                                  const BarycentricWeights& weights,
                                  const ProjectionSet& projections) {
  if (experts.empty()) {
    throw std::invalid_argument("smmotil_costs needs at least one expert");
  }
  if (weights.size() != experts.size() + 1) {
    throw std::invalid_argument(
        "SMMOTIL weights must cover the agent and every expert (P + 1)");
  }
  std::vector<DiscreteMeasure> measures;
  measures.reserve(experts.size() + 1);
  measures.push_back(agent);
  measures.insert(measures.end(), experts.begin(), experts.end());
  const auto align = build_alignment(measures, projections);
  const std::size_t T = agent.size();
  const std::size_t K = projections.size();
  const std::size_t M = measures.size();

  std::vector<double> costs(T, 0.0);
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t r = 0; r < T; ++r) {
      double bary = 0.0;
      for (std::size_t j = 0; j < M; ++j) {
        bary += weights[j] * align.at(k, j).sorted[r];
      }
      double rank_cost = 0.0;
      for (std::size_t j = 0; j < M; ++j) {
        const double d = align.at(k, j).sorted[r] - bary;
        rank_cost += weights[j] * d * d;
      }
      costs[align.aligned_index(k, 0, r)] += rank_cost;
    }
  }
  const double scale = 1.0 / static_cast<double>(K * T);
  for (auto& c : costs) c *= scale;
  return costs;
}

std::vector<double> transform_costs(std::span<const double> costs,
                                    const RewardConfig& config) {
  std::vector<double> rewards(costs.size());
  const double length = static_cast<double>(costs.size());
  for (std::size_t t = 0; t < costs.size(); ++t) {
    const double c = costs[t];
    if (!std::isfinite(c) || c < 0.0) {
      throw std::invalid_argument("costs must be finite and nonnegative");
    }
    rewards[t] = config.transform == CostTransform::kNegate
                     ? -c
                     : std::exp(-config.beta * c * length);
  }
  return rewards;
}

Relabeler::Relabeler(ExpertSet experts, RewardConfig config)
    : experts_(std::move(experts)), config_(std::move(config)) {
  validate(experts_);
  config_.validate();
  if (config_.mode == RewardMode::kSmmotil && config_.weights &&
      config_.weights->size() != experts_.size() + 1) {
    throw std::invalid_argument(
        "SMMOTIL weights must have one entry per expert plus the agent");
  }
  if (config_.mode == RewardMode::kScotil && !config_.recombine_each_episode) {
    combined_ = combine_concat_sample(experts_, experts_.nominal_horizon,
                                      config_.combine_strategy,
                                      config_.combine_seed);
  }
}

RewardedEpisode Relabeler::relabel(const std::vector<Vector>& agent_states,
                                   std::uint64_t episode_seed,
                                   std::span<const int> actions) const {
  const std::size_t L = agent_states.size();
  if (L == 0) throw std::invalid_argument("agent episode is empty");
  const DiscreteMeasure agent(agent_states);
  if (agent.dim() != experts_.dim()) {
    throw std::invalid_argument("agent state dimension " +
                                std::to_string(agent.dim()) +
                                " differs from expert dimension " +
                                std::to_string(experts_.dim()));
  }
  const std::uint64_t projection_seed =
      config_.fresh_projections
          ? mix_seed(config_.projection_seed, episode_seed)
          : config_.projection_seed;
  const auto projections =
      sample_projections(agent.dim(), config_.projection_count, projection_seed);

  RewardedEpisode out;
  out.states = agent_states;
  out.actions.assign(actions.begin(), actions.end());
  bool identity_applies = true;

  if (config_.mode == RewardMode::kScotil) {
    const Trajectory combined =
        combined_ ? *combined_
                  : combine_concat_sample(experts_, experts_.nominal_horizon,
                                          config_.combine_strategy,
                                          mix_seed(config_.combine_seed,
                                                   episode_seed));
    const DiscreteMeasure expert = to_measure(
        combined.size() == L ? combined : evenly_resample(combined, L));
    out.costs = scotil_costs(agent, expert, projections, config_.step_term);
    out.reference_distance = sliced_w2_squared(agent, expert, projections);
    identity_applies = config_.step_term == StepTerm::kSquared;
  } else {
    const auto experts = resampled_measures(experts_, L);
    const auto weights = config_.weights
                             ? BarycentricWeights(*config_.weights)
                             : BarycentricWeights::uniform(experts.size() + 1);
    out.costs = smmotil_costs(agent, experts, weights, projections);
    std::vector<DiscreteMeasure> all;
    all.reserve(experts.size() + 1);
    all.push_back(agent);
    all.insert(all.end(), experts.begin(), experts.end());
    out.reference_distance = sliced_mw_squared(all, weights, projections);
  }

  for (double c : out.costs) out.total_cost += c;
  if (identity_applies &&
      std::abs(out.total_cost - out.reference_distance) > 1e-9) {
    throw std::logic_error("reward-sum identity violated: costs sum to " +
                           std::to_string(out.total_cost) +
                           " but the sliced distance is " +
                           std::to_string(out.reference_distance));
  }
  out.rewards = transform_costs(out.costs, config_);
  return out;
}

RewardedEpisode relabel_episode(const std::vector<Vector>& agent_states,
                                const ExpertSet& experts,
                                const RewardConfig& config,
                                std::uint64_t episode_seed) {
  return Relabeler(experts, config).relabel(agent_states, episode_seed);
}

}  // namespace otil
