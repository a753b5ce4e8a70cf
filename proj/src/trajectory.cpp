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


#include "otil/trajectory.hpp"

#include <cmath>
#include <stdexcept>

namespace otil {

void validate(const Trajectory& trajectory) {
  if (trajectory.states.empty()) {
    throw std::invalid_argument("trajectory has no states");
  }
  const std::size_t d = trajectory.states.front().size();
  if (d == 0) throw std::invalid_argument("trajectory states are empty");
  for (const auto& s : trajectory.states) {
    if (s.size() != d) {
      throw std::invalid_argument("trajectory states have mixed dimensions");
    }
  }
  if (!trajectory.actions.empty() &&
      trajectory.actions.size() != trajectory.states.size()) {
    throw std::invalid_argument(
        "trajectory must record one action per state or none");
  }
}

void validate(const ExpertSet& experts) {
  if (experts.trajectories.empty()) {
    throw std::invalid_argument("expert set is empty");
  }
  for (const auto& t : experts.trajectories) {
    validate(t);
    if (t.dim() != experts.dim()) {
      throw std::invalid_argument("expert trajectories have mixed dimensions");
    }
  }
}

std::vector<std::size_t> evenly_spaced_indices(std::size_t source_length,
                                               std::size_t target_length) {
  if (target_length == 0) {
    throw std::invalid_argument("resample target length must be positive");
  }
  if (source_length == 0) {
    throw std::invalid_argument("cannot resample an empty sequence");
  }
  std::vector<std::size_t> idx(target_length, 0);
  if (target_length == 1) return idx;
  const double span = static_cast<double>(source_length - 1);
  const double steps = static_cast<double>(target_length - 1);
  for (std::size_t j = 0; j < target_length; ++j) {
    idx[j] = static_cast<std::size_t>(
        std::llround(static_cast<double>(j) * span / steps));
  }
  return idx;
}

Trajectory evenly_resample(const Trajectory& trajectory,
                           std::size_t target_length) {
  validate(trajectory);
  const auto idx = evenly_spaced_indices(trajectory.size(), target_length);
  Trajectory out;
  out.env_name = trajectory.env_name;
  out.env_params = trajectory.env_params;
  out.seed = trajectory.seed;
  out.true_return = trajectory.true_return;
  out.states.reserve(target_length);
  for (std::size_t i : idx) out.states.push_back(trajectory.states[i]);
  if (!trajectory.actions.empty()) {
    out.actions.reserve(target_length);
    for (std::size_t i : idx) out.actions.push_back(trajectory.actions[i]);
  }
  return out;
}

DiscreteMeasure to_measure(const Trajectory& trajectory) {
  return DiscreteMeasure(trajectory.states);
}

}  // namespace otil
