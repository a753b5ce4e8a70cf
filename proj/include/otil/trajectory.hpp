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


#ifndef OTIL_TRAJECTORY_HPP_
#define OTIL_TRAJECTORY_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "otil/ot_core.hpp"

namespace otil {

// Ordered environment states of one episode. `states[t]` is the state the
// policy observed before choosing `actions[t]`; `actions` is either empty or
// one entry per state.
struct Trajectory {
  std::vector<Vector> states;
  std::vector<int> actions;
  std::string env_name;
  std::map<std::string, double> env_params;
  std::uint64_t seed = 0;
  double true_return = 0.0;

  std::size_t size() const { return states.size(); }
  std::size_t dim() const { return states.empty() ? 0 : states.front().size(); }

  bool operator==(const Trajectory&) const = default;
};

// P expert trajectories of a common state dimension.
struct ExpertSet {
  std::vector<Trajectory> trajectories;
  std::size_t nominal_horizon = 200;

  std::size_t size() const { return trajectories.size(); }
  std::size_t dim() const {
    return trajectories.empty() ? 0 : trajectories.front().dim();
  }

  bool operator==(const ExpertSet&) const = default;
};

// Throws std::invalid_argument on an empty trajectory or ragged states.
void validate(const Trajectory& trajectory);
// Throws std::invalid_argument when the set is empty or dimensions differ.
void validate(const ExpertSet& experts);

// Index j of the output maps to round(j * (L - 1) / (M - 1)) of the input.
std::vector<std::size_t> evenly_spaced_indices(std::size_t source_length,
                                               std::size_t target_length);

Trajectory evenly_resample(const Trajectory& trajectory,
                           std::size_t target_length);

DiscreteMeasure to_measure(const Trajectory& trajectory);

}  // namespace otil

#endif  // OTIL_TRAJECTORY_HPP_
