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


#ifndef OTIL_ORACLES_HPP_
#define OTIL_ORACLES_HPP_

// Slow reference computations that share no code path with the fast
// implementations they check.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "otil/dqn.hpp"
#include "otil/mlp.hpp"
#include "otil/ot_core.hpp"

namespace otil::oracle {

// min over all bijections sigma of (1/T) sum_i |x_i - y_sigma(i)|^2, by
// enumerating all T! permutations. Inputs need not be sorted.
double brute_force_w2_1d(std::span<const double> x, std::span<const double> y);

// Central differences of the DQN loss with respect to every parameter of
// `params`; the target network is held fixed.
Mlp finite_difference_gradient(const Mlp& params, const Mlp& target_params,
                               std::span<const Transition> batch,
                               double discount, double step);

// Largest componentwise |a - n| / max(|a|, |n|, floor) over two gradients.
double max_relative_error(const Mlp& analytic, const Mlp& numeric,
                          double floor);

std::vector<Vector> random_points(std::size_t count, std::size_t dim,
                                  std::mt19937_64& rng, double scale = 1.0);

std::vector<Transition> random_batch(std::size_t count, std::size_t state_dim,
                                     std::size_t actions,
                                     std::mt19937_64& rng);

}  // namespace otil::oracle

#endif  // OTIL_ORACLES_HPP_
