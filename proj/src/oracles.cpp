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


#include "otil/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace otil::oracle {

double brute_force_w2_1d(std::span<const double> x,
                         std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) {
    throw std::invalid_argument("brute_force_w2_1d needs equal nonempty sizes");
  }
  std::vector<std::size_t> sigma(x.size());
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x[i] - y[sigma[i]];
      cost += d * d;
    }
    best = std::min(best, cost);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return best / static_cast<double>(x.size());
}

Mlp finite_difference_gradient(const Mlp& params, const Mlp& target_params,
                               std::span<const Transition> batch,
                               double discount, double step) {
  Mlp grad = zero_mlp(params.layer_sizes);
  Mlp probe = params;
  auto loss_at = [&]() {
    return loss_and_gradient(probe, target_params, batch, discount).loss;
  };
  auto sweep = [&](std::vector<Vector>& probe_blocks,
                   std::vector<Vector>& grad_blocks) {
    for (std::size_t l = 0; l < probe_blocks.size(); ++l) {
      for (std::size_t i = 0; i < probe_blocks[l].size(); ++i) {
        const double saved = probe_blocks[l][i];
        probe_blocks[l][i] = saved + step;
        const double up = loss_at();
        probe_blocks[l][i] = saved - step;
        const double down = loss_at();
        probe_blocks[l][i] = saved;
        grad_blocks[l][i] = (up - down) / (2.0 * step);
      }
    }
  };
  sweep(probe.weights, grad.weights);
  sweep(probe.biases, grad.biases);
  return grad;
}

double max_relative_error(const Mlp& analytic, const Mlp& numeric,
                          double floor) {
  if (!analytic.same_shape(numeric)) {
    throw std::invalid_argument("gradient shapes differ");
  }
  double worst = 0.0;
  auto scan = [&](const std::vector<Vector>& a, const std::vector<Vector>& n) {
    for (std::size_t l = 0; l < a.size(); ++l) {
      for (std::size_t i = 0; i < a[l].size(); ++i) {
        const double scale =
            std::max({std::abs(a[l][i]), std::abs(n[l][i]), floor});
        worst = std::max(worst, std::abs(a[l][i] - n[l][i]) / scale);
      }
    }
  };
  scan(analytic.weights, numeric.weights);
  scan(analytic.biases, numeric.biases);
  return worst;
}

std::vector<Vector> random_points(std::size_t count, std::size_t dim,
                                  std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> g(0.0, scale);
  std::vector<Vector> out(count, Vector(dim));
  for (auto& p : out) {
    for (auto& x : p) x = g(rng);
  }
  return out;
}

std::vector<Transition> random_batch(std::size_t count, std::size_t state_dim,
                                     std::size_t actions,
                                     std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_int_distribution<int> a(0, static_cast<int>(actions) - 1);
  std::bernoulli_distribution done(0.3);
  std::vector<Transition> out(count);
  for (auto& t : out) {
    t.state.resize(state_dim);
    t.next_state.resize(state_dim);
    for (auto& x : t.state) x = g(rng);
    for (auto& x : t.next_state) x = g(rng);
    t.action = a(rng);
    t.reward = g(rng);
    t.done = done(rng);
  }
  return out;
}

}  // namespace otil::oracle
