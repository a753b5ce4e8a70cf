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


#include "otil/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <sstream>

#include "otil/demonstrations.hpp"
#include "otil/mlp.hpp"
#include "otil/oracles.hpp"
#include "otil/ot_core.hpp"
#include "otil/reward_engine.hpp"

namespace otil {

namespace {

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool bits_equal(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i])) {
      return false;
    }
  }
  return true;
}

double random_value(std::mt19937_64& rng) {
  // Mix ordinary magnitudes with extreme exponents and signed zero.
  switch (uniform(rng, 0, 9)) {
    case 0:
      return -0.0;
    case 1:
      return std::ldexp(std::normal_distribution<double>()(rng),
                        static_cast<int>(uniform(rng, 0, 1800)) - 900);
    default:
      return std::normal_distribution<double>(0.0, 10.0)(rng);
  }
}

}  // namespace

CheckResult check_oracle_equivalence(std::size_t instances, std::uint64_t seed,
                                     W2Function w2) {
  if (!w2) w2 = [](auto u, auto v) { return w2_squared_1d(u, v); };
  Timer timer;
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (std::size_t i = 0; i < instances; ++i) {
    const std::size_t T = 1 + i % 6;
    Vector x(T), y(T);
    std::normal_distribution<double> g(0.0, 3.0);
    for (auto& v : x) v = g(rng);
    for (auto& v : y) v = g(rng);
    const double expected = oracle::brute_force_w2_1d(x, y);
    Vector xs = x, ys = y;
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    const double got = w2(xs, ys);
    worst = std::max(worst, std::abs(got - expected));
    if (!(std::abs(got - expected) <= 1e-9)) worst = std::max(worst, 1.0);
  }
  return {"1d-ot-oracle-equivalence", worst <= 1e-9, timer.seconds(),
          std::to_string(instances) + " instances, max |err| = " + sci(worst)};
}

CheckResult check_two_marginal_reduction(std::size_t instances,
                                         std::uint64_t seed) {
  Timer timer;
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  const auto half = BarycentricWeights::uniform(2);
  for (std::size_t i = 0; i < instances; ++i) {
    const std::size_t d = uniform(rng, 1, 5);
    const std::size_t T = uniform(rng, 1, 50);
    const std::size_t K = uniform(rng, 1, 20);
    const std::vector<DiscreteMeasure> pair = {
        DiscreteMeasure(oracle::random_points(T, d, rng)),
        DiscreteMeasure(oracle::random_points(T, d, rng, 2.0))};
    const auto theta = sample_projections(d, K, rng());
    const double mw = sliced_mw_squared(pair, half, theta);
    const double w2 = sliced_w2_squared(pair[0], pair[1], theta);
    worst = std::max(worst, std::abs(mw - w2 / 4.0));
  }
  return {"two-marginal-reduction", worst <= 1e-9, timer.seconds(),
          std::to_string(instances) + " instances, max |err| = " + sci(worst)};
}

CheckResult check_reward_sum_identities(std::size_t instances,
                                        std::uint64_t seed) {
  Timer timer;
  std::mt19937_64 rng(seed);
  double worst_scotil = 0.0;
  double worst_smmotil = 0.0;
  const std::size_t ks[] = {1, 5, 50};
  for (std::size_t i = 0; i < instances; ++i) {
    const std::size_t d = uniform(rng, 1, 5);
    const std::size_t T = uniform(rng, 1, 60);
    const std::size_t P = uniform(rng, 1, 5);
    const auto theta = sample_projections(d, ks[i % 3], rng());
    const DiscreteMeasure agent(oracle::random_points(T, d, rng));
    std::vector<DiscreteMeasure> experts;
    for (std::size_t p = 0; p < P; ++p) {
      experts.emplace_back(oracle::random_points(T, d, rng, 1.5));
    }

    const auto sc = scotil_costs(agent, experts.front(), theta);
    double sc_total = 0.0;
    for (double c : sc) sc_total += c;
    worst_scotil = std::max(
        worst_scotil,
        std::abs(sc_total - sliced_w2_squared(agent, experts.front(), theta)));

    Vector lambda(P + 1);
    for (auto& w : lambda) w = std::uniform_real_distribution<double>(0.1, 1.0)(rng);
    double total = 0.0;
    for (double w : lambda) total += w;
    for (auto& w : lambda) w /= total;
    double head = 0.0;
    for (std::size_t j = 0; j < P; ++j) head += lambda[j];
    lambda.back() = 1.0 - head;
    const BarycentricWeights weights(lambda);

    const auto mc = smmotil_costs(agent, experts, weights, theta);
    double mc_total = 0.0;
    for (double c : mc) mc_total += c;
    std::vector<DiscreteMeasure> all = {agent};
    all.insert(all.end(), experts.begin(), experts.end());
    worst_smmotil = std::max(
        worst_smmotil,
        std::abs(mc_total - sliced_mw_squared(all, weights, theta)));
  }
  const double worst = std::max(worst_scotil, worst_smmotil);
  return {"reward-sum-identities", worst <= 1e-9, timer.seconds(),
          std::to_string(instances) + " instances per mode, max |err| SCOTIL " +
              sci(worst_scotil) + ", SMMOTIL " + sci(worst_smmotil)};
}

CheckResult check_point_mass_slicing(std::size_t pairs,
                                     std::size_t projections,
                                     double relative_tolerance,
                                     std::uint64_t seed) {
  Timer timer;
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (std::size_t i = 0; i < pairs; ++i) {
    const auto pts = oracle::random_points(2, 3, rng);
    const DiscreteMeasure a({pts[0]});
    const DiscreteMeasure b({pts[1]});
    double expected = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
      expected += (pts[0][k] - pts[1][k]) * (pts[0][k] - pts[1][k]);
    }
    expected /= 3.0;
    const double got =
        sliced_w2_squared(a, b, sample_projections(3, projections, rng()));
    worst = std::max(worst, std::abs(got - expected) / expected);
  }
  return {"point-mass-slicing-law", worst <= relative_tolerance,
          timer.seconds(),
          std::to_string(pairs) + " pairs, K = " + std::to_string(projections) +
              ", max relative err = " + sci(worst)};
}

CheckResult check_gradients(std::size_t instances, std::uint64_t seed) {
  Timer timer;
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (std::size_t i = 0; i < instances; ++i) {
    std::vector<std::size_t> sizes = {uniform(rng, 1, 8)};
    const std::size_t hidden = uniform(rng, 0, 2);
    for (std::size_t h = 0; h < hidden; ++h) sizes.push_back(uniform(rng, 1, 8));
    sizes.push_back(uniform(rng, 1, 8));
    const Mlp params = make_mlp(sizes, rng());
    const Mlp target = make_mlp(sizes, rng());
    const auto batch = oracle::random_batch(uniform(rng, 1, 8), sizes.front(),
                                            sizes.back(), rng);
    const auto analytic = loss_and_gradient(params, target, batch, 0.99);
    const auto numeric =
        oracle::finite_difference_gradient(params, target, batch, 0.99, 1e-5);
    worst = std::max(worst, oracle::max_relative_error(analytic.gradient,
                                                       numeric, 1e-10));
  }
  return {"dqn-gradient-check", worst < 1e-4, timer.seconds(),
          std::to_string(instances) + " networks, max relative err = " +
              sci(worst)};
}

CheckResult check_serialization(std::size_t instances, std::uint64_t seed) {
  Timer timer;
  std::mt19937_64 rng(seed);
  std::size_t failures = 0;
  for (std::size_t i = 0; i < instances; ++i) {
    ExpertSet set;
    set.nominal_horizon = uniform(rng, 1, 400);
    const std::size_t d = uniform(rng, 1, 5);
    const std::size_t P = uniform(rng, 1, 5);
    for (std::size_t p = 0; p < P; ++p) {
      Trajectory t;
      t.env_name = p % 2 ? "CartPole" : "Pendulum";
      t.env_params = {{"length", random_value(rng)}, {"mass", random_value(rng)}};
      t.seed = rng();
      t.true_return = random_value(rng);
      const std::size_t L = uniform(rng, 1, 30);
      const bool actions = uniform(rng, 0, 1) == 1;
      for (std::size_t s = 0; s < L; ++s) {
        Vector state(d);
        for (auto& x : state) x = random_value(rng);
        t.states.push_back(std::move(state));
        if (actions) t.actions.push_back(static_cast<int>(uniform(rng, 0, 6)));
      }
      set.trajectories.push_back(std::move(t));
    }
    std::stringstream demo;
    save_demo_set(set, demo);
    const ExpertSet back = load_demo_set(demo);
    bool ok = back.nominal_horizon == set.nominal_horizon &&
              back.size() == set.size();
    for (std::size_t p = 0; ok && p < set.size(); ++p) {
      const auto& a = set.trajectories[p];
      const auto& b = back.trajectories[p];
      ok = a.env_name == b.env_name && a.seed == b.seed &&
           a.actions == b.actions && a.size() == b.size() &&
           bits_equal({a.true_return}, {b.true_return}) &&
           a.env_params.size() == b.env_params.size();
      for (const auto& [k, v] : a.env_params) {
        ok = ok && b.env_params.count(k) &&
             bits_equal({v}, {b.env_params.at(k)});
      }
      for (std::size_t s = 0; ok && s < a.size(); ++s) {
        ok = bits_equal(a.states[s], b.states[s]);
      }
    }

    std::vector<std::size_t> sizes = {uniform(rng, 1, 6)};
    for (std::size_t h = uniform(rng, 0, 2); h > 0; --h) {
      sizes.push_back(uniform(rng, 1, 6));
    }
    sizes.push_back(uniform(rng, 1, 6));
    Mlp net = zero_mlp(sizes);
    for (auto& w : net.weights) {
      for (auto& x : w) x = random_value(rng);
    }
    for (auto& b : net.biases) {
      for (auto& x : b) x = random_value(rng);
    }
    std::stringstream text;
    save_mlp(net, text);
    const Mlp net_back = load_mlp(text);
    ok = ok && net_back.layer_sizes == net.layer_sizes;
    for (std::size_t l = 0; ok && l < net.layers(); ++l) {
      ok = bits_equal(net.weights[l], net_back.weights[l]) &&
           bits_equal(net.biases[l], net_back.biases[l]);
    }
    if (!ok) ++failures;
  }
  return {"serialization-round-trip", failures == 0, timer.seconds(),
          std::to_string(instances) + " demo sets and networks, " +
              std::to_string(failures) + " mismatches"};
}

std::vector<CheckResult> run_verification(std::uint64_t seed) {
  std::vector<CheckResult> out;
  out.push_back(check_oracle_equivalence(500, seed + 1));
  out.push_back(check_two_marginal_reduction(200, seed + 2));
  out.push_back(check_reward_sum_identities(200, seed + 3));
  out.push_back(check_point_mass_slicing(20, 10000, 0.05, seed + 4));
  out.push_back(check_gradients(100, seed + 5));
  out.push_back(check_serialization(100, seed + 6));
  return out;
}

void print_report(std::span<const CheckResult> results, std::ostream& out) {
  std::size_t width = 5;
  for (const auto& r : results) width = std::max(width, r.name.size());
  char line[512];
  std::snprintf(line, sizeof line, "%-*s  %-6s  %9s  %s\n",
                static_cast<int>(width), "check", "status", "seconds",
                "detail");
  out << line;
  for (const auto& r : results) {
    std::snprintf(line, sizeof line, "%-*s  %-6s  %9.3f  %s\n",
                  static_cast<int>(width), r.name.c_str(),
                  r.passed ? "PASS" : "FAIL", r.seconds, r.detail.c_str());
    out << line;
  }
}

}  // namespace otil
