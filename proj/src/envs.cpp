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


#include "otil/envs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace otil {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double wrap_angle(double phi) {
  constexpr double kPi = std::numbers::pi;
  double w = std::fmod(phi + kPi, 2.0 * kPi);
  if (w < 0.0) w += 2.0 * kPi;
  return w - kPi;
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) + " must be positive");
  }
}

void assign(std::map<std::string, double>& values, const char* key,
            double& target) {
  if (auto it = values.find(key); it != values.end()) {
    target = it->second;
    values.erase(it);
  }
}

void assign(std::map<std::string, double>& values, const char* key,
            int& target) {
  double v = target;
  assign(values, key, v);
  if (v != std::floor(v)) {
    throw std::invalid_argument(std::string(key) + " must be an integer");
  }
  target = static_cast<int>(v);
}

}  // namespace

void validate(const CartPoleParams& p) {
  require_positive(p.gravity, "gravity");
  require_positive(p.cart_mass, "cart_mass");
  require_positive(p.pole_mass, "pole_mass");
  require_positive(p.pole_half_length, "pole_half_length");
  require_positive(p.force_magnitude, "force_magnitude");
  require_positive(p.timestep, "timestep");
  require_positive(p.position_limit, "position_limit");
  require_positive(p.angle_limit, "angle_limit");
  if (p.max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
}

void validate(const PendulumParams& p) {
  require_positive(p.gravity, "gravity");
  require_positive(p.mass, "mass");
  require_positive(p.length, "length");
  require_positive(p.timestep, "timestep");
  require_positive(p.max_torque, "max_torque");
  require_positive(p.max_speed, "max_speed");
  if (p.torque_bins < 2) throw std::invalid_argument("torque_bins must be >= 2");
  if (p.max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
}

void validate(const EnvParams& params) {
  std::visit([](const auto& p) { validate(p); }, params);
}

CartPoleState reset(const CartPoleParams& params, std::uint64_t seed) {
  validate(params);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.05, 0.05);
  CartPoleState s;
  s.x = u(rng);
  s.x_dot = u(rng);
  s.phi = u(rng);
  s.phi_dot = u(rng);
  return s;
}

PendulumState reset(const PendulumParams& params, std::uint64_t seed) {
  validate(params);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi,
                                               std::numbers::pi);
  std::uniform_real_distribution<double> speed(-1.0, 1.0);
  PendulumState s;
  s.phi = angle(rng);
  s.phi_dot = speed(rng);
  return s;
}

EnvState reset(const EnvParams& params, std::uint64_t seed) {
  return std::visit([&](const auto& p) -> EnvState { return reset(p, seed); },
                    params);
}

StepResult<CartPoleState> step(const CartPoleState& s, int action,
                               const CartPoleParams& p) {
  if (action != 0 && action != 1) {
    throw std::invalid_argument("CartPole action must be 0 or 1, got " +
                                std::to_string(action));
  }
  const double force = action == 1 ? p.force_magnitude : -p.force_magnitude;
  const double total_mass = p.cart_mass + p.pole_mass;
  const double pole_moment = p.pole_mass * p.pole_half_length;
  const double cos_phi = std::cos(s.phi);
  const double sin_phi = std::sin(s.phi);

  const double temp =
      (force + pole_moment * s.phi_dot * s.phi_dot * sin_phi) / total_mass;
  const double phi_acc =
      (p.gravity * sin_phi - cos_phi * temp) /
      (p.pole_half_length *
       (4.0 / 3.0 - p.pole_mass * cos_phi * cos_phi / total_mass));
  const double x_acc = temp - pole_moment * phi_acc * cos_phi / total_mass;

  StepResult<CartPoleState> r;
  r.state.x_dot = s.x_dot + p.timestep * x_acc;
  r.state.x = s.x + p.timestep * r.state.x_dot;
  r.state.phi_dot = s.phi_dot + p.timestep * phi_acc;
  r.state.phi = s.phi + p.timestep * r.state.phi_dot;
  r.state.steps = s.steps + 1;

  const bool failed = std::abs(r.state.x) > p.position_limit ||
                      std::abs(r.state.phi) > p.angle_limit;
  r.time_limit = !failed && r.state.steps >= p.max_steps;
  r.terminated = failed || r.time_limit;
  r.true_reward = 1.0;
  return r;
}

double pendulum_torque(int action, const PendulumParams& p) {
  if (action < 0 || action >= p.torque_bins) {
    throw std::invalid_argument("Pendulum action must be in [0, " +
                                std::to_string(p.torque_bins) + "), got " +
                                std::to_string(action));
  }
  return -p.max_torque +
         2.0 * p.max_torque * action / static_cast<double>(p.torque_bins - 1);
}

StepResult<PendulumState> step(const PendulumState& s, int action,
                               const PendulumParams& p) {
  const double u = pendulum_torque(action, p);
  const double phi = wrap_angle(s.phi);
  const double phi_acc =
      3.0 * p.gravity / (2.0 * p.length) * std::sin(phi) +
      3.0 * u / (p.mass * p.length * p.length);

  StepResult<PendulumState> r;
  r.true_reward = -(phi * phi + 0.1 * s.phi_dot * s.phi_dot + 0.001 * u * u);
  r.state.phi_dot = std::clamp(s.phi_dot + phi_acc * p.timestep,
                               -p.max_speed, p.max_speed);
  r.state.phi = wrap_angle(phi + r.state.phi_dot * p.timestep);
  r.state.steps = s.steps + 1;
  r.time_limit = r.state.steps >= p.max_steps;
  r.terminated = r.time_limit;
  return r;
}

StepResult<EnvState> step(const EnvState& state, int action,
                          const EnvParams& params) {
  return std::visit(
      Overloaded{
          [&](const CartPoleState& s) -> StepResult<EnvState> {
            const auto r = step(s, action, std::get<CartPoleParams>(params));
            return {r.state, r.true_reward, r.terminated, r.time_limit};
          },
          [&](const PendulumState& s) -> StepResult<EnvState> {
            const auto r = step(s, action, std::get<PendulumParams>(params));
            return {r.state, r.true_reward, r.terminated, r.time_limit};
          }},
      state);
}

Vector state_vector(const CartPoleState& s) {
  return {s.x, s.x_dot, s.phi, s.phi_dot};
}

Vector state_vector(const PendulumState& s) {
  return {std::cos(s.phi), std::sin(s.phi), s.phi_dot};
}

Vector state_vector(const EnvState& state) {
  return std::visit([](const auto& s) { return state_vector(s); }, state);
}

int action_count(const EnvParams& params) {
  return std::visit(Overloaded{[](const CartPoleParams&) { return 2; },
                               [](const PendulumParams& p) {
                                 return p.torque_bins;
                               }},
                    params);
}

std::size_t state_dim(const EnvParams& params) {
  return std::holds_alternative<CartPoleParams>(params) ? 4 : 3;
}

int max_steps(const EnvParams& params) {
  return std::visit([](const auto& p) { return p.max_steps; }, params);
}

std::string env_name(const EnvParams& params) {
  return std::holds_alternative<CartPoleParams>(params) ? "CartPole"
                                                        : "Pendulum";
}

std::map<std::string, double> params_snapshot(const EnvParams& params) {
  return std::visit(
      Overloaded{
          [](const CartPoleParams& p) -> std::map<std::string, double> {
            return {{"gravity", p.gravity},
                    {"cart_mass", p.cart_mass},
                    {"pole_mass", p.pole_mass},
                    {"pole_half_length", p.pole_half_length},
                    {"force_magnitude", p.force_magnitude},
                    {"timestep", p.timestep},
                    {"position_limit", p.position_limit},
                    {"angle_limit", p.angle_limit},
                    {"max_steps", static_cast<double>(p.max_steps)}};
          },
          [](const PendulumParams& p) -> std::map<std::string, double> {
            return {{"gravity", p.gravity},
                    {"mass", p.mass},
                    {"length", p.length},
                    {"timestep", p.timestep},
                    {"max_torque", p.max_torque},
                    {"max_speed", p.max_speed},
                    {"torque_bins", static_cast<double>(p.torque_bins)},
                    {"max_steps", static_cast<double>(p.max_steps)}};
          }},
      params);
}

EnvParams params_from_snapshot(const std::string& name,
                               const std::map<std::string, double>& values) {
  auto rest = values;
  EnvParams out;
  if (name == "CartPole") {
    CartPoleParams p;
    assign(rest, "gravity", p.gravity);
    assign(rest, "cart_mass", p.cart_mass);
    assign(rest, "pole_mass", p.pole_mass);
    assign(rest, "pole_half_length", p.pole_half_length);
    assign(rest, "force_magnitude", p.force_magnitude);
    assign(rest, "timestep", p.timestep);
    assign(rest, "position_limit", p.position_limit);
    assign(rest, "angle_limit", p.angle_limit);
    assign(rest, "max_steps", p.max_steps);
    out = p;
  } else if (name == "Pendulum") {
    PendulumParams p;
    assign(rest, "gravity", p.gravity);
    assign(rest, "mass", p.mass);
    assign(rest, "length", p.length);
    assign(rest, "timestep", p.timestep);
    assign(rest, "max_torque", p.max_torque);
    assign(rest, "max_speed", p.max_speed);
    assign(rest, "torque_bins", p.torque_bins);
    assign(rest, "max_steps", p.max_steps);
    out = p;
  } else {
    throw std::invalid_argument("unknown environment '" + name + "'");
  }
  if (!rest.empty()) {
    throw std::invalid_argument("unknown " + name + " parameter '" +
                                rest.begin()->first + "'");
  }
  validate(out);
  return out;
}

}  // namespace otil
