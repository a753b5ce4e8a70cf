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


#ifndef OTIL_ENVS_HPP_
#define OTIL_ENVS_HPP_

// Classic-control environments with adjustable physical parameters.
//
// CartPole (Barto, Sutton & Anderson pole-on-cart):
//
//   temp   = (F + m_p l phi_dot^2 sin phi) / (m_c + m_p)
//   phi_dd = (g sin phi - cos phi temp)
//            / (l (4/3 - m_p cos^2 phi / (m_c + m_p)))
//   x_dd   = temp - m_p l phi_dd cos phi / (m_c + m_p)
//
// with l the pole half length, integrated by semi-implicit Euler (velocities
// first, positions with the new velocities). Actions {0, 1} push with -F/+F.
// Each step earns reward 1; the episode ends when |x| > 2.4, |phi| > 12 deg
// or after max_steps steps.
//
// Pendulum (angle 0 is upright):
//
//   phi_dd  = 3 g / (2 l) sin phi + 3 u / (m l^2)
//   phi_dot <- clip(phi_dot + phi_dd dt, +-max_speed)
//   phi     <- wrap(phi + phi_dot dt) into [-pi, pi]
//
// The torque u is one of `torque_bins` evenly spaced values in
// [-max_torque, max_torque]. Reward is -(phi^2 + 0.1 phi_dot^2 + 0.001 u^2),
// evaluated before the update; episodes only end at max_steps.

#include <cstdint>
#include <map>
#include <string>
#include <variant>

#include "otil/ot_core.hpp"

namespace otil {

struct CartPoleParams {
  double gravity = 9.8;
  double cart_mass = 1.0;
  double pole_mass = 0.1;
  double pole_half_length = 0.5;
  double force_magnitude = 10.0;
  double timestep = 0.02;
  double position_limit = 2.4;
  double angle_limit = 12.0 * 2.0 * 3.14159265358979323846 / 360.0;
  int max_steps = 200;

  bool operator==(const CartPoleParams&) const = default;
};

struct PendulumParams {
  double gravity = 10.0;
  double mass = 1.0;
  double length = 1.0;
  double timestep = 0.05;
  double max_torque = 2.0;
  double max_speed = 8.0;
  int torque_bins = 5;
  int max_steps = 200;

  bool operator==(const PendulumParams&) const = default;
};

struct CartPoleState {
  double x = 0.0;
  double x_dot = 0.0;
  double phi = 0.0;
  double phi_dot = 0.0;
  int steps = 0;

  bool operator==(const CartPoleState&) const = default;
};

struct PendulumState {
  double phi = 0.0;
  double phi_dot = 0.0;
  int steps = 0;

  bool operator==(const PendulumState&) const = default;
};

using EnvParams = std::variant<CartPoleParams, PendulumParams>;
using EnvState = std::variant<CartPoleState, PendulumState>;

template <class State>
struct StepResult {
  State state;
  double true_reward = 0.0;
  // Episode over, either by failure or by reaching max_steps.
  bool terminated = false;
  // Ended only because max_steps was reached.
  bool time_limit = false;
};

void validate(const CartPoleParams& params);
void validate(const PendulumParams& params);
void validate(const EnvParams& params);

CartPoleState reset(const CartPoleParams& params, std::uint64_t seed);
PendulumState reset(const PendulumParams& params, std::uint64_t seed);
EnvState reset(const EnvParams& params, std::uint64_t seed);

StepResult<CartPoleState> step(const CartPoleState& state, int action,
                               const CartPoleParams& params);
StepResult<PendulumState> step(const PendulumState& state, int action,
                               const PendulumParams& params);
StepResult<EnvState> step(const EnvState& state, int action,
                          const EnvParams& params);

// (x, x_dot, phi, phi_dot)
Vector state_vector(const CartPoleState& state);
// (cos phi, sin phi, phi_dot)
Vector state_vector(const PendulumState& state);
Vector state_vector(const EnvState& state);

double pendulum_torque(int action, const PendulumParams& params);

int action_count(const EnvParams& params);
std::size_t state_dim(const EnvParams& params);
int max_steps(const EnvParams& params);
std::string env_name(const EnvParams& params);

// Flat name -> value views of the parameters, used as trajectory metadata.
std::map<std::string, double> params_snapshot(const EnvParams& params);
EnvParams params_from_snapshot(const std::string& env_name,
                               const std::map<std::string, double>& values);

}  // namespace otil

#endif  // OTIL_ENVS_HPP_
