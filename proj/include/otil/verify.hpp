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


#ifndef OTIL_VERIFY_HPP_
#define OTIL_VERIFY_HPP_

// Fast invariant checks behind the `verify` subcommand. Each check draws its
// own random instances from a fixed seed and reports the worst deviation.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace otil {

struct CheckResult {
  std::string name;
  bool passed = false;
  double seconds = 0.0;
  std::string detail;
};

using W2Function =
    std::function<double(std::span<const double>, std::span<const double>)>;

// Sorted-pairing 1D distance vs. brute force over all T! assignments,
// T in 1..6, absolute tolerance 1e-9. `w2` defaults to w2_squared_1d and can
// be swapped to check that the test catches a broken implementation.
CheckResult check_oracle_equivalence(std::size_t instances, std::uint64_t seed,
                                     W2Function w2 = {});

// sliced_mw([mu, nu], (1/2, 1/2)) == sliced_w2(mu, nu) / 4 within 1e-9, for
// d <= 5, T <= 50, K <= 20.
CheckResult check_two_marginal_reduction(std::size_t instances,
                                         std::uint64_t seed);

// Per-step SCOTIL and SMMOTIL costs sum to the matching sliced distance
// within 1e-9; `instances` of each.
CheckResult check_reward_sum_identities(std::size_t instances,
                                        std::uint64_t seed);

// Single-atom measures in R^3: sliced_w2 with `projections` directions is
// within `relative_tolerance` of |a - b|^2 / 3.
CheckResult check_point_mass_slicing(std::size_t pairs,
                                     std::size_t projections,
                                     double relative_tolerance,
                                     std::uint64_t seed);

// Analytic DQN loss gradients vs. central differences (h = 1e-5) on random
// networks with widths <= 8; relative error below 1e-4.
CheckResult check_gradients(std::size_t instances, std::uint64_t seed);

// Demo-set and network-parameter save/load cycles reproduce their input
// exactly.
CheckResult check_serialization(std::size_t instances, std::uint64_t seed);

std::vector<CheckResult> run_verification(std::uint64_t seed = 0);

void print_report(std::span<const CheckResult> results, std::ostream& out);

}  // namespace otil

#endif  // OTIL_VERIFY_HPP_
