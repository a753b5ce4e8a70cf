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


#include <chrono>
#include <sstream>

#include <gtest/gtest.h>

#include "otil/ot_core.hpp"
#include "otil/verify.hpp"

namespace otil {
namespace {

TEST(Verify, FullSuitePassesQuickly) {
  const auto start = std::chrono::steady_clock::now();
  const auto results = run_verification(0);
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  ASSERT_EQ(results.size(), 6u);
  for (const auto& r : results) EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
  EXPECT_LT(secs, 60.0);
}

TEST(Verify, OtherSeedsPassToo) {
  for (std::uint64_t seed : {17u, 123456u}) {
    for (const auto& r : run_verification(seed)) {
      EXPECT_TRUE(r.passed) << r.name << " seed " << seed << ": " << r.detail;
    }
  }
}

TEST(Verify, CatchesSignErrorInW2) {
  auto broken = [](std::span<const double> u, std::span<const double> v) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += (u[i] + v[i]) * (u[i] + v[i]);
    return s / static_cast<double>(u.size());
  };
  EXPECT_FALSE(check_oracle_equivalence(500, 1, broken).passed);
  EXPECT_TRUE(check_oracle_equivalence(500, 1).passed);
}

TEST(Verify, CatchesFlippedPairing) {
  // Pairing sorted u against reversed v is a plausible bug.
  auto reversed = [](std::span<const double> u, std::span<const double> v) {
    double s = 0.0;
    const std::size_t n = u.size();
    for (std::size_t i = 0; i < n; ++i) {
      s += (u[i] - v[n - 1 - i]) * (u[i] - v[n - 1 - i]);
    }
    return s / static_cast<double>(n);
  };
  EXPECT_FALSE(check_oracle_equivalence(500, 2, reversed).passed);
}

TEST(Verify, PointMassCheckIsSensitive) {
  // Too few projections cannot meet a 0.1% tolerance.
  EXPECT_FALSE(check_point_mass_slicing(20, 10, 0.001, 3).passed);
}

TEST(Verify, ReportListsEveryCheckWithTiming) {
  std::vector<CheckResult> results = {{"alpha", true, 0.25, "ok"},
                                      {"beta-check", false, 1.5, "bad"}};
  std::ostringstream out;
  print_report(results, out);
  const std::string text = out.str();
  EXPECT_NE(text.find("alpha"), std::string::npos);
  EXPECT_NE(text.find("beta-check  FAIL"), std::string::npos);
  EXPECT_NE(text.find("1.500"), std::string::npos);
  EXPECT_NE(text.find("0.250"), std::string::npos);
}

}  // namespace
}  // namespace otil
