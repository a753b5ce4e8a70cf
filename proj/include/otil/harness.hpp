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


#ifndef OTIL_HARNESS_HPP_
#define OTIL_HARNESS_HPP_

// Experiment orchestration behind the command-line tool: expert generation,
// multi-seed training, learning-curve CSVs and their SVG rendering.
//
// Output files of `train`:
//
//   curve_<MODE>_<seed>.csv   episode,true_return,moving_avg
//   summary_<MODE>.csv        episode,mean,std
//   policy_<MODE>_<seed>.mlp  trained network
//
// Each CSV starts with one `#` comment line recording the run metadata,
// including the moving-average window. Episodes are numbered from 1. The
// summary std uses the population convention (divide by the seed count).

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "otil/config.hpp"
#include "otil/reward_engine.hpp"
#include "otil/trajectory.hpp"

namespace otil {

struct SeedCurve {
  RewardMode mode = RewardMode::kSmmotil;
  std::uint64_t seed = 0;
  std::vector<double> true_returns;
  std::vector<double> moving_average;
};

struct ModeSummary {
  RewardMode mode = RewardMode::kSmmotil;
  std::vector<double> mean;
  std::vector<double> std;
};

struct RunResult {
  std::vector<SeedCurve> curves;
  std::vector<ModeSummary> summaries;
};

// Cross-seed mean and population standard deviation of the moving averages.
ModeSummary summarize(RewardMode mode, std::span<const SeedCurve> curves);

// Runs task(0..count-1) on at most `workers` threads. Every task runs even if
// another fails; the first failure is rethrown after all threads join.
void run_parallel(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& task);

// Trains one expert per configured parameter value and writes the demo set
// to `out_dir / config.demo_file` plus `expert_<i>.mlp` policies.
ExpertSet cmd_gen_experts(const ExperimentConfig& config,
                          const std::filesystem::path& out_dir,
                          std::ostream& log);

// Checks that a demo set fits the configured environment. Throws
// ValidationError.
void check_demos_match(const ExpertSet& experts,
                       const ExperimentConfig& config);

RunResult cmd_train(const ExperimentConfig& config,
                    const std::filesystem::path& demo_path,
                    const std::filesystem::path& out_dir, std::ostream& log);

struct SummaryTable {
  std::string mode;
  std::vector<double> episode;
  std::vector<double> mean;
  std::vector<double> std;
};

// Throws ParseError naming the file and line.
SummaryTable read_summary_csv(const std::filesystem::path& path);

std::string render_svg(std::span<const SummaryTable> series,
                       const std::string& title);

void cmd_plot(std::span<const std::filesystem::path> summaries,
              const std::filesystem::path& out_file, const std::string& title);

void write_curve_csv(const SeedCurve& curve, std::size_t window,
                     const std::filesystem::path& path);
void write_summary_csv(const ModeSummary& summary,
                       std::span<const std::uint64_t> seeds,
                       std::size_t window, const std::filesystem::path& path);

std::string curve_file_name(RewardMode mode, std::uint64_t seed);
std::string summary_file_name(RewardMode mode);

}  // namespace otil

#endif  // OTIL_HARNESS_HPP_
