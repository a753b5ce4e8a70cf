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


#include "otil/harness.hpp"

#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "otil/demonstrations.hpp"
#include "otil/dqn.hpp"
#include "otil/errors.hpp"
#include "otil/mlp.hpp"
#include "otil/numbers.hpp"
#include "otil/seeding.hpp"

namespace otil {

namespace fs = std::filesystem;

namespace {

std::ofstream open_for_write(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  return out;
}

std::string axis_parameter_name(const ExperimentConfig& config) {
  if (config.environment == EnvKind::kCartPole) {
    return config.variation_axis == VariationAxis::kLength ? "pole_half_length"
                                                           : "cart_mass";
  }
  return config.variation_axis == VariationAxis::kLength ? "length" : "mass";
}

}  // namespace

std::string curve_file_name(RewardMode mode, std::uint64_t seed) {
  return "curve_" + to_string(mode) + "_" + std::to_string(seed) + ".csv";
}

std::string summary_file_name(RewardMode mode) {
  return "summary_" + to_string(mode) + ".csv";
}

ModeSummary summarize(RewardMode mode, std::span<const SeedCurve> curves) {
  ModeSummary s;
  s.mode = mode;
  if (curves.empty()) return s;
  const std::size_t n = curves.front().moving_average.size();
  for (const auto& c : curves) {
    if (c.moving_average.size() != n) {
      throw std::invalid_argument("curves to summarise differ in length");
    }
  }
  const double count = static_cast<double>(curves.size());
  s.mean.resize(n);
  s.std.resize(n);
  for (std::size_t e = 0; e < n; ++e) {
    double mean = 0.0;
    for (const auto& c : curves) mean += c.moving_average[e];
    mean /= count;
    double var = 0.0;
    for (const auto& c : curves) {
      const double d = c.moving_average[e] - mean;
      var += d * d;
    }
    s.mean[e] = mean;
    s.std[e] = std::sqrt(var / count);
  }
  return s;
}

void run_parallel(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& task) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  std::mutex mu;
  std::size_t next = 0;
  std::exception_ptr first_error;
  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next == count) return;
        i = next++;
      }
      try {
        task(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
}

ExpertSet cmd_gen_experts(const ExperimentConfig& config,
                          const fs::path& out_dir, std::ostream& log) {
  config.validate();
  const auto envs = expert_envs(config);
  std::vector<std::optional<GeneratedExpert>> generated(envs.size());
  run_parallel(envs.size(), config.parallelism, [&](std::size_t i) {
    generated[i] = generate_expert(envs[i], config.dqn,
                                   mix_seed(config.demo_seed, i),
                                   config.experts);
  });

  fs::create_directories(out_dir);
  ExpertSet set;
  set.nominal_horizon = static_cast<std::size_t>(max_steps(config.base_env));
  const std::string axis = axis_parameter_name(config);
  for (std::size_t i = 0; i < generated.size(); ++i) {
    const auto& g = *generated[i];
    log << "expert " << i << ' ' << axis << '='
        << format_double(config.expert_param_values[i])
        << " true_return=" << format_double(g.trajectory.true_return)
        << " length=" << g.trajectory.size()
        << " attempts=" << g.attempts_used << '\n';
    save_mlp(g.policy, (out_dir / ("expert_" + std::to_string(i) + ".mlp")).string());
    set.trajectories.push_back(g.trajectory);
  }
  save_demo_set(set, (out_dir / config.demo_file).string());
  return set;
}

void check_demos_match(const ExpertSet& experts,
                       const ExperimentConfig& config) {
  const EnvParams env = agent_env(config);
  if (experts.trajectories.empty()) {
    throw ValidationError("demo set is empty");
  }
  for (const auto& t : experts.trajectories) {
    if (t.env_name != env_name(env)) {
      throw ValidationError("demo trajectory comes from " + t.env_name +
                            " but the experiment runs " + env_name(env));
    }
  }
  if (experts.dim() != state_dim(env)) {
    throw ValidationError("demo state dimension " +
                          std::to_string(experts.dim()) + " does not match " +
                          env_name(env) + " (" +
                          std::to_string(state_dim(env)) + ")");
  }
}

RunResult cmd_train(const ExperimentConfig& config, const fs::path& demo_path,
                    const fs::path& out_dir, std::ostream& log) {
  config.validate();
  const ExpertSet experts = load_demo_set(demo_path.string());
  check_demos_match(experts, config);
  const EnvParams env = agent_env(config);
  fs::create_directories(out_dir);

  struct Task {
    RewardMode mode;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (auto mode : config.modes) {
    for (auto seed : config.seeds) tasks.push_back({mode, seed});
  }
  std::vector<SeedCurve> curves(tasks.size());
  std::vector<Mlp> policies(tasks.size());
  run_parallel(tasks.size(), config.parallelism, [&](std::size_t i) {
    RewardConfig reward = config.reward;
    reward.mode = tasks[i].mode;
    DqnConfig dqn = config.dqn;
    dqn.seed = tasks[i].seed;
    dqn.train_episodes = config.train_episodes;
    auto curve = train_imitation(env, experts, reward, dqn,
                                 config.moving_average_window);
    curves[i] = {tasks[i].mode, tasks[i].seed, std::move(curve.true_returns),
                 std::move(curve.moving_average)};
    policies[i] = std::move(curve.params);
  });

  RunResult result;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    write_curve_csv(curves[i], config.moving_average_window,
                    out_dir / curve_file_name(tasks[i].mode, tasks[i].seed));
    save_mlp(policies[i],
             (out_dir / ("policy_" + to_string(tasks[i].mode) + "_" +
                         std::to_string(tasks[i].seed) + ".mlp"))
                 .string());
  }
  for (auto mode : config.modes) {
    std::vector<SeedCurve> mine;
    for (const auto& c : curves) {
      if (c.mode == mode) mine.push_back(c);
    }
    auto summary = summarize(mode, mine);
    write_summary_csv(summary, config.seeds, config.moving_average_window,
                      out_dir / summary_file_name(mode));
    if (!summary.mean.empty()) {
      log << to_string(mode) << ": final mean moving reward "
          << format_double(summary.mean.back()) << " (std "
          << format_double(summary.std.back()) << ") over "
          << config.seeds.size() << " seeds\n";
    } else {
      log << to_string(mode) << ": no episodes\n";
    }
    result.summaries.push_back(std::move(summary));
  }
  result.curves = std::move(curves);
  return result;
}

void write_curve_csv(const SeedCurve& curve, std::size_t window,
                     const fs::path& path) {
  auto out = open_for_write(path);
  out << "# mode=" << to_string(curve.mode) << " seed=" << curve.seed
      << " moving_average_window=" << window << '\n';
  out << "episode,true_return,moving_avg\n";
  for (std::size_t e = 0; e < curve.true_returns.size(); ++e) {
    out << e + 1 << ',' << format_double(curve.true_returns[e]) << ','
        << format_double(curve.moving_average[e]) << '\n';
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void write_summary_csv(const ModeSummary& summary,
                       std::span<const std::uint64_t> seeds,
                       std::size_t window, const fs::path& path) {
  auto out = open_for_write(path);
  out << "# mode=" << to_string(summary.mode) << " seeds=";
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    out << (i ? ";" : "") << seeds[i];
  }
  out << " moving_average_window=" << window << " std=population\n";
  out << "episode,mean,std\n";
  for (std::size_t e = 0; e < summary.mean.size(); ++e) {
    out << e + 1 << ',' << format_double(summary.mean[e]) << ','
        << format_double(summary.std[e]) << '\n';
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

SummaryTable read_summary_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  SummaryTable table;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    if (line.front() == '#') {
      std::istringstream ss(line.substr(1));
      std::string tok;
      while (ss >> tok) {
        if (tok.rfind("mode=", 0) == 0) table.mode = tok.substr(5);
      }
      continue;
    }
    if (!header_seen) {
      if (trim(line) != "episode,mean,std") {
        throw ParseError(path.string(), line_no,
                         "expected header 'episode,mean,std'");
      }
      header_seen = true;
      continue;
    }
    std::vector<double> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      const auto v = parse_double(cell);
      if (!v) {
        throw ParseError(path.string(), line_no,
                         "invalid number '" + cell + "'");
      }
      cells.push_back(*v);
    }
    if (cells.size() != 3) {
      throw ParseError(path.string(), line_no,
                       "expected 3 columns, found " +
                           std::to_string(cells.size()));
    }
    table.episode.push_back(cells[0]);
    table.mean.push_back(cells[1]);
    table.std.push_back(cells[2]);
  }
  if (!header_seen) throw ParseError(path.string(), line_no, "missing header");
  if (table.mode.empty()) {
    std::string stem = path.stem().string();
    table.mode = stem.rfind("summary_", 0) == 0 ? stem.substr(8) : stem;
  }
  return table;
}

void cmd_plot(std::span<const fs::path> summaries, const fs::path& out_file,
              const std::string& title) {
  if (summaries.empty()) {
    throw ValidationError("plot needs at least one summary CSV");
  }
  std::vector<SummaryTable> tables;
  for (const auto& p : summaries) tables.push_back(read_summary_csv(p));
  if (out_file.has_parent_path()) fs::create_directories(out_file.parent_path());
  auto out = open_for_write(out_file);
  out << render_svg(tables, title);
  if (!out) throw std::runtime_error("failed writing " + out_file.string());
}

}  // namespace otil
