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


// Command-line front end: gen-experts, train, plot, verify.
//
// Exit status: 0 on success, 1 on invalid input (bad config, malformed or
// mismatched files), 2 on any other failure, including failed verification
// checks and expert generation that never reaches the quality bar.

#include <algorithm>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "otil/config.hpp"
#include "otil/errors.hpp"
#include "otil/harness.hpp"
#include "otil/verify.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitFailure = 2;

struct CommonOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed_offset = 0;
  std::optional<std::size_t> parallelism;
};

void add_common(CLI::App* sub, CommonOptions& opts, bool config_required) {
  auto* c = sub->add_option("--config", opts.config_path,
                            "experiment configuration file");
  if (config_required) c->required();
  c->check(CLI::ExistingFile);
  sub->add_option("--out", opts.out_dir, "output directory");
  sub->add_option("--seed-offset", opts.seed_offset,
                  "added to every training seed and the demo seed");
  sub->add_option("--parallelism", opts.parallelism,
                  "worker threads for seeds/modes or experts")
      ->check(CLI::PositiveNumber);
}

otil::ExperimentConfig load(const CommonOptions& opts) {
  otil::ExperimentConfig config = otil::load_config(opts.config_path);
  if (opts.seed_offset != 0) {
    for (auto& s : config.seeds) s += opts.seed_offset;
    config.demo_seed += opts.seed_offset;
  }
  if (opts.parallelism) config.parallelism = *opts.parallelism;
  config.validate();
  return config;
}

std::vector<fs::path> summaries_in(const fs::path& dir) {
  std::vector<fs::path> found;
  if (!fs::is_directory(dir)) return found;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && name.rfind("summary_", 0) == 0 &&
        entry.path().extension() == ".csv") {
      found.push_back(entry.path());
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sliced optimal-transport imitation learning experiments"};
  app.require_subcommand(1);

  CommonOptions gen_opts, train_opts, plot_opts, verify_opts;

  auto* gen = app.add_subcommand(
      "gen-experts", "train one expert per parameter value and write demos");
  add_common(gen, gen_opts, true);

  auto* train = app.add_subcommand(
      "train", "train SCOTIL/SMMOTIL agents against a demo set");
  add_common(train, train_opts, true);
  std::string demos_path;
  train->add_option("--demos", demos_path,
                    "demo file (default: <out>/<demo_file>)");

  auto* plot = app.add_subcommand(
      "plot", "render summary CSVs as an SVG learning-curve chart");
  add_common(plot, plot_opts, false);
  std::vector<std::string> summary_paths;
  std::string plot_file = "learning_curves.svg";
  std::string plot_title = "Mean moving reward";
  plot->add_option("--summary", summary_paths,
                   "summary CSVs (default: every summary_*.csv in --out)");
  plot->add_option("--file", plot_file, "SVG file name inside --out");
  plot->add_option("--title", plot_title, "chart title");

  auto* verify = app.add_subcommand("verify", "run the fast invariant suite");
  add_common(verify, verify_opts, false);
  std::uint64_t verify_seed = 0;
  verify->add_option("--seed", verify_seed, "seed for the random instances");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const auto config = load(gen_opts);
      otil::cmd_gen_experts(config, gen_opts.out_dir, std::cout);
      std::cout << "wrote " << (fs::path(gen_opts.out_dir) / config.demo_file)
                         .string()
                << '\n';
    } else if (*train) {
      const auto config = load(train_opts);
      const fs::path demos = demos_path.empty()
                                 ? fs::path(train_opts.out_dir) / config.demo_file
                                 : fs::path(demos_path);
      otil::cmd_train(config, demos, train_opts.out_dir, std::cout);
    } else if (*plot) {
      std::vector<fs::path> inputs(summary_paths.begin(), summary_paths.end());
      if (inputs.empty()) inputs = summaries_in(plot_opts.out_dir);
      const fs::path out = fs::path(plot_opts.out_dir) / plot_file;
      otil::cmd_plot(inputs, out, plot_title);
      std::cout << "wrote " << out.string() << '\n';
    } else if (*verify) {
      const auto results = otil::run_verification(verify_seed +
                                                  verify_opts.seed_offset);
      otil::print_report(results, std::cout);
      const bool ok = std::all_of(results.begin(), results.end(),
                                  [](const auto& r) { return r.passed; });
      return ok ? kExitOk : kExitFailure;
    }
  } catch (const otil::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const otil::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}
