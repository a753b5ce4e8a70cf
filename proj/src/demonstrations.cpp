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


#include "otil/demonstrations.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "otil/errors.hpp"
#include "otil/numbers.hpp"
#include "otil/seeding.hpp"

namespace otil {

namespace {

using nlohmann::json;

constexpr const char* kMagic = "otil-demos";

std::string describe(const EnvParams& env) {
  std::ostringstream ss;
  ss << env_name(env) << " {";
  bool first = true;
  for (const auto& [k, v] : params_snapshot(env)) {
    ss << (first ? "" : ", ") << k << '=' << format_double(v);
    first = false;
  }
  ss << '}';
  return ss.str();
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

class DemoReader {
 public:
  DemoReader(std::istream& in, std::string source)
      : in_(in), source_(std::move(source)) {}

  bool next(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(source_, line_, message);
  }

  json parse_json(std::string_view text) const {
    try {
      return json::parse(text);
    } catch (const json::exception& e) {
      fail(std::string("invalid JSON metadata: ") + e.what());
    }
  }

  std::size_t line() const { return line_; }
  const std::string& source() const { return source_; }

 private:
  std::istream& in_;
  std::string source_;
  std::size_t line_ = 0;
};

template <class T>
T field(const DemoReader& reader, const json& j, const char* key) {
  if (!j.contains(key)) reader.fail(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    reader.fail(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("percentile of nothing");
  if (!(q >= 0.0 && q <= 100.0)) {
    throw std::invalid_argument("percentile must be in [0, 100]");
  }
  std::sort(values.begin(), values.end());
  const double pos = q / 100.0 * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

GeneratedExpert generate_expert(const EnvParams& env, const DqnConfig& config,
                                std::uint64_t demo_seed,
                                const ExpertOptions& options) {
  validate(env);
  const bool cartpole = std::holds_alternative<CartPoleParams>(env);
  const bool strict =
      cartpole && options.cartpole_quality == CartPoleQuality::kStrict;
  for (std::size_t attempt = 0; attempt < options.attempts; ++attempt) {
    DqnConfig run = config;
    run.seed = mix_seed(demo_seed, attempt);

    TrueRewardResult trained;
    if (cartpole) {
      trained = train_true_reward(env, run, options.max_episodes,
                                  options.cartpole_criterion);
      if (strict && !trained.solved_after_episodes) continue;
    } else {
      // Pendulum rewards lie in [-16.3, 0]; rescale to keep Q targets O(1).
      trained = train_true_reward(env, run, options.pendulum_episodes,
                                  std::nullopt, 1.0 / 16.0);
    }

    std::vector<Trajectory> candidates;
    std::vector<double> returns;
    for (std::size_t i = 0; i < options.candidate_rollouts; ++i) {
      candidates.push_back(rollout_greedy(
          trained.params, env, mix_seed(mix_seed(demo_seed, 1000 + attempt), i)));
      returns.push_back(candidates.back().true_return);
    }
    const double bar =
        strict ? static_cast<double>(max_steps(env)) : percentile(returns, 75.0);
    for (auto& c : candidates) {
      if (c.true_return >= bar) {
        return {std::move(c), trained.params, attempt + 1};
      }
    }
  }
  throw GenerationFailure("could not train an expert for " + describe(env) +
                          " after " + std::to_string(options.attempts) +
                          " attempts");
}

void save_demo_set(const ExpertSet& experts, std::ostream& out) {
  validate(experts);
  json set_meta = {{"count", experts.size()},
                   {"nominal_horizon", experts.nominal_horizon}};
  out << kMagic << ' ' << kDemoFormatMajor << '.' << kDemoFormatMinor << ' '
      << set_meta.dump() << '\n';
  for (std::size_t i = 0; i < experts.size(); ++i) {
    const Trajectory& t = experts.trajectories[i];
    if (i > 0) out << '\n';
    json meta = {{"env", t.env_name},
                 {"params", t.env_params},
                 {"seed", t.seed},
                 {"true_return", t.true_return},
                 {"dim", t.dim()},
                 {"length", t.size()},
                 {"has_actions", !t.actions.empty()}};
    out << meta.dump() << '\n';
    for (std::size_t s = 0; s < t.size(); ++s) {
      const Vector& state = t.states[s];
      for (std::size_t k = 0; k < state.size(); ++k) {
        out << (k ? "," : "") << format_double(state[k]);
      }
      if (!t.actions.empty()) out << ',' << t.actions[s];
      out << '\n';
    }
  }
}

void save_demo_set(const ExpertSet& experts, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  save_demo_set(experts, out);
  if (!out) throw std::runtime_error("failed writing " + path);
}

ExpertSet load_demo_set(std::istream& in, const std::string& source) {
  DemoReader reader(in, source);
  std::string line;
  if (!reader.next(line) || trim(line).empty()) {
    throw ValidationError(source + ": empty demonstration file");
  }

  ExpertSet set;
  std::size_t expected_count = 0;
  {
    std::istringstream header(line);
    std::string magic, version;
    header >> magic >> version;
    if (magic != kMagic) reader.fail("not an otil-demos file");
    const auto dot = version.find('.');
    const auto major = parse_double(version.substr(0, dot));
    if (!major || dot == std::string::npos) {
      reader.fail("malformed format version '" + version + "'");
    }
    if (static_cast<int>(*major) != kDemoFormatMajor) {
      reader.fail("unsupported demo format major version " + version);
    }
    std::string rest;
    std::getline(header, rest);
    const json meta = reader.parse_json(trim(rest));
    expected_count = field<std::size_t>(reader, meta, "count");
    set.nominal_horizon = field<std::size_t>(reader, meta, "nominal_horizon");
  }

  while (reader.next(line)) {
    if (trim(line).empty()) continue;
    const json meta = reader.parse_json(line);
    Trajectory t;
    t.env_name = field<std::string>(reader, meta, "env");
    t.env_params = field<std::map<std::string, double>>(reader, meta, "params");
    t.seed = field<std::uint64_t>(reader, meta, "seed");
    t.true_return = field<double>(reader, meta, "true_return");
    const auto dim = field<std::size_t>(reader, meta, "dim");
    const auto length = field<std::size_t>(reader, meta, "length");
    const bool has_actions = field<bool>(reader, meta, "has_actions");
    if (dim == 0 || length == 0) {
      throw ValidationError(source + ":" + std::to_string(reader.line()) +
                            ": trajectory dimension and length must be positive");
    }
    for (std::size_t s = 0; s < length; ++s) {
      if (!reader.next(line) || trim(line).empty()) {
        reader.fail("trajectory ended after " + std::to_string(s) +
                    " of " + std::to_string(length) + " states");
      }
      const auto cells = split(line, ',');
      const std::size_t want = dim + (has_actions ? 1 : 0);
      if (cells.size() != want) {
        throw ValidationError(
            source + ":" + std::to_string(reader.line()) + ": expected " +
            std::to_string(want) + " values, found " +
            std::to_string(cells.size()));
      }
      Vector state(dim);
      for (std::size_t k = 0; k < dim; ++k) {
        const auto v = parse_double(cells[k]);
        if (!v) reader.fail("invalid number '" + cells[k] + "'");
        state[k] = *v;
      }
      t.states.push_back(std::move(state));
      if (has_actions) {
        const auto a = parse_double(cells[dim]);
        if (!a || *a != std::floor(*a)) {
          reader.fail("invalid action index '" + cells[dim] + "'");
        }
        t.actions.push_back(static_cast<int>(*a));
      }
    }
    set.trajectories.push_back(std::move(t));
  }

  if (set.trajectories.size() != expected_count) {
    throw ValidationError(source + ": header announces " +
                          std::to_string(expected_count) +
                          " trajectories, file holds " +
                          std::to_string(set.trajectories.size()));
  }
  try {
    validate(set);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(source + ": " + e.what());
  }
  return set;
}

ExpertSet load_demo_set(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open demonstration file " + path);
  return load_demo_set(in, path);
}

}  // namespace otil
