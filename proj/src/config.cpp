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


#include "otil/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "otil/errors.hpp"
#include "otil/numbers.hpp"

namespace otil {

namespace {

namespace pt = boost::property_tree;

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

class ValueParser {
 public:
  ValueParser(std::string source, std::string section)
      : source_(std::move(source)), section_(std::move(section)) {}

  [[noreturn]] void fail(const std::string& key, const std::string& why) const {
    throw ValidationError(source_ + ": [" + section_ + "] " + key + ": " + why);
  }

  double real(const std::string& key, const std::string& text) const {
    const auto v = parse_double(text);
    if (!v || !std::isfinite(*v)) fail(key, "expected a number, got '" + text + "'");
    return *v;
  }

  std::uint64_t count(const std::string& key, const std::string& text) const {
    const auto t = trim(text);
    std::uint64_t v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
      fail(key, "expected a nonnegative integer, got '" + text + "'");
    }
    return v;
  }

  bool boolean(const std::string& key, const std::string& text) const {
    const auto t = upper(std::string(trim(text)));
    if (t == "TRUE" || t == "YES" || t == "1") return true;
    if (t == "FALSE" || t == "NO" || t == "0") return false;
    fail(key, "expected true or false, got '" + text + "'");
  }

  std::vector<std::string> items(const std::string& text) const {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto t = trim(item);
      if (!t.empty()) out.emplace_back(t);
    }
    return out;
  }

  std::vector<double> reals(const std::string& key,
                            const std::string& text) const {
    std::vector<double> out;
    for (const auto& s : items(text)) out.push_back(real(key, s));
    if (out.empty()) fail(key, "expected a nonempty list");
    return out;
  }

  template <class F>
  auto named(const std::string& key, const std::string& text, F parse) const {
    try {
      return parse(std::string(trim(text)));
    } catch (const std::invalid_argument& e) {
      fail(key, e.what());
    }
  }

 private:
  std::string source_;
  std::string section_;
};

EnvKind parse_env_kind(const std::string& name) {
  const auto n = upper(name);
  if (n == "CARTPOLE") return EnvKind::kCartPole;
  if (n == "PENDULUM") return EnvKind::kPendulum;
  throw std::invalid_argument("unknown environment '" + name + "'");
}

VariationAxis parse_axis(const std::string& name) {
  const auto n = upper(name);
  if (n == "LENGTH") return VariationAxis::kLength;
  if (n == "MASS") return VariationAxis::kMass;
  throw std::invalid_argument("unknown variation axis '" + name + "'");
}

CartPoleQuality parse_quality(const std::string& name) {
  const auto n = upper(name);
  if (n == "STRICT") return CartPoleQuality::kStrict;
  if (n == "PERCENTILE") return CartPoleQuality::kPercentile;
  throw std::invalid_argument("unknown quality rule '" + name + "'");
}

const std::set<std::string> kSections = {"experiment", "env", "experts", "dqn",
                                         "reward"};

}  // namespace

std::string to_string(EnvKind kind) {
  return kind == EnvKind::kCartPole ? "CartPole" : "Pendulum";
}

std::string to_string(VariationAxis axis) {
  return axis == VariationAxis::kLength ? "LENGTH" : "MASS";
}

std::vector<double> default_expert_values(EnvKind env, VariationAxis axis) {
  if (env == EnvKind::kPendulum) {
    return axis == VariationAxis::kLength
               ? std::vector<double>{0.3, 0.5, 1.2, 1.5, 1.7}
               : std::vector<double>{0.1, 0.6, 1.2, 1.8, 2.0};
  }
  return axis == VariationAxis::kLength
             ? std::vector<double>{0.1, 0.3, 1.2, 1.5, 2.0}
             : std::vector<double>{0.001, 0.5, 2.1, 5.0, 8.0};
}

double default_agent_value(EnvKind env, VariationAxis axis) {
  if (env == EnvKind::kCartPole && axis == VariationAxis::kLength) return 0.5;
  return 1.0;
}

ExperimentConfig default_config(EnvKind env, VariationAxis axis) {
  ExperimentConfig c;
  c.environment = env;
  c.variation_axis = axis;
  c.expert_param_values = default_expert_values(env, axis);
  c.agent_param_value = default_agent_value(env, axis);
  for (std::uint64_t s = 0; s < 10; ++s) c.seeds.push_back(s);
  c.train_episodes = env == EnvKind::kCartPole ? 500 : 1000;
  if (env == EnvKind::kCartPole) {
    c.base_env = CartPoleParams{};
  } else {
    c.base_env = PendulumParams{};
  }
  return c;
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& why) { throw ValidationError(why); };
  if (expert_param_values.empty()) fail("expert_param_values is empty");
  for (double v : expert_param_values) {
    if (!(v > 0.0)) fail("expert_param_values must all be positive");
  }
  if (!(agent_param_value > 0.0)) fail("agent_param_value must be positive");
  if (modes.empty()) fail("at least one reward mode is required");
  if (seeds.empty()) fail("seeds must be nonempty");
  if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() !=
      seeds.size()) {
    fail("seeds must be distinct");
  }
  if (moving_average_window == 0) fail("moving_average_window must be >= 1");
  if (parallelism == 0) fail("parallelism must be >= 1");
  if ((environment == EnvKind::kCartPole) !=
      std::holds_alternative<CartPoleParams>(base_env)) {
    fail("[env] parameters do not match the environment");
  }
  try {
    otil::validate(base_env);
    dqn.validate();
    reward.validate();
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
}

ExperimentConfig parse_config(std::istream& in, const std::string& source) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError(source, e.line(), e.message());
  }
  for (const auto& [name, section] : tree) {
    if (!kSections.count(name)) {
      throw ValidationError(source + ": unknown section or top-level key '" +
                            name + "'");
    }
    if (section.empty() && !section.data().empty()) {
      throw ValidationError(source + ": '" + name +
                            "' must be a section, not a key");
    }
  }

  // Environment and axis decide every other default, so read them first.
  const pt::ptree no_section;
  const auto& exp = tree.get_child("experiment", no_section);
  const ValueParser ep(source, "experiment");
  EnvKind env = EnvKind::kCartPole;
  VariationAxis axis = VariationAxis::kLength;
  if (auto v = exp.get_optional<std::string>("environment")) {
    env = ep.named("environment", *v, parse_env_kind);
  }
  if (auto v = exp.get_optional<std::string>("variation_axis")) {
    axis = ep.named("variation_axis", *v, parse_axis);
  }
  ExperimentConfig c = default_config(env, axis);

  for (const auto& [key, node] : exp) {
    const std::string& v = node.data();
    if (key == "environment" || key == "variation_axis") {
      continue;
    } else if (key == "expert_param_values") {
      c.expert_param_values = ep.reals(key, v);
    } else if (key == "agent_param_value") {
      c.agent_param_value = ep.real(key, v);
    } else if (key == "modes") {
      c.modes.clear();
      for (const auto& m : ep.items(v)) {
        c.modes.push_back(ep.named(key, m, parse_reward_mode));
      }
    } else if (key == "seeds") {
      c.seeds.clear();
      for (const auto& s : ep.items(v)) c.seeds.push_back(ep.count(key, s));
    } else if (key == "train_episodes") {
      c.train_episodes = ep.count(key, v);
    } else if (key == "moving_average_window") {
      c.moving_average_window = ep.count(key, v);
    } else if (key == "demo_seed") {
      c.demo_seed = ep.count(key, v);
    } else if (key == "demo_file") {
      c.demo_file = std::string(trim(v));
    } else if (key == "parallelism") {
      c.parallelism = ep.count(key, v);
    } else {
      ep.fail(key, "unknown key");
    }
  }

  if (auto env_section = tree.get_child_optional("env")) {
    const ValueParser p(source, "env");
    auto values = params_snapshot(c.base_env);
    for (const auto& [key, node] : *env_section) {
      if (!values.count(key)) p.fail(key, "unknown environment parameter");
      values[key] = p.real(key, node.data());
    }
    try {
      c.base_env = params_from_snapshot(to_string(env), values);
    } catch (const std::invalid_argument& e) {
      throw ValidationError(source + ": [env] " + e.what());
    }
  }

  if (auto section = tree.get_child_optional("experts")) {
    const ValueParser p(source, "experts");
    for (const auto& [key, node] : *section) {
      const std::string& v = node.data();
      if (key == "max_episodes") {
        c.experts.max_episodes = p.count(key, v);
      } else if (key == "pendulum_episodes") {
        c.experts.pendulum_episodes = p.count(key, v);
      } else if (key == "attempts") {
        c.experts.attempts = p.count(key, v);
      } else if (key == "candidate_rollouts") {
        c.experts.candidate_rollouts = p.count(key, v);
      } else if (key == "cartpole_quality") {
        c.experts.cartpole_quality = p.named(key, v, parse_quality);
      } else {
        p.fail(key, "unknown key");
      }
    }
  }

  if (auto section = tree.get_child_optional("dqn")) {
    const ValueParser p(source, "dqn");
    for (const auto& [key, node] : *section) {
      const std::string& v = node.data();
      if (key == "hidden") {
        c.dqn.hidden.clear();
        for (const auto& h : p.items(v)) c.dqn.hidden.push_back(p.count(key, h));
      } else if (key == "learning_rate") {
        c.dqn.learning_rate = p.real(key, v);
      } else if (key == "discount") {
        c.dqn.discount = p.real(key, v);
      } else if (key == "batch_size") {
        c.dqn.batch_size = p.count(key, v);
      } else if (key == "replay_capacity") {
        c.dqn.replay_capacity = p.count(key, v);
      } else if (key == "epsilon_start") {
        c.dqn.epsilon_start = p.real(key, v);
      } else if (key == "epsilon_end") {
        c.dqn.epsilon_end = p.real(key, v);
      } else if (key == "epsilon_decay") {
        c.dqn.epsilon_decay = p.real(key, v);
      } else if (key == "target_sync_interval") {
        c.dqn.target_sync_interval = p.count(key, v);
      } else {
        p.fail(key, "unknown key");
      }
    }
  }

  if (auto section = tree.get_child_optional("reward")) {
    const ValueParser p(source, "reward");
    for (const auto& [key, node] : *section) {
      const std::string& v = node.data();
      if (key == "projection_count") {
        c.reward.projection_count = p.count(key, v);
      } else if (key == "projection_seed") {
        c.reward.projection_seed = p.count(key, v);
      } else if (key == "fresh_projections") {
        c.reward.fresh_projections = p.boolean(key, v);
      } else if (key == "combine_strategy") {
        c.reward.combine_strategy = p.named(key, v, parse_combine_strategy);
      } else if (key == "combine_seed") {
        c.reward.combine_seed = p.count(key, v);
      } else if (key == "recombine_each_episode") {
        c.reward.recombine_each_episode = p.boolean(key, v);
      } else if (key == "weights") {
        c.reward.weights = p.reals(key, v);
      } else if (key == "transform") {
        c.reward.transform = p.named(key, v, parse_cost_transform);
      } else if (key == "beta") {
        c.reward.beta = p.real(key, v);
      } else if (key == "step_term") {
        c.reward.step_term = p.named(key, v, parse_step_term);
      } else {
        p.fail(key, "unknown key");
      }
    }
  }

  c.dqn.train_episodes = c.train_episodes;
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path);
  return parse_config(in, path);
}

EnvParams with_axis_value(const EnvParams& base, VariationAxis axis,
                          double value) {
  EnvParams out = base;
  if (auto* cp = std::get_if<CartPoleParams>(&out)) {
    (axis == VariationAxis::kLength ? cp->pole_half_length : cp->cart_mass) =
        value;
  } else {
    auto& pd = std::get<PendulumParams>(out);
    (axis == VariationAxis::kLength ? pd.length : pd.mass) = value;
  }
  return out;
}

EnvParams agent_env(const ExperimentConfig& config) {
  return with_axis_value(config.base_env, config.variation_axis,
                         config.agent_param_value);
}

std::vector<EnvParams> expert_envs(const ExperimentConfig& config) {
  std::vector<EnvParams> out;
  for (double v : config.expert_param_values) {
    out.push_back(with_axis_value(config.base_env, config.variation_axis, v));
  }
  return out;
}

}  // namespace otil
