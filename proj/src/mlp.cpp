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


#include "otil/mlp.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "otil/errors.hpp"
#include "otil/numbers.hpp"

namespace otil {

namespace {

constexpr const char* kMagic = "otil-mlp";
constexpr int kFormatVersion = 1;

void check_sizes(const std::vector<std::size_t>& sizes) {
  if (sizes.size() < 2) {
    throw std::invalid_argument("an MLP needs at least input and output sizes");
  }
  for (auto s : sizes) {
    if (s == 0) throw std::invalid_argument("layer sizes must be positive");
  }
}

void require_same_shape(const Mlp& a, const Mlp& b, const char* what) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument(std::string(what) + ": shape mismatch");
  }
}

// Reads lines and tracks the line number for error messages.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::string next(const char* expected) {
    std::string line;
    if (!std::getline(in_, line)) fail("unexpected end of input, expected " +
                                       std::string(expected));
    ++line_;
    return line;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError("mlp", line_, message);
  }

  std::vector<double> numbers(std::size_t count, const char* expected) {
    const std::string line = next(expected);
    std::vector<double> out;
    out.reserve(count);
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
      const auto v = parse_double(tok);
      if (!v) fail("invalid number '" + tok + "'");
      out.push_back(*v);
    }
    if (out.size() != count) {
      fail("expected " + std::to_string(count) + " numbers, found " +
           std::to_string(out.size()));
    }
    return out;
  }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

}  // namespace

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l < layers(); ++l) {
    n += weights[l].size() + biases[l].size();
  }
  return n;
}

Mlp zero_mlp(const std::vector<std::size_t>& layer_sizes) {
  check_sizes(layer_sizes);
  Mlp m;
  m.layer_sizes = layer_sizes;
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    m.weights.emplace_back(layer_sizes[l] * layer_sizes[l + 1], 0.0);
    m.biases.emplace_back(layer_sizes[l + 1], 0.0);
  }
  return m;
}

Mlp make_mlp(const std::vector<std::size_t>& layer_sizes, std::uint64_t seed) {
  Mlp m = zero_mlp(layer_sizes);
  std::mt19937_64 rng(seed);
  for (std::size_t l = 0; l < m.layers(); ++l) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(layer_sizes[l]));
    std::uniform_real_distribution<double> u(-bound, bound);
    for (auto& w : m.weights[l]) w = u(rng);
    for (auto& b : m.biases[l]) b = u(rng);
  }
  return m;
}

void validate(const Mlp& params) {
  check_sizes(params.layer_sizes);
  if (params.weights.size() + 1 != params.layer_sizes.size() ||
      params.biases.size() != params.weights.size()) {
    throw std::invalid_argument("MLP layer count does not match layer sizes");
  }
  for (std::size_t l = 0; l < params.layers(); ++l) {
    if (params.weights[l].size() !=
            params.layer_sizes[l] * params.layer_sizes[l + 1] ||
        params.biases[l].size() != params.layer_sizes[l + 1]) {
      throw std::invalid_argument("MLP parameter shapes do not chain");
    }
    for (double w : params.weights[l]) {
      if (!std::isfinite(w)) throw std::invalid_argument("non-finite weight");
    }
    for (double b : params.biases[l]) {
      if (!std::isfinite(b)) throw std::invalid_argument("non-finite bias");
    }
  }
}

ForwardTrace forward_trace(const Mlp& params, std::span<const double> input) {
  if (input.size() != params.input_dim()) {
    throw std::invalid_argument("network input has dimension " +
                                std::to_string(input.size()) + ", expected " +
                                std::to_string(params.input_dim()));
  }
  ForwardTrace trace;
  trace.activations.reserve(params.layers() + 1);
  trace.activations.emplace_back(input.begin(), input.end());
  for (std::size_t l = 0; l < params.layers(); ++l) {
    const Vector& x = trace.activations.back();
    const std::size_t in = params.layer_sizes[l];
    const std::size_t out = params.layer_sizes[l + 1];
    const bool hidden = l + 1 < params.layers();
    Vector y(out);
    for (std::size_t i = 0; i < out; ++i) {
      const double* row = params.weights[l].data() + i * in;
      double s = params.biases[l][i];
      for (std::size_t j = 0; j < in; ++j) s += row[j] * x[j];
      y[i] = hidden && s < 0.0 ? 0.0 : s;
    }
    trace.activations.push_back(std::move(y));
  }
  return trace;
}

Vector forward(const Mlp& params, std::span<const double> input) {
  return std::move(forward_trace(params, input).activations.back());
}

void accumulate_gradient(const Mlp& params, const ForwardTrace& trace,
                         std::span<const double> output_gradient,
                         Mlp& gradient) {
  require_same_shape(params, gradient, "accumulate_gradient");
  if (output_gradient.size() != params.output_dim()) {
    throw std::invalid_argument("output gradient has the wrong dimension");
  }
  Vector delta(output_gradient.begin(), output_gradient.end());
  for (std::size_t l = params.layers(); l-- > 0;) {
    const Vector& x = trace.activations[l];
    const std::size_t in = params.layer_sizes[l];
    const std::size_t out = params.layer_sizes[l + 1];
    for (std::size_t i = 0; i < out; ++i) {
      if (delta[i] == 0.0) continue;
      gradient.biases[l][i] += delta[i];
      double* row = gradient.weights[l].data() + i * in;
      for (std::size_t j = 0; j < in; ++j) row[j] += delta[i] * x[j];
    }
    if (l == 0) break;
    Vector prev(in, 0.0);
    for (std::size_t i = 0; i < out; ++i) {
      if (delta[i] == 0.0) continue;
      const double* row = params.weights[l].data() + i * in;
      for (std::size_t j = 0; j < in; ++j) prev[j] += row[j] * delta[i];
    }
    // Rectifier derivative, read off the post-activation value.
    for (std::size_t j = 0; j < in; ++j) {
      if (!(x[j] > 0.0)) prev[j] = 0.0;
    }
    delta = std::move(prev);
  }
}

AdamState AdamState::for_params(const Mlp& params, double learning_rate) {
  AdamState s;
  s.first_moment = zero_mlp(params.layer_sizes);
  s.second_moment = zero_mlp(params.layer_sizes);
  s.learning_rate = learning_rate;
  return s;
}

void adam_step(Mlp& params, AdamState& state, const Mlp& gradient) {
  require_same_shape(params, gradient, "adam_step");
  require_same_shape(params, state.first_moment, "adam_step");
  require_same_shape(params, state.second_moment, "adam_step");

  ++state.step;
  const double t = static_cast<double>(state.step);
  const double c1 = 1.0 - std::pow(state.beta1, t);
  const double c2 = 1.0 - std::pow(state.beta2, t);
  auto update = [&](Vector& w, Vector& m, Vector& v, const Vector& g) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      m[i] = state.beta1 * m[i] + (1.0 - state.beta1) * g[i];
      v[i] = state.beta2 * v[i] + (1.0 - state.beta2) * g[i] * g[i];
      const double m_hat = m[i] / c1;
      const double v_hat = v[i] / c2;
      w[i] -= state.learning_rate * m_hat / (std::sqrt(v_hat) + state.epsilon);
    }
  };
  for (std::size_t l = 0; l < params.layers(); ++l) {
    update(params.weights[l], state.first_moment.weights[l],
           state.second_moment.weights[l], gradient.weights[l]);
    update(params.biases[l], state.first_moment.biases[l],
           state.second_moment.biases[l], gradient.biases[l]);
  }
}

void save_mlp(const Mlp& params, std::ostream& out) {
  validate(params);
  out << kMagic << ' ' << kFormatVersion << '\n';
  out << "sizes";
  for (auto s : params.layer_sizes) out << ' ' << s;
  out << '\n';
  for (std::size_t l = 0; l < params.layers(); ++l) {
    const std::size_t in = params.layer_sizes[l];
    const std::size_t rows = params.layer_sizes[l + 1];
    out << "weights " << l << '\n';
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < in; ++j) {
        out << (j ? " " : "") << format_double(params.weights[l][i * in + j]);
      }
      out << '\n';
    }
    out << "biases " << l << '\n';
    for (std::size_t i = 0; i < rows; ++i) {
      out << (i ? " " : "") << format_double(params.biases[l][i]);
    }
    out << '\n';
  }
  out << "end\n";
}

Mlp load_mlp(std::istream& in) {
  LineReader reader(in);
  {
    std::istringstream header(reader.next("header"));
    std::string magic;
    int version = 0;
    if (!(header >> magic >> version) || magic != kMagic) {
      reader.fail("not an otil-mlp file");
    }
    if (version != kFormatVersion) {
      reader.fail("unsupported otil-mlp version " + std::to_string(version));
    }
  }
  std::vector<std::size_t> sizes;
  {
    std::istringstream ss(reader.next("sizes"));
    std::string tag;
    ss >> tag;
    if (tag != "sizes") reader.fail("expected 'sizes'");
    long long s = 0;
    while (ss >> s) {
      if (s <= 0) reader.fail("layer sizes must be positive");
      sizes.push_back(static_cast<std::size_t>(s));
    }
    if (!ss.eof()) reader.fail("invalid layer size");
    if (sizes.size() < 2) reader.fail("need at least two layer sizes");
  }
  Mlp m = zero_mlp(sizes);
  for (std::size_t l = 0; l < m.layers(); ++l) {
    const std::size_t in = sizes[l];
    const std::size_t rows = sizes[l + 1];
    if (trim(reader.next("weights")) != "weights " + std::to_string(l)) {
      reader.fail("expected 'weights " + std::to_string(l) + "'");
    }
    for (std::size_t i = 0; i < rows; ++i) {
      const auto row = reader.numbers(in, "weight row");
      std::copy(row.begin(), row.end(), m.weights[l].begin() + i * in);
    }
    if (trim(reader.next("biases")) != "biases " + std::to_string(l)) {
      reader.fail("expected 'biases " + std::to_string(l) + "'");
    }
    m.biases[l] = reader.numbers(rows, "bias row");
  }
  if (trim(reader.next("end")) != "end") reader.fail("expected 'end'");
  validate(m);
  return m;
}

void save_mlp(const Mlp& params, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  save_mlp(params, out);
  if (!out) throw std::runtime_error("failed writing " + path);
}

Mlp load_mlp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_mlp(in);
}

}  // namespace otil
