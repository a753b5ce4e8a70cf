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


#ifndef OTIL_MLP_HPP_
#define OTIL_MLP_HPP_

// Fully connected rectifier network with an identity output layer, its
// backward pass, and the Adam optimiser.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "otil/ot_core.hpp"

namespace otil {

// Layer l maps layer_sizes[l] inputs to layer_sizes[l + 1] outputs.
// weights[l] is row-major with shape (layer_sizes[l + 1], layer_sizes[l]).
// The same struct doubles as a gradient or optimiser moment buffer.
struct Mlp {
  std::vector<std::size_t> layer_sizes;
  std::vector<Vector> weights;
  std::vector<Vector> biases;

  std::size_t layers() const { return weights.size(); }
  std::size_t input_dim() const { return layer_sizes.front(); }
  std::size_t output_dim() const { return layer_sizes.back(); }
  std::size_t parameter_count() const;

  bool same_shape(const Mlp& other) const {
    return layer_sizes == other.layer_sizes;
  }
  bool operator==(const Mlp&) const = default;
};

// All parameters zero.
Mlp zero_mlp(const std::vector<std::size_t>& layer_sizes);
// Weights and biases uniform in +-1/sqrt(fan_in).
Mlp make_mlp(const std::vector<std::size_t>& layer_sizes, std::uint64_t seed);

void validate(const Mlp& params);

Vector forward(const Mlp& params, std::span<const double> input);

// Activations of every layer; activations[0] is the input and
// activations.back() the output.
struct ForwardTrace {
  std::vector<Vector> activations;
};

ForwardTrace forward_trace(const Mlp& params, std::span<const double> input);

// Adds d(loss)/d(params) to `gradient` given d(loss)/d(output).
void accumulate_gradient(const Mlp& params, const ForwardTrace& trace,
                         std::span<const double> output_gradient,
                         Mlp& gradient);

struct AdamState {
  Mlp first_moment;
  Mlp second_moment;
  std::int64_t step = 0;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  static AdamState for_params(const Mlp& params, double learning_rate = 1e-3);
};

// Bias-corrected Adam update. Throws std::invalid_argument on shape mismatch.
void adam_step(Mlp& params, AdamState& state, const Mlp& gradient);

// Text format:
//
//   otil-mlp 1
//   sizes <n0> <n1> ... <nL>
//   weights <l>            followed by one row per output unit
//   biases <l>             followed by one line with all biases
//   end
//
// Numbers use 17 significant digits and round-trip exactly.
void save_mlp(const Mlp& params, std::ostream& out);
Mlp load_mlp(std::istream& in);
void save_mlp(const Mlp& params, const std::string& path);
Mlp load_mlp(const std::string& path);

}  // namespace otil

#endif  // OTIL_MLP_HPP_
