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

#include "otil/ot_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace otil {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void require_compatible(std::span<const DiscreteMeasure> measures,
                        std::size_t dim) {
  if (measures.empty()) {
    throw std::invalid_argument("at least one measure is required");
  }
  const std::size_t atoms = measures.front().size();
  for (const auto& m : measures) {
    if (m.dim() != dim) {
      throw std::invalid_argument("measure dimension " +
                                  std::to_string(m.dim()) +
                                  " does not match projection dimension " +
                                  std::to_string(dim));
    }
    if (m.size() != atoms) {
      throw std::invalid_argument(
          "measures must have equal atom counts (got " +
          std::to_string(atoms) + " and " + std::to_string(m.size()) + ")");
    }
  }
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(const std::vector<Vector>& atoms)
    : dim_(atoms.empty() ? 0 : atoms.front().size()) {
  if (atoms.empty()) {
    throw std::invalid_argument("a discrete measure needs at least one atom");
  }
  data_.reserve(atoms.size() * dim_);
  for (const auto& a : atoms) {
    if (a.size() != dim_) {
      throw std::invalid_argument("ragged atoms: expected dimension " +
                                  std::to_string(dim_) + ", got " +
                                  std::to_string(a.size()));
    }
    data_.insert(data_.end(), a.begin(), a.end());
  }
  validate();
}

DiscreteMeasure::DiscreteMeasure(std::size_t dim, std::vector<double> flat)
    : dim_(dim), data_(std::move(flat)) {
  if (dim_ == 0 || data_.empty() || data_.size() % dim_ != 0) {
    throw std::invalid_argument(
        "flat atom buffer must be a nonempty multiple of the dimension");
  }
  validate();
}

void DiscreteMeasure::validate() const {
  if (dim_ == 0) {
    throw std::invalid_argument("measure dimension must be positive");
  }
  for (double x : data_) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument("measure atoms must be finite");
    }
  }
}

ProjectionSet::ProjectionSet(std::size_t dim, std::vector<Vector> directions,
                             std::uint64_t seed)
    : dim_(dim), seed_(seed) {
  if (dim == 0 || directions.empty()) {
    throw std::invalid_argument("projection set needs dim >= 1 and K >= 1");
  }
  data_.reserve(dim * directions.size());
  for (const auto& d : directions) {
    if (d.size() != dim) {
      throw std::invalid_argument("direction has wrong dimension");
    }
    if (std::abs(std::sqrt(dot(d, d)) - 1.0) > 1e-12) {
      throw std::invalid_argument("projection directions must be unit norm");
    }
    data_.insert(data_.end(), d.begin(), d.end());
  }
}

BarycentricWeights::BarycentricWeights(Vector lambda)
    : lambda_(std::move(lambda)) {
  if (lambda_.empty()) {
    throw std::invalid_argument("barycentric weights must be nonempty");
  }
  double total = 0.0;
  for (double w : lambda_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("barycentric weights must be >= 0");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("barycentric weights must sum to 1");
  }
}

BarycentricWeights BarycentricWeights::uniform(std::size_t count) {
  if (count == 0) {
    throw std::invalid_argument("uniform weights need count >= 1");
  }
  Vector w(count, 1.0 / static_cast<double>(count));
  // Push the rounding residue into the last entry so the sum is exact.
  double head = 0.0;
  for (std::size_t i = 0; i + 1 < count; ++i) head += w[i];
  w.back() = 1.0 - head;
  return BarycentricWeights(std::move(w));
}

ProjectionSet sample_projections(std::size_t dim, std::size_t count,
                                 std::uint64_t seed) {
  if (dim == 0 || count == 0) {
    throw std::invalid_argument("sample_projections needs dim >= 1 and "
                                "count >= 1");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ProjectionSet set;
  set.dim_ = dim;
  set.seed_ = seed;
  set.data_.resize(dim * count);
  for (std::size_t k = 0; k < count; ++k) {
    double* d = set.data_.data() + k * dim;
    double norm = 0.0;
    // Redraw the (measure-zero) degenerate case of an all-zero draw.
    while (norm < 1e-300) {
      for (std::size_t i = 0; i < dim; ++i) d[i] = gauss(rng);
      norm = std::sqrt(dot({d, dim}, {d, dim}));
    }
    for (std::size_t i = 0; i < dim; ++i) d[i] /= norm;
  }
  return set;
}

SortedProjection project_and_sort(const DiscreteMeasure& measure,
                                  std::span<const double> direction) {
  if (direction.size() != measure.dim()) {
    throw std::invalid_argument("direction dimension " +
                                std::to_string(direction.size()) +
                                " does not match measure dimension " +
                                std::to_string(measure.dim()));
  }
  const std::size_t n = measure.size();
  Vector values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = dot(measure.atom(i), direction);

  SortedProjection out;
  out.order.resize(n);
  std::iota(out.order.begin(), out.order.end(), std::size_t{0});
  std::stable_sort(out.order.begin(), out.order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return values[a] < values[b];
                   });
  out.sorted.resize(n);
  out.rank.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    out.sorted[r] = values[out.order[r]];
    out.rank[out.order[r]] = r;
  }
  return out;
}

double w2_squared_1d(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size() || u.empty()) {
    throw std::invalid_argument(
        "w2_squared_1d needs two nonempty lists of equal length");
  }
  double s = 0.0;
  for (std::size_t t = 0; t < u.size(); ++t) {
    const double d = u[t] - v[t];
    s += d * d;
  }
  return s / static_cast<double>(u.size());
}

double sliced_w2_squared(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                         const ProjectionSet& projections) {
  require_compatible(std::span<const DiscreteMeasure>(&mu, 1),
                     projections.dim());
  require_compatible(std::span<const DiscreteMeasure>(&nu, 1),
                     projections.dim());
  if (mu.size() != nu.size()) {
    throw std::invalid_argument(
        "measures must have equal atom counts (got " +
        std::to_string(mu.size()) + " and " + std::to_string(nu.size()) + ")");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < projections.size(); ++k) {
    const auto a = project_and_sort(mu, projections.direction(k));
    const auto b = project_and_sort(nu, projections.direction(k));
    total += w2_squared_1d(a.sorted, b.sorted);
  }
  return total / static_cast<double>(projections.size());
}

double mw_squared_1d(std::span<const std::span<const double>> values,
                     const BarycentricWeights& weights) {
  if (values.empty() || values.size() != weights.size()) {
    throw std::invalid_argument(
        "mw_squared_1d needs one weight per marginal (got " +
        std::to_string(values.size()) + " marginals, " +
        std::to_string(weights.size()) + " weights)");
  }
  const std::size_t n = values.front().size();
  if (n == 0) throw std::invalid_argument("marginals must be nonempty");
  for (const auto& v : values) {
    if (v.size() != n) {
      throw std::invalid_argument("marginals must have equal lengths");
    }
  }
  double total = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    double bary = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) {
      bary += weights[j] * values[j][t];
    }
    for (std::size_t p = 0; p < values.size(); ++p) {
      const double d = values[p][t] - bary;
      total += weights[p] * d * d;
    }
  }
  return total / static_cast<double>(n);
}

double mw_squared_1d(const std::vector<Vector>& values,
                     const BarycentricWeights& weights) {
  std::vector<std::span<const double>> views(values.begin(), values.end());
  return mw_squared_1d(std::span<const std::span<const double>>(views),
                       weights);
}

double sliced_mw_squared(std::span<const DiscreteMeasure> measures,
                         const BarycentricWeights& weights,
                         const ProjectionSet& projections) {
  require_compatible(measures, projections.dim());
  if (measures.size() < 2) {
    throw std::invalid_argument("sliced_mw_squared needs at least 2 measures");
  }
  if (weights.size() != measures.size()) {
    throw std::invalid_argument("weight count must equal measure count");
  }
  std::vector<Vector> sorted(measures.size());
  double total = 0.0;
  for (std::size_t k = 0; k < projections.size(); ++k) {
    for (std::size_t p = 0; p < measures.size(); ++p) {
      sorted[p] = project_and_sort(measures[p], projections.direction(k)).sorted;
    }
    total += mw_squared_1d(sorted, weights);
  }
  return total / static_cast<double>(projections.size());
}

SortedAlignment build_alignment(std::span<const DiscreteMeasure> measures,
                                const ProjectionSet& projections) {
  require_compatible(measures, projections.dim());
  SortedAlignment out;
  out.projections_ = projections.size();
  out.marginals_ = measures.size();
  out.atoms_ = measures.front().size();
  out.entries_.reserve(out.projections_ * out.marginals_);
  for (std::size_t k = 0; k < projections.size(); ++k) {
    for (const auto& m : measures) {
      out.entries_.push_back(project_and_sort(m, projections.direction(k)));
    }
  }
  return out;
}

}  // namespace otil
