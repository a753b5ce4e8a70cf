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

#ifndef OTIL_OT_CORE_HPP_
#define OTIL_OT_CORE_HPP_

// Closed-form one-dimensional optimal transport and its sliced Monte-Carlo
// estimators.
//
// All measures carry uniform weights and equal atom counts. In 1D the optimal
// coupling between two such measures pairs atoms by rank, so every distance
// here reduces to "project, sort, compare rank by rank". Multi-marginal
// distances compare each rank against the weighted barycenter of that rank
// across all marginals.
//
// Reductions run sequentially in a fixed order (projection index ascending,
// then rank ascending, then marginal ascending), so results are bit-identical
// across runs and machines with the same floating point semantics.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace otil {

using Vector = std::vector<double>;

// Uniform-weight point cloud in R^dim. Atoms are stored row-major.
class DiscreteMeasure {
 public:
  // Throws std::invalid_argument if `atoms` is empty, ragged, zero
  // dimensional or contains non-finite values.
  explicit DiscreteMeasure(const std::vector<Vector>& atoms);
  DiscreteMeasure(std::size_t dim, std::vector<double> flat_atoms);

  std::size_t size() const { return data_.size() / dim_; }
  std::size_t dim() const { return dim_; }
  std::span<const double> atom(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  std::span<const double> flat() const { return data_; }

  bool operator==(const DiscreteMeasure&) const = default;

 private:
  void validate() const;

  std::size_t dim_;
  std::vector<double> data_;
};

// K unit directions on the (dim-1)-sphere.
class ProjectionSet {
 public:
  // Explicit directions. Each must have unit norm within 1e-12.
  ProjectionSet(std::size_t dim, std::vector<Vector> directions,
                std::uint64_t seed = 0);

  std::size_t size() const { return data_.size() / dim_; }
  std::size_t dim() const { return dim_; }
  std::uint64_t seed() const { return seed_; }
  std::span<const double> direction(std::size_t k) const {
    return {data_.data() + k * dim_, dim_};
  }

  bool operator==(const ProjectionSet&) const = default;

 private:
  friend ProjectionSet sample_projections(std::size_t, std::size_t,
                                          std::uint64_t);
  ProjectionSet() = default;

  std::size_t dim_ = 0;
  std::vector<double> data_;
  std::uint64_t seed_ = 0;
};

// Point of the probability simplex, one weight per marginal.
class BarycentricWeights {
 public:
  explicit BarycentricWeights(Vector lambda);
  static BarycentricWeights uniform(std::size_t count);

  std::size_t size() const { return lambda_.size(); }
  double operator[](std::size_t i) const { return lambda_[i]; }
  const Vector& values() const { return lambda_; }

 private:
  Vector lambda_;
};

// Projection of one measure onto one direction.
struct SortedProjection {
  Vector sorted;                  // <theta, x> ascending
  std::vector<std::size_t> rank;  // original index -> rank
  std::vector<std::size_t> order; // rank -> original index
};

// Rank alignments of P marginals under K directions. Index as
// [k * marginals + p].
class SortedAlignment {
 public:
  std::size_t projections() const { return projections_; }
  std::size_t marginals() const { return marginals_; }
  std::size_t atoms() const { return atoms_; }

  const SortedProjection& at(std::size_t k, std::size_t p) const {
    return entries_[k * marginals_ + p];
  }
  // Original index of the atom of marginal `p` holding `rank` under
  // direction `k`.
  std::size_t aligned_index(std::size_t k, std::size_t p,
                            std::size_t rank) const {
    return at(k, p).order[rank];
  }

 private:
  friend SortedAlignment build_alignment(std::span<const DiscreteMeasure>,
                                         const ProjectionSet&);
  std::size_t projections_ = 0;
  std::size_t marginals_ = 0;
  std::size_t atoms_ = 0;
  std::vector<SortedProjection> entries_;
};

// Gaussian draw normalised to the sphere; deterministic for a seed.
ProjectionSet sample_projections(std::size_t dim, std::size_t count,
                                 std::uint64_t seed);

// Stable sort, so equal projections keep their original relative order.
SortedProjection project_and_sort(const DiscreteMeasure& measure,
                                  std::span<const double> direction);

double w2_squared_1d(std::span<const double> u, std::span<const double> v);

double sliced_w2_squared(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                         const ProjectionSet& projections);

// (1/N) sum_t sum_p lambda_p |x_t^(p) - b_t|^2 with b_t = sum_j lambda_j
// x_t^(j), for P sorted lists of equal length N.
double mw_squared_1d(std::span<const std::span<const double>> values,
                     const BarycentricWeights& weights);
double mw_squared_1d(const std::vector<Vector>& values,
                     const BarycentricWeights& weights);

double sliced_mw_squared(std::span<const DiscreteMeasure> measures,
                         const BarycentricWeights& weights,
                         const ProjectionSet& projections);

SortedAlignment build_alignment(std::span<const DiscreteMeasure> measures,
                                const ProjectionSet& projections);

}  // namespace otil

#endif  // OTIL_OT_CORE_HPP_
