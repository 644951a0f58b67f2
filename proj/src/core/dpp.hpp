// Copyright 2026 The TGIN Authors.
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
#ifndef TGIN_CORE_DPP_HPP_
#define TGIN_CORE_DPP_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "core/triangle.hpp"

namespace tgin {

// One feature vector per row.
using FeatureMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// alpha = theta / (2 (1 - theta)); theta must lie in (0, 1).
double AlphaFromTheta(double theta);

// Kernel L = Diag(exp(alpha r)) C Diag(exp(alpha r)) with C the cosine
// similarity of the feature rows. A zero feature row is similar only to
// itself (C_ii = 1, zero off-diagonal).
class DppKernel {
 public:
  static DppKernel FromFeatures(std::span<const double> relevance,
                                FeatureMatrix features, double theta);
  // Arbitrary symmetric PSD matrix, used directly as L.
  static DppKernel FromDense(Eigen::MatrixXd kernel);

  size_t size() const { return static_cast<size_t>(scale_.size()); }
  double Entry(size_t i, size_t j) const;
  // Fills out[i] = L(j, i).
  void Row(size_t j, std::span<double> out) const;
  Eigen::MatrixXd Dense() const;
  Eigen::MatrixXd Similarity() const;

  const Eigen::VectorXd& relevance() const { return relevance_; }
  double theta() const { return theta_; }
  double alpha() const { return alpha_; }
  bool has_zero_feature_rows() const { return zero_rows_ > 0; }

 private:
  DppKernel() = default;

  Eigen::VectorXd relevance_;
  Eigen::VectorXd scale_;     // exp(alpha r), or sqrt(L_ii) for dense kernels
  FeatureMatrix features_;  // unit or zero rows
  std::vector<uint8_t> zero_row_;
  size_t zero_rows_ = 0;
  std::optional<Eigen::MatrixXd> dense_;
  double theta_ = 0.0;
  double alpha_ = 0.0;
};

// Uses each triangle's relevance and feature as given.
DppKernel BuildKernel(std::span<const Triangle> triangles, double theta);

// log det(L_S); -infinity when L_S is singular (a pivot below
// kMinConditionalVariance * max(1, max diag)). The empty set gives 0.
double SubsetLogDet(const DppKernel& kernel, std::span<const size_t> subset);
// det(L_S) / det(L + I).
double SubsetProbability(const DppKernel& kernel, std::span<const size_t> subset);

struct GreedyResult {
  std::vector<size_t> selected;  // selection order
  std::vector<double> gains;     // log det(L_{S+j}) - log det(L_S) per step
  bool truncated = false;        // fewer than the requested count
};

// A marginal gain below this (relative to max(1, L_jj)) counts as -infinity.
inline constexpr double kMinConditionalVariance = 1e-12;

// Greedy MAP inference with incremental Cholesky updates: each step adds
// the index with the largest log-det gain, lowest index on ties, and stops
// once the best extension is singular.
GreedyResult GreedyMap(const DppKernel& kernel, size_t count);

struct SelectedTriangle {
  Triangle triangle;
  uint32_t rank = 0;
  bool padded = false;
};

struct SelectionOptions {
  double theta = 0.5;
  size_t count = 10;
};

Triangle PseudoTriangle(NodeId center, uint32_t order, size_t feature_dim);

// Min-max scales relevance within the group, runs GreedyMap, then pads to
// exactly options.count rows: first the highest-relevance unselected
// triangles, then pseudo-triangles of the center. Returned triangles carry
// their original relevance.
std::vector<SelectedTriangle> SelectTriangles(std::span<const Triangle> triangles,
                                              NodeId center, uint32_t order,
                                              const SelectionOptions& options);

// Same, with precomputed per-triangle features (one row per triangle);
// returned triangles carry their feature row.
std::vector<SelectedTriangle> SelectTriangles(std::span<const Triangle> triangles,
                                              const FeatureMatrix& features, NodeId center,
                                              uint32_t order, const SelectionOptions& options);

// Unit-normalized mean item features of each triangle, one row per triangle.
FeatureMatrix TriangleFeatureMatrix(std::span<const Triangle> triangles,
                                      const NodeCatalog& nodes);

// Draws min(count, N) triangles without replacement, each draw proportional
// to relevance (uniform when all remaining relevances are zero).
std::vector<Triangle> WeightSample(std::span<const Triangle> triangles, size_t count,
                                   uint64_t seed);

}  // namespace tgin

#endif  // TGIN_CORE_DPP_HPP_
