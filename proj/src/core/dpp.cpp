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
#include "core/dpp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace tgin {

double AlphaFromTheta(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) {
    Fail(ErrorCode::kInvalidParameter, "theta must lie in (0, 1), got " + std::to_string(theta));
  }
  return theta / (2.0 * (1.0 - theta));
}

DppKernel DppKernel::FromFeatures(std::span<const double> relevance,
                                  FeatureMatrix features, double theta) {
  const auto n = static_cast<Eigen::Index>(relevance.size());
  if (n == 0) Fail(ErrorCode::kInvalidInput, "kernel needs at least one item");
  if (features.rows() != n) {
    Fail(ErrorCode::kInvalidInput, "feature rows do not match relevance length");
  }
  DppKernel k;
  k.theta_ = theta;
  k.alpha_ = AlphaFromTheta(theta);
  k.relevance_ = Eigen::Map<const Eigen::VectorXd>(relevance.data(), n);
  k.scale_ = (k.alpha_ * k.relevance_).array().exp().matrix();
  k.features_ = std::move(features);
  k.zero_row_.assign(static_cast<size_t>(n), 0);
  const Eigen::VectorXd norms = k.features_.rowwise().norm();
  Eigen::VectorXd inverse(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (norms(i) < kMinFeatureNorm) {
      inverse(i) = 0.0;
      k.zero_row_[static_cast<size_t>(i)] = 1;
      ++k.zero_rows_;
    } else {
      inverse(i) = 1.0 / norms(i);
    }
  }
  k.features_ = inverse.asDiagonal() * k.features_;
  return k;
}

DppKernel DppKernel::FromDense(Eigen::MatrixXd kernel) {
  if (kernel.rows() == 0 || kernel.rows() != kernel.cols()) {
    Fail(ErrorCode::kInvalidInput, "dense kernel must be square and non-empty");
  }
  DppKernel k;
  k.relevance_ = Eigen::VectorXd::Zero(kernel.rows());
  k.scale_ = kernel.diagonal().cwiseMax(0.0).cwiseSqrt();
  k.zero_row_.assign(static_cast<size_t>(kernel.rows()), 0);
  k.dense_ = std::move(kernel);
  return k;
}

double DppKernel::Entry(size_t i, size_t j) const {
  const auto a = static_cast<Eigen::Index>(i);
  const auto b = static_cast<Eigen::Index>(j);
  if (dense_) return (*dense_)(a, b);
  if (i == j) return scale_(a) * scale_(a);
  if (zero_row_[i] || zero_row_[j]) return 0.0;
  return scale_(a) * scale_(b) * features_.row(a).dot(features_.row(b));
}

void DppKernel::Row(size_t j, std::span<double> out) const {
  const auto n = static_cast<Eigen::Index>(size());
  const auto b = static_cast<Eigen::Index>(j);
  Eigen::Map<Eigen::VectorXd> row(out.data(), n);
  if (dense_) {
    row = dense_->row(b).transpose();
    return;
  }
  if (zero_row_[j]) {
    row.setZero();
  } else {
    row.noalias() = features_ * features_.row(b).transpose();
    row = row.cwiseProduct(scale_) * scale_(b);
  }
  row(b) = scale_(b) * scale_(b);
}

Eigen::MatrixXd DppKernel::Dense() const {
  if (dense_) return *dense_;
  Eigen::MatrixXd c = Similarity();
  return scale_.asDiagonal() * c * scale_.asDiagonal();
}

Eigen::MatrixXd DppKernel::Similarity() const {
  if (dense_) {
    Eigen::VectorXd inv = scale_.unaryExpr([](double s) { return s > 0 ? 1.0 / s : 0.0; });
    return inv.asDiagonal() * (*dense_) * inv.asDiagonal();
  }
  Eigen::MatrixXd c = features_ * features_.transpose();
  c.diagonal().setOnes();
  return c;
}

DppKernel BuildKernel(std::span<const Triangle> triangles, double theta) {
  AlphaFromTheta(theta);
  if (triangles.empty()) Fail(ErrorCode::kInvalidInput, "kernel needs at least one triangle");
  size_t dim = 0;
  for (const auto& t : triangles) dim = std::max(dim, t.feature.size());
  FeatureMatrix features = FeatureMatrix::Zero(static_cast<Eigen::Index>(triangles.size()),
                                                   static_cast<Eigen::Index>(dim));
  std::vector<double> relevance(triangles.size());
  for (size_t i = 0; i < triangles.size(); ++i) {
    const auto& t = triangles[i];
    relevance[i] = t.relevance;
    if (t.feature.empty()) continue;
    if (t.feature.size() != dim) Fail(ErrorCode::kInvalidInput, "triangle feature dimensions differ");
    for (size_t d = 0; d < dim; ++d) {
      features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) = t.feature[d];
    }
  }
  return DppKernel::FromFeatures(relevance, features, theta);
}

double SubsetLogDet(const DppKernel& kernel, std::span<const size_t> subset) {
  const auto m = static_cast<Eigen::Index>(subset.size());
  if (m == 0) return 0.0;
  Eigen::MatrixXd sub(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      sub(a, b) = kernel.Entry(subset[static_cast<size_t>(a)], subset[static_cast<size_t>(b)]);
    }
  }
  // Pivots below the greedy floor count as singular, matching GreedyMap.
  const double floor = kMinConditionalVariance * std::max(1.0, sub.diagonal().maxCoeff());
  Eigen::LDLT<Eigen::MatrixXd> ldlt(sub);
  const Eigen::VectorXd d = ldlt.vectorD();
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!(d(i) >= floor)) return -std::numeric_limits<double>::infinity();
    log_det += std::log(d(i));
  }
  return log_det;
}

double SubsetProbability(const DppKernel& kernel, std::span<const size_t> subset) {
  Eigen::MatrixXd shifted = kernel.Dense();
  shifted.diagonal().array() += 1.0;
  Eigen::LLT<Eigen::MatrixXd> llt(shifted);
  if (llt.info() != Eigen::Success) Fail(ErrorCode::kInvalidInput, "L + I is not positive definite");
  const double log_norm = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  const double log_det = SubsetLogDet(kernel, subset);
  if (std::isinf(log_det)) return 0.0;
  return std::exp(log_det - log_norm);
}

GreedyResult GreedyMap(const DppKernel& kernel, size_t count) {
  if (count < 1) Fail(ErrorCode::kInvalidParameter, "selection count must be >= 1");
  const size_t n = kernel.size();
  const size_t steps = std::min(count, n);
  GreedyResult result;

  Eigen::VectorXd diag(static_cast<Eigen::Index>(n));
  for (size_t i = 0; i < n; ++i) diag(static_cast<Eigen::Index>(i)) = kernel.Entry(i, i);
  Eigen::VectorXd residual = diag;
  // Column i holds the incremental Cholesky factors of candidate i.
  Eigen::MatrixXd factors(static_cast<Eigen::Index>(steps), static_cast<Eigen::Index>(n));
  std::vector<uint8_t> chosen(n, 0);
  Eigen::VectorXd row(static_cast<Eigen::Index>(n));

  auto best_candidate = [&]() -> std::optional<size_t> {
    std::optional<size_t> best;
    for (size_t i = 0; i < n; ++i) {
      if (chosen[i]) continue;
      if (!best || residual(static_cast<Eigen::Index>(i)) >
                       residual(static_cast<Eigen::Index>(*best))) {
        best = i;
      }
    }
    return best;
  };

  auto next = best_candidate();
  while (next && result.selected.size() < steps) {
    const size_t j = *next;
    const auto jj = static_cast<Eigen::Index>(j);
    const double dj2 = residual(jj);
    if (!(dj2 >= kMinConditionalVariance * std::max(1.0, diag(jj)))) break;
    chosen[j] = 1;
    const auto t = static_cast<Eigen::Index>(result.selected.size());
    result.selected.push_back(j);
    result.gains.push_back(std::log(dj2));
    if (result.selected.size() == steps) break;

    const double dj = std::sqrt(dj2);
    kernel.Row(j, {row.data(), n});
    auto e = factors.row(t);
    if (t > 0) {
      e.noalias() = (row.transpose() - factors.col(jj).head(t).transpose() * factors.topRows(t)) / dj;
    } else {
      e = row.transpose() / dj;
    }
    residual -= e.cwiseAbs2().transpose();
    next = best_candidate();
  }
  result.truncated = result.selected.size() < count;
  return result;
}

Triangle PseudoTriangle(NodeId center, uint32_t order, size_t feature_dim) {
  Triangle t;
  t.nodes = {center, center, center};
  t.order = order;
  t.feature.assign(feature_dim, 0.0);
  t.zero_feature = true;
  t.pseudo = true;
  return t;
}

FeatureMatrix TriangleFeatureMatrix(std::span<const Triangle> triangles,
                                    const NodeCatalog& nodes) {
  const auto dim = static_cast<Eigen::Index>(nodes.catalog().feature_dim());
  FeatureMatrix features(static_cast<Eigen::Index>(triangles.size()), dim);
  for (size_t i = 0; i < triangles.size(); ++i) {
    const auto& t = triangles[i];
    auto row = features.row(static_cast<Eigen::Index>(i));
    row.setZero();
    for (NodeId v : t.nodes) {
      const auto f = nodes.Features(v);
      row += Eigen::Map<const Eigen::RowVectorXd>(f.data(), dim);
    }
    row /= 3.0;
    const double norm = row.norm();
    if (norm >= kMinFeatureNorm) row /= norm;
  }
  return features;
}

std::vector<SelectedTriangle> SelectTriangles(std::span<const Triangle> triangles,
                                              NodeId center, uint32_t order,
                                              const SelectionOptions& options) {
  size_t feature_dim = 0;
  for (const auto& t : triangles) feature_dim = std::max(feature_dim, t.feature.size());
  FeatureMatrix features = FeatureMatrix::Zero(
      static_cast<Eigen::Index>(triangles.size()), static_cast<Eigen::Index>(feature_dim));
  for (size_t i = 0; i < triangles.size(); ++i) {
    const auto& f = triangles[i].feature;
    if (f.empty()) continue;
    if (f.size() != feature_dim) Fail(ErrorCode::kInvalidInput, "triangle feature dimensions differ");
    features.row(static_cast<Eigen::Index>(i)) =
        Eigen::Map<const Eigen::RowVectorXd>(f.data(), static_cast<Eigen::Index>(feature_dim));
  }
  return SelectTriangles(triangles, features, center, order, options);
}

std::vector<SelectedTriangle> SelectTriangles(std::span<const Triangle> triangles,
                                              const FeatureMatrix& features, NodeId center,
                                              uint32_t order, const SelectionOptions& options) {
  if (options.count < 1) Fail(ErrorCode::kInvalidParameter, "selection count must be >= 1");
  AlphaFromTheta(options.theta);
  if (features.rows() != static_cast<Eigen::Index>(triangles.size())) {
    Fail(ErrorCode::kInvalidInput, "feature rows do not match triangle count");
  }
  const auto feature_dim = static_cast<size_t>(features.cols());
  std::vector<SelectedTriangle> rows;
  rows.reserve(options.count);
  std::vector<uint8_t> used(triangles.size(), 0);
  auto emit = [&](size_t idx, bool padded) {
    SelectedTriangle sel{triangles[idx], static_cast<uint32_t>(rows.size()), padded};
    if (sel.triangle.feature.empty() && feature_dim > 0) {
      const auto row = features.row(static_cast<Eigen::Index>(idx));
      sel.triangle.feature.resize(feature_dim);
      for (size_t d = 0; d < feature_dim; ++d) {
        sel.triangle.feature[d] = row(static_cast<Eigen::Index>(d));
      }
      sel.triangle.zero_feature = row.norm() < kMinFeatureNorm;
    }
    rows.push_back(std::move(sel));
  };

  if (!triangles.empty()) {
    double lo = triangles[0].relevance;
    double hi = lo;
    for (const auto& t : triangles) {
      lo = std::min(lo, t.relevance);
      hi = std::max(hi, t.relevance);
    }
    std::vector<double> scaled(triangles.size(), 0.0);
    if (hi > lo) {
      for (size_t i = 0; i < triangles.size(); ++i) {
        scaled[i] = (triangles[i].relevance - lo) / (hi - lo);
      }
    }
    const DppKernel kernel = DppKernel::FromFeatures(scaled, features, options.theta);
    const GreedyResult greedy = GreedyMap(kernel, options.count);
    for (size_t idx : greedy.selected) {
      used[idx] = 1;
      emit(idx, false);
    }
    if (rows.size() < options.count) {
      std::vector<size_t> rest;
      for (size_t i = 0; i < triangles.size(); ++i) {
        if (!used[i]) rest.push_back(i);
      }
      std::stable_sort(rest.begin(), rest.end(), [&](size_t x, size_t y) {
        return triangles[x].relevance > triangles[y].relevance;
      });
      for (size_t i = 0; i < rest.size() && rows.size() < options.count; ++i) {
        emit(rest[i], true);
      }
    }
  }
  while (rows.size() < options.count) {
    rows.push_back({PseudoTriangle(center, order, feature_dim),
                    static_cast<uint32_t>(rows.size()), true});
  }
  return rows;
}

std::vector<Triangle> WeightSample(std::span<const Triangle> triangles, size_t count,
                                   uint64_t seed) {
  if (count < 1) Fail(ErrorCode::kInvalidParameter, "sample count must be >= 1");
  Rng rng(seed);
  std::vector<size_t> remaining(triangles.size());
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<Triangle> out;
  while (out.size() < count && !remaining.empty()) {
    double total = 0.0;
    for (size_t i : remaining) total += std::max(0.0, triangles[i].relevance);
    size_t pick = remaining.size() - 1;
    if (total > 0.0) {
      const double target = rng.Uniform() * total;
      double acc = 0.0;
      for (size_t k = 0; k < remaining.size(); ++k) {
        acc += std::max(0.0, triangles[remaining[k]].relevance);
        if (target < acc) {
          pick = k;
          break;
        }
      }
      // Guard against rounding landing on a trailing zero-weight entry.
      while (triangles[remaining[pick]].relevance <= 0.0 && pick > 0) --pick;
    } else {
      pick = rng.Below(remaining.size());
    }
    out.push_back(triangles[remaining[pick]]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return out;
}

}  // namespace tgin
