// Copyright 2026 The sliceprof Authors.
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

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace sliceprof {

enum class Metric { kEuclidean, kCosine, kJaccard };

std::string_view to_string(Metric m);
std::optional<Metric> metric_from_string(std::string_view name);

template <typename A, typename B>
typename A::Scalar euclidean_distance(const Eigen::MatrixBase<A>& x, const Eigen::MatrixBase<B>& y) {
  return (x - y).norm();
}

/// 1 - cos(x, y), clamped to [0, 2]. Throws std::invalid_argument for a zero
/// vector.
template <typename A, typename B>
typename A::Scalar cosine_distance(const Eigen::MatrixBase<A>& x, const Eigen::MatrixBase<B>& y) {
  using Scalar = typename A::Scalar;
  const Scalar xx = x.squaredNorm();
  const Scalar yy = y.squaredNorm();
  if (xx == 0 || yy == 0) throw std::invalid_argument("cosine distance is undefined for a zero vector");
  // sqrt(xx * yy) rather than |x||y|: for x == y it reproduces x.x exactly.
  const Scalar d = Scalar(1) - x.dot(y) / std::sqrt(xx * yy);
  return std::clamp(d, Scalar(0), Scalar(2));
}

/// Generalized (weighted) Jaccard distance 1 - sum(min) / sum(max) over
/// non-negative vectors; two all-zero vectors are at distance 0. Throws
/// std::invalid_argument for a negative entry.
template <typename A, typename B>
typename A::Scalar jaccard_distance(const Eigen::MatrixBase<A>& x, const Eigen::MatrixBase<B>& y) {
  using Scalar = typename A::Scalar;
  if ((x.array() < 0).any() || (y.array() < 0).any()) {
    throw std::invalid_argument("generalized Jaccard distance needs non-negative entries");
  }
  const Scalar lo = x.cwiseMin(y).sum();
  const Scalar hi = x.cwiseMax(y).sum();
  return hi == 0 ? Scalar(0) : Scalar(1) - lo / hi;
}

/// Symmetric n x n dissimilarities between the rows of `points`, zero
/// diagonal. Each unordered pair is evaluated once and mirrored.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> pairwise_distances(
    const Eigen::MatrixBase<Derived>& points, Metric metric) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = points.rows();
  if (metric == Metric::kCosine) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (points.row(i).squaredNorm() == 0) {
        throw std::invalid_argument("cosine metric: row " + std::to_string(i) + " is all zeros");
      }
    }
  }
  if (metric == Metric::kJaccard && (points.array() < 0).any()) {
    throw std::invalid_argument("jaccard metric: negative entry (apply minmax standardization first)");
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> d =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      Scalar v = 0;
      switch (metric) {
        case Metric::kEuclidean: v = euclidean_distance(points.row(i), points.row(j)); break;
        case Metric::kCosine: v = cosine_distance(points.row(i), points.row(j)); break;
        case Metric::kJaccard: v = jaccard_distance(points.row(i), points.row(j)); break;
      }
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

struct DistanceMatrix {
  Metric metric = Metric::kEuclidean;
  Eigen::MatrixXd values;

  Eigen::Index n() const { return values.rows(); }
};

template <typename Derived>
DistanceMatrix distance_matrix(const Eigen::MatrixBase<Derived>& points, Metric metric) {
  return {metric, pairwise_distances(points, metric).template cast<double>()};
}

}  // namespace sliceprof
