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

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "sliceprof/rng.hpp"

namespace sliceprof {

// Lloyd's K-means over the rows of a dense Eigen matrix. Everything here is
// templated on the scalar type of the input expression.

enum class KMeansInit { kKMeansPlusPlus, kForgy };

std::string_view to_string(KMeansInit init);
std::optional<KMeansInit> kmeans_init_from_string(std::string_view name);

struct KMeansOptions {
  KMeansInit init = KMeansInit::kKMeansPlusPlus;
  int max_iter = 300;
  double tol = 1e-9;
  std::uint64_t seed = 0;
};

template <typename Scalar>
struct KMeansResult {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  int k = 0;
  std::vector<int> assignment;  // point i belongs to cluster assignment[i]
  Matrix centroids;             // k x d, row j is the mean of cluster j
  Scalar sse = 0;
  int iterations = 0;
  std::vector<Scalar> sse_trace;  // objective after each Lloyd iteration
  bool converged = false;
  std::uint64_t seed = 0;
};

/// Sum over points of the squared Euclidean distance to the centroid of the
/// cluster the point is assigned to. Throws std::out_of_range for a cluster
/// index outside the centroid rows.
template <typename Points, typename Centroids>
typename Points::Scalar sse(const Eigen::MatrixBase<Points>& points, std::span<const int> assignment,
                            const Eigen::MatrixBase<Centroids>& centroids) {
  using Scalar = typename Points::Scalar;
  if (static_cast<Eigen::Index>(assignment.size()) != points.rows()) {
    throw std::invalid_argument("assignment length does not match the number of points");
  }
  if (points.rows() > 0 && centroids.cols() != points.cols()) {
    throw std::invalid_argument("centroid dimension does not match the points");
  }
  Scalar total = 0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    const int c = assignment[static_cast<std::size_t>(i)];
    if (c < 0 || c >= centroids.rows()) {
      throw std::out_of_range("cluster index " + std::to_string(c) + " out of range");
    }
    total += (points.row(i) - centroids.row(c)).squaredNorm();
  }
  return total;
}

/// Component-wise mean of the rows. Throws std::invalid_argument when empty.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 1, Eigen::Dynamic> centroid(
    const Eigen::MatrixBase<Derived>& cluster_points) {
  if (cluster_points.rows() == 0) throw std::invalid_argument("centroid of an empty cluster");
  return cluster_points.colwise().sum() / static_cast<typename Derived::Scalar>(cluster_points.rows());
}

/// Mean of every cluster 0..k-1 under `assignment`; rows of empty clusters
/// are left at zero.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> cluster_means(
    const Eigen::MatrixBase<Derived>& points, std::span<const int> assignment, int k) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> sums =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(k, points.cols());
  std::vector<Eigen::Index> counts(static_cast<std::size_t>(k), 0);
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    const int c = assignment[static_cast<std::size_t>(i)];
    if (c < 0 || c >= k) throw std::out_of_range("cluster index " + std::to_string(c) + " out of range");
    sums.row(c) += points.row(i);
    ++counts[static_cast<std::size_t>(c)];
  }
  for (int c = 0; c < k; ++c) {
    if (counts[static_cast<std::size_t>(c)] > 0) {
      sums.row(c) /= static_cast<Scalar>(counts[static_cast<std::size_t>(c)]);
    }
  }
  return sums;
}

/// Total within-cluster SSE of an arbitrary labelling about its own means.
template <typename Derived>
typename Derived::Scalar within_cluster_sse(const Eigen::MatrixBase<Derived>& points,
                                            std::span<const int> assignment, int k) {
  return sse(points, assignment, cluster_means(points, assignment, k));
}

namespace detail {

template <typename Derived>
using DenseOf = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Derived>
DenseOf<Derived> initial_centroids(const Eigen::MatrixBase<Derived>& points, int k, KMeansInit init,
                                   Rng& rng) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = points.rows();
  DenseOf<Derived> centers(k, points.cols());

  if (init == KMeansInit::kForgy) {
    // Partial Fisher-Yates: k distinct rows, uniformly.
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    for (int j = 0; j < k; ++j) {
      const auto r = j + static_cast<Eigen::Index>(rng.uniform_index(static_cast<std::uint64_t>(n - j)));
      std::swap(idx[static_cast<std::size_t>(j)], idx[static_cast<std::size_t>(r)]);
      centers.row(j) = points.row(idx[static_cast<std::size_t>(j)]);
    }
    return centers;
  }

  // k-means++: each further center drawn with probability proportional to
  // the squared distance to the nearest center chosen so far.
  centers.row(0) = points.row(static_cast<Eigen::Index>(rng.uniform_index(static_cast<std::uint64_t>(n))));
  std::vector<Scalar> d2(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) d2[static_cast<std::size_t>(i)] = (points.row(i) - centers.row(0)).squaredNorm();
  for (int j = 1; j < k; ++j) {
    Scalar total = 0;
    for (Scalar v : d2) total += v;
    Eigen::Index pick = 0;
    if (total > 0) {
      const Scalar target = static_cast<Scalar>(rng.uniform01()) * total;
      Scalar acc = 0;
      pick = -1;
      for (Eigen::Index i = 0; i < n; ++i) {
        acc += d2[static_cast<std::size_t>(i)];
        if (d2[static_cast<std::size_t>(i)] > 0 && acc > target) {
          pick = i;
          break;
        }
      }
      if (pick < 0) {  // rounding left target beyond the last partial sum
        for (Eigen::Index i = n - 1; i >= 0; --i) {
          if (d2[static_cast<std::size_t>(i)] > 0) {
            pick = i;
            break;
          }
        }
      }
    } else {
      pick = static_cast<Eigen::Index>(rng.uniform_index(static_cast<std::uint64_t>(n)));
    }
    centers.row(j) = points.row(pick);
    for (Eigen::Index i = 0; i < n; ++i) {
      d2[static_cast<std::size_t>(i)] =
          std::min(d2[static_cast<std::size_t>(i)], (points.row(i) - centers.row(j)).squaredNorm());
    }
  }
  return centers;
}

// Nearest centroid per point, ties to the lowest cluster index.
template <typename Derived, typename Centers>
void assign_nearest(const Eigen::MatrixBase<Derived>& points, const Centers& centers,
                    std::vector<int>& assignment, std::vector<typename Derived::Scalar>& dist2) {
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    int best = 0;
    auto best_d = (points.row(i) - centers.row(0)).squaredNorm();
    for (Eigen::Index c = 1; c < centers.rows(); ++c) {
      const auto d = (points.row(i) - centers.row(c)).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(c);
      }
    }
    assignment[static_cast<std::size_t>(i)] = best;
    dist2[static_cast<std::size_t>(i)] = best_d;
  }
}

// An emptied cluster takes over the point farthest from its own centroid,
// drawn from clusters that keep at least one member. Ties to the lowest
// point index.
template <typename Derived, typename Centers>
void reseed_empty_clusters(const Eigen::MatrixBase<Derived>& points, Centers& centers,
                           std::vector<int>& assignment,
                           std::vector<typename Derived::Scalar>& dist2) {
  const auto k = static_cast<std::size_t>(centers.rows());
  std::vector<Eigen::Index> counts(k, 0);
  for (int c : assignment) ++counts[static_cast<std::size_t>(c)];
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] > 0) continue;
    Eigen::Index far = -1;
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      const auto owner = static_cast<std::size_t>(assignment[static_cast<std::size_t>(i)]);
      if (counts[owner] < 2) continue;
      if (far < 0 || dist2[static_cast<std::size_t>(i)] > dist2[static_cast<std::size_t>(far)]) far = i;
    }
    const auto owner = static_cast<std::size_t>(assignment[static_cast<std::size_t>(far)]);
    --counts[owner];
    ++counts[c];
    assignment[static_cast<std::size_t>(far)] = static_cast<int>(c);
    dist2[static_cast<std::size_t>(far)] = 0;
    centers.row(static_cast<Eigen::Index>(c)) = points.row(far);
  }
}

}  // namespace detail

/// Lloyd iteration from a seeded k-means++ or Forgy start. Each iteration
/// assigns every point to its nearest centroid (ties to the lowest index),
/// reseeds emptied clusters, then moves every centroid to its cluster mean.
/// Stops when the assignment no longer changes, when the objective moves by
/// at most tol * max(1, sse), or after max_iter iterations.
template <typename Derived>
KMeansResult<typename Derived::Scalar> kmeans(const Eigen::MatrixBase<Derived>& points, int k,
                                              const KMeansOptions& options = {}) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = points.rows();
  if (k < 1 || k > n) {
    throw std::invalid_argument("k must be in [1, " + std::to_string(n) + "], got " + std::to_string(k));
  }
  if (options.max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
  if (!(options.tol >= 0)) throw std::invalid_argument("tol must be non-negative");
  if (!points.allFinite()) throw std::invalid_argument("k-means input contains NaN or infinite values");

  Rng rng(stream_seed(options.seed, 0x6b6d65616e73ULL));
  KMeansResult<Scalar> result;
  result.k = k;
  result.seed = options.seed;
  result.centroids = detail::initial_centroids(points, k, options.init, rng);

  std::vector<int> assignment(static_cast<std::size_t>(n), 0);
  std::vector<int> previous;
  std::vector<Scalar> dist2(static_cast<std::size_t>(n));
  for (int it = 1; it <= options.max_iter; ++it) {
    detail::assign_nearest(points, result.centroids, assignment, dist2);
    detail::reseed_empty_clusters(points, result.centroids, assignment, dist2);
    if (assignment == previous) {
      result.converged = true;
      break;
    }
    result.centroids = cluster_means(points, assignment, k);
    const Scalar objective = sse(points, std::span<const int>(assignment), result.centroids);
    result.sse_trace.push_back(objective);
    result.iterations = it;
    if (result.sse_trace.size() >= 2) {
      const Scalar before = result.sse_trace[result.sse_trace.size() - 2];
      if (std::abs(before - objective) <= static_cast<Scalar>(options.tol) * std::max<Scalar>(1, objective)) {
        result.converged = true;
        previous = assignment;
        break;
      }
    }
    previous = assignment;
  }
  result.assignment = std::move(previous);
  result.sse = result.sse_trace.back();
  return result;
}

/// Runs kmeans with seeds seed, seed + 1, ..., keeping the lowest objective
/// (ties to the earliest seed).
template <typename Derived>
KMeansResult<typename Derived::Scalar> kmeans_restarts(const Eigen::MatrixBase<Derived>& points, int k,
                                                       int restarts, KMeansOptions options = {}) {
  if (restarts < 1) throw std::invalid_argument("restarts must be at least 1");
  const std::uint64_t base = options.seed;
  KMeansResult<typename Derived::Scalar> best;
  for (int r = 0; r < restarts; ++r) {
    options.seed = base + static_cast<std::uint64_t>(r);
    auto candidate = kmeans(points, k, options);
    if (r == 0 || candidate.sse < best.sse) best = std::move(candidate);
  }
  return best;
}

}  // namespace sliceprof
