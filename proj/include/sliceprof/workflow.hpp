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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "sliceprof/distance.hpp"
#include "sliceprof/features.hpp"
#include "sliceprof/hierarchical.hpp"
#include "sliceprof/kmeans.hpp"
#include "sliceprof/profile.hpp"
#include "sliceprof/report.hpp"
#include "sliceprof/trace.hpp"

namespace sliceprof {

// Stage functions shared by the command-line driver and the tests. Each
// stage consumes and produces values that have a file representation.

enum class ClusterMethod { kKMeans, kHierarchical };

std::string_view to_string(ClusterMethod m);
std::optional<ClusterMethod> cluster_method_from_string(std::string_view name);

struct ClusterConfig {
  ClusterMethod method = ClusterMethod::kKMeans;
  int k = 2;
  Metric metric = Metric::kEuclidean;
  Linkage linkage = Linkage::kAverage;
  std::optional<Standardization> standardization;  // unset: method default
  KMeansInit init = KMeansInit::kKMeansPlusPlus;
  int restarts = 10;
  int max_iter = 300;
  double tol = 1e-9;
  std::uint64_t seed = 0;
};

/// Result of the clustering stage, as serialized to the assignment document.
struct ClusteringDocument {
  ClusterMethod method = ClusterMethod::kKMeans;
  int k = 0;
  std::string metric;
  std::string linkage;
  Standardization standardization = Standardization::kZScore;
  std::string init;
  int restarts = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> columns;
  ClusterAssignment assignment;
  Eigen::MatrixXd centroids;  // k x d, in the standardized feature space
  double within_cluster_sse = 0.0;
  int iterations = 0;               // k-means only
  std::vector<double> sse_trace;    // k-means only
  std::optional<Dendrogram> dendrogram;  // hierarchical only
  std::vector<std::string> notes;
};

/// filter_records + aggregate_features with the trace's own catalog.
FeatureMatrix featurize_trace(const Trace& trace);

struct FeatureSelection {
  std::vector<std::string> selected;  // in selection order
  FeatureMatrix matrix;               // restricted to `selected`
};

/// mRMR over `m`; the target total_data_kb is derived when absent.
FeatureSelection select_features(const FeatureMatrix& m, const std::string& target, int m_out, int bins);

/// The standardization a config resolves to, and a note when it was forced.
/// Jaccard always runs on minmax-scaled features; otherwise the default is
/// zscore.
std::pair<Standardization, std::optional<std::string>> resolve_standardization(const ClusterConfig& config);

ClusteringDocument cluster_features(const FeatureMatrix& features, const ClusterConfig& config);

std::string write_clustering(const ClusteringDocument& doc);
ClusteringDocument parse_clustering(std::string_view text);

std::string write_homogeneity(const std::vector<HomogeneityPoint>& points);
std::vector<HomogeneityPoint> parse_homogeneity(std::string_view text);

Report build_report(const Trace& trace, const FeatureMatrix& features, const ClusteringDocument& clustering,
                    const SliceRules& rules, std::vector<HomogeneityPoint> homogeneity = {});

}  // namespace sliceprof
