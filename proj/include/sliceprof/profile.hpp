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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sliceprof/features.hpp"
#include "sliceprof/trace.hpp"

namespace sliceprof {

/// Flat clustering of UEs: clusters[i] is the cluster of ue_ids[i].
struct ClusterAssignment {
  std::vector<std::int64_t> ue_ids;
  std::vector<int> clusters;
};

/// Per-cluster usage summary: the data-usage, service-distribution and
/// resource-usage views of one group of UEs.
struct ClusterProfile {
  int cluster_id = 0;
  std::int64_t member_count = 0;
  double uplink_kb_total = 0.0;
  double downlink_kb_total = 0.0;
  PerFamily<std::int64_t> session_counts{};
  PerFamily<double> service_distribution{};  // session-count shares; all zero without sessions
  PerFamily<ResourceSample> resource_usage{};
  ResourceSample resource_total;
  double homogeneity = 0.0;  // within-cluster SSE of z-scored feature rows
};

/// Builds one profile per non-empty cluster, ordered by cluster id. Usage
/// totals come from the filtered records of the trace; homogeneity from the
/// z-scored feature matrix. Throws std::invalid_argument when the assignment
/// misses a UE of the matrix or of the trace, or repeats a UE.
std::vector<ClusterProfile> profile_clusters(const Trace& trace, const ClusterAssignment& assignment,
                                             const FeatureMatrix& features);

enum class SliceClass { kEmbb, kMmtc, kUrllc, kBestEffort };

std::string_view to_string(SliceClass c);

/// Thresholds of the slice recommendation rules.
struct SliceRules {
  double iot_share_threshold = 0.5;         // iot-sensor share above which a group is mMTC
  double embb_downlink_kb_per_ue = 1.0e5;   // per-UE downlink over the horizon for eMBB
};

struct SliceTemplate {
  int cluster_id = 0;
  SliceClass slice_class = SliceClass::kBestEffort;
  std::optional<ServiceFamily> dominant_service;
  double dominant_share = 0.0;
  double uplink_kb_per_ue = 0.0;
  double downlink_kb_per_ue = 0.0;
  ResourceSample resource_totals;
  ResourceSample resources_per_ue;
  bool heuristic = false;  // set for the uav-delivery -> URLLC proxy
  std::string rationale;
};

/// Rule mapping, first match wins:
///   no sessions                                   -> best-effort
///   iot-sensor share > iot_share_threshold        -> mMTC
///   dominant video/social/messaging and per-UE
///     downlink > embb_downlink_kb_per_ue          -> eMBB
///   dominant uav-delivery                         -> URLLC (heuristic)
///   anything else                                 -> best-effort
/// The dominant family is the largest share, ties to the earlier family.
std::vector<SliceTemplate> recommend_slices(std::span<const ClusterProfile> profiles,
                                            const SliceRules& rules = {});

}  // namespace sliceprof
