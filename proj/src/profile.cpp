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

#include "sliceprof/profile.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "sliceprof/kmeans.hpp"

namespace sliceprof {

std::string_view to_string(SliceClass c) {
  switch (c) {
    case SliceClass::kEmbb: return "eMBB";
    case SliceClass::kMmtc: return "mMTC";
    case SliceClass::kUrllc: return "URLLC";
    case SliceClass::kBestEffort: return "best-effort";
  }
  return "best-effort";
}

std::vector<ClusterProfile> profile_clusters(const Trace& trace, const ClusterAssignment& assignment,
                                             const FeatureMatrix& features) {
  if (assignment.ue_ids.size() != assignment.clusters.size()) {
    throw std::invalid_argument("assignment ue_ids and clusters differ in length");
  }
  std::map<std::int64_t, int> cluster_of;
  for (std::size_t i = 0; i < assignment.ue_ids.size(); ++i) {
    if (assignment.clusters[i] < 0) throw std::invalid_argument("negative cluster label");
    if (!cluster_of.emplace(assignment.ue_ids[i], assignment.clusters[i]).second) {
      throw std::invalid_argument("ue " + std::to_string(assignment.ue_ids[i]) + " assigned twice");
    }
  }
  for (std::int64_t id : features.ue_ids) {
    if (!cluster_of.contains(id)) {
      throw std::invalid_argument("assignment does not cover ue " + std::to_string(id) + " of the feature matrix");
    }
  }

  std::map<int, ClusterProfile> by_cluster;
  for (const auto& [ue, c] : cluster_of) {
    ClusterProfile& p = by_cluster[c];
    p.cluster_id = c;
    ++p.member_count;
  }

  for (const UeLogRecord& r : filter_records(trace)) {
    auto member = cluster_of.find(r.user_equipment_id);
    if (member == cluster_of.end()) {
      throw std::invalid_argument("trace ue " + std::to_string(r.user_equipment_id) + " is not in the assignment");
    }
    auto family = trace.scenario_settings.service_catalog.find(r.service_name);
    if (family == trace.scenario_settings.service_catalog.end()) {
      throw std::invalid_argument("service '" + r.service_name + "' is not in the service catalog");
    }
    ClusterProfile& p = by_cluster.at(member->second);
    const std::size_t f = index_of(family->second);
    p.uplink_kb_total += r.data_uplink_kb;
    p.downlink_kb_total += r.data_downlink_kb;
    ++p.session_counts[f];
    p.resource_usage[f] += r.resources;
    p.resource_total += r.resources;
  }

  // Homogeneity over the z-scored rows of each cluster.
  const FeatureMatrix z = standardize(features, Standardization::kZScore);
  std::map<int, std::vector<Eigen::Index>> rows_of;
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    rows_of[cluster_of.at(z.ue_ids[static_cast<std::size_t>(i)])].push_back(i);
  }
  for (const auto& [c, rows] : rows_of) {
    const Eigen::MatrixXd members = z.values(rows, Eigen::all);
    const std::vector<int> same(rows.size(), 0);
    by_cluster.at(c).homogeneity = within_cluster_sse(members, std::span<const int>(same), 1);
  }

  std::vector<ClusterProfile> out;
  out.reserve(by_cluster.size());
  for (auto& [c, p] : by_cluster) {
    std::int64_t sessions = 0;
    for (std::int64_t n : p.session_counts) sessions += n;
    if (sessions > 0) {
      for (std::size_t f = 0; f < kNumFamilies; ++f) {
        p.service_distribution[f] = static_cast<double>(p.session_counts[f]) / static_cast<double>(sessions);
      }
    }
    out.push_back(p);
  }
  return out;
}

std::vector<SliceTemplate> recommend_slices(std::span<const ClusterProfile> profiles, const SliceRules& rules) {
  std::vector<SliceTemplate> out;
  out.reserve(profiles.size());
  for (const ClusterProfile& p : profiles) {
    SliceTemplate t;
    t.cluster_id = p.cluster_id;
    const double members = static_cast<double>(std::max<std::int64_t>(1, p.member_count));
    t.uplink_kb_per_ue = p.uplink_kb_total / members;
    t.downlink_kb_per_ue = p.downlink_kb_total / members;
    t.resource_totals = p.resource_total;
    t.resources_per_ue = {p.resource_total.ram_mb / members, p.resource_total.cpu_units / members,
                          p.resource_total.storage_mb / members};

    std::int64_t sessions = 0;
    for (std::int64_t n : p.session_counts) sessions += n;
    if (sessions == 0) {
      t.slice_class = SliceClass::kBestEffort;
      t.rationale = "no service sessions";
      out.push_back(std::move(t));
      continue;
    }
    std::size_t dominant = 0;
    for (std::size_t f = 1; f < kNumFamilies; ++f) {
      if (p.service_distribution[f] > p.service_distribution[dominant]) dominant = f;
    }
    const auto family = static_cast<ServiceFamily>(dominant);
    t.dominant_service = family;
    t.dominant_share = p.service_distribution[dominant];

    const double iot_share = p.service_distribution[index_of(ServiceFamily::kIotSensor)];
    const bool broadband = family == ServiceFamily::kVideoStreaming ||
                           family == ServiceFamily::kSocialNetwork ||
                           family == ServiceFamily::kInstantMessaging;
    if (iot_share > rules.iot_share_threshold) {
      t.slice_class = SliceClass::kMmtc;
      t.rationale = "iot-sensor share above threshold";
    } else if (broadband && t.downlink_kb_per_ue > rules.embb_downlink_kb_per_ue) {
      t.slice_class = SliceClass::kEmbb;
      t.rationale = "broadband-dominated with per-UE downlink above threshold";
    } else if (family == ServiceFamily::kUavDelivery) {
      t.slice_class = SliceClass::kUrllc;
      t.heuristic = true;
      t.rationale = "uav-delivery dominated; URLLC assigned heuristically (no latency signal)";
    } else {
      t.slice_class = SliceClass::kBestEffort;
      t.rationale = "no rule matched";
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace sliceprof
