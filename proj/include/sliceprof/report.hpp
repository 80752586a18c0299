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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sliceprof/profile.hpp"

namespace sliceprof {

/// How the clustering behind a report was produced.
struct RunMetadata {
  std::string method;  // "kmeans" or "hier"
  int k = 0;
  std::string metric;
  std::string linkage;
  std::string standardization;
  std::string init;
  int restarts = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> feature_columns;
  std::optional<double> within_cluster_sse;
  std::vector<std::string> notes;
};

struct HomogeneityPoint {
  int k = 0;
  double within_cluster_sse = 0.0;
};

struct Report {
  RunMetadata run;
  SliceRules rules;
  std::vector<ClusterProfile> profiles;
  std::vector<SliceTemplate> templates;
  std::vector<HomogeneityPoint> homogeneity_by_k;  // optional section
};

enum class ReportFormat { kJson, kCsv, kSvg };

std::optional<ReportFormat> report_format_from_string(std::string_view name);

std::string report_json(const Report& report);

// One table per panel, one row per cluster.
std::string data_usage_csv(std::span<const ClusterProfile> profiles);
std::string service_distribution_csv(std::span<const ClusterProfile> profiles);
std::string resource_usage_csv(std::span<const ClusterProfile> profiles);

// Grouped bar charts, one per panel. Output bytes depend only on the input.
std::string data_usage_svg(std::span<const ClusterProfile> profiles);
std::string service_distribution_svg(std::span<const ClusterProfile> profiles);
std::string resource_usage_svg(std::span<const ClusterProfile> profiles);

/// Writes the requested formats into `out_dir` (created if needed):
/// report.json; data_usage.csv, service_distribution.csv,
/// resource_usage.csv; and the matching .svg files. Returns the paths
/// written. Throws std::invalid_argument for a report without profiles and
/// IoError when a file cannot be written.
std::vector<std::filesystem::path> emit_report(const Report& report, std::span<const ReportFormat> formats,
                                               const std::filesystem::path& out_dir);

}  // namespace sliceprof
