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

#include <Eigen/Dense>

#include "sliceprof/trace.hpp"

namespace sliceprof {

/// Per-UE behavioral features: one row per UE, one named column per feature.
struct FeatureMatrix {
  std::vector<std::int64_t> ue_ids;
  std::vector<std::string> columns;
  Eigen::MatrixXd values;

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
  std::optional<Eigen::Index> column_index(std::string_view name) const;

  /// Throws ValidationError on NaN/inf, shape mismatch or duplicate names.
  void check() const;
};

/// The fixed ten-column schema produced by aggregate_features:
/// total_uplink_kb, total_downlink_kb, five per-family session counts
/// (sessions_<family>), ram_mb_total, cpu_units_total, storage_mb_total.
const std::vector<std::string>& feature_schema();

/// Column name of the per-family session count.
std::string session_column(ServiceFamily f);

/// Derived relevance target for feature selection (uplink + downlink).
inline constexpr std::string_view kTotalDataColumn = "total_data_kb";

/// Keeps only service-usage records: the union of ue_logs and iot_logs,
/// merged by time. Event logs and scenario settings contribute nothing.
std::vector<UeLogRecord> filter_records(const Trace& trace);

/// Sums usage and resources and counts sessions per family for every UE;
/// rows ordered by ascending user_equipment_id. Throws ValidationError for a
/// service name missing from the catalog.
FeatureMatrix aggregate_features(std::span<const UeLogRecord> records, const ServiceCatalog& catalog);

enum class Standardization { kNone, kZScore, kMinMax };

std::string_view to_string(Standardization s);
std::optional<Standardization> standardization_from_string(std::string_view name);

/// zscore: per-column mean 0 and population variance 1. minmax: per-column
/// range mapped onto [0, 1]. Constant columns become all-zero under both.
FeatureMatrix standardize(const FeatureMatrix& m, Standardization method);

/// Returns m with total_data_kb = total_uplink_kb + total_downlink_kb appended
/// (unchanged if already present).
FeatureMatrix with_total_data_column(const FeatureMatrix& m);

/// Copy restricted to the named columns, in the given order.
FeatureMatrix select_columns(const FeatureMatrix& m, std::span<const std::string> names);

/// CSV with header "ue_id,<columns...>"; values in shortest round-trip form.
std::string write_features_csv(const FeatureMatrix& m);
FeatureMatrix parse_features_csv(std::string_view text);

}  // namespace sliceprof
