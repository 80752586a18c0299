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

#include "sliceprof/features.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "sliceprof/error.hpp"
#include "sliceprof/format.hpp"

namespace sliceprof {
namespace {

enum SchemaColumn : Eigen::Index {
  kUplink = 0,
  kDownlink = 1,
  kFirstSessionCount = 2,
  kRam = 7,
  kCpu = 8,
  kStorage = 9,
  kSchemaWidth = 10,
};

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string cell_path(std::size_t line, std::size_t col) {
  return "line " + std::to_string(line) + ", column " + std::to_string(col + 1);
}

}  // namespace

std::optional<Eigen::Index> FeatureMatrix::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return static_cast<Eigen::Index>(i);
  }
  return std::nullopt;
}

void FeatureMatrix::check() const {
  if (values.rows() != static_cast<Eigen::Index>(ue_ids.size())) {
    throw ValidationError("feature matrix has " + std::to_string(values.rows()) + " rows but " +
                          std::to_string(ue_ids.size()) + " ue ids");
  }
  if (values.cols() != static_cast<Eigen::Index>(columns.size())) {
    throw ValidationError("feature matrix column count does not match its names");
  }
  if (std::set<std::string>(columns.begin(), columns.end()).size() != columns.size()) {
    throw ValidationError("feature matrix column names are not unique");
  }
  if (!values.allFinite()) throw ValidationError("feature matrix contains NaN or infinite values");
}

std::string session_column(ServiceFamily f) {
  std::string name = "sessions_" + std::string(to_string(f));
  std::replace(name.begin(), name.end(), '-', '_');
  return name;
}

const std::vector<std::string>& feature_schema() {
  static const std::vector<std::string> schema = [] {
    std::vector<std::string> s{"total_uplink_kb", "total_downlink_kb"};
    for (ServiceFamily f : kAllFamilies) s.push_back(session_column(f));
    s.insert(s.end(), {"ram_mb_total", "cpu_units_total", "storage_mb_total"});
    return s;
  }();
  return schema;
}

std::vector<UeLogRecord> filter_records(const Trace& trace) {
  std::vector<UeLogRecord> out;
  out.reserve(trace.ue_logs.size() + trace.iot_logs.size());
  std::merge(trace.ue_logs.begin(), trace.ue_logs.end(), trace.iot_logs.begin(), trace.iot_logs.end(),
             std::back_inserter(out),
             [](const UeLogRecord& a, const UeLogRecord& b) { return a.time < b.time; });
  return out;
}

FeatureMatrix aggregate_features(std::span<const UeLogRecord> records, const ServiceCatalog& catalog) {
  std::map<std::int64_t, Eigen::Index> row_of;
  for (const UeLogRecord& r : records) row_of.emplace(r.user_equipment_id, 0);
  FeatureMatrix m;
  m.columns = feature_schema();
  m.ue_ids.reserve(row_of.size());
  for (auto& [id, row] : row_of) {
    row = static_cast<Eigen::Index>(m.ue_ids.size());
    m.ue_ids.push_back(id);
  }
  m.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m.ue_ids.size()), kSchemaWidth);
  for (const UeLogRecord& r : records) {
    auto family = catalog.find(r.service_name);
    if (family == catalog.end()) {
      throw ValidationError("service '" + r.service_name + "' is not in the service catalog");
    }
    auto row = m.values.row(row_of.at(r.user_equipment_id));
    row(kUplink) += r.data_uplink_kb;
    row(kDownlink) += r.data_downlink_kb;
    row(kFirstSessionCount + static_cast<Eigen::Index>(index_of(family->second))) += 1.0;
    row(kRam) += r.resources.ram_mb;
    row(kCpu) += r.resources.cpu_units;
    row(kStorage) += r.resources.storage_mb;
  }
  return m;
}

std::string_view to_string(Standardization s) {
  switch (s) {
    case Standardization::kNone: return "none";
    case Standardization::kZScore: return "zscore";
    case Standardization::kMinMax: return "minmax";
  }
  return "none";
}

std::optional<Standardization> standardization_from_string(std::string_view name) {
  if (name == "none") return Standardization::kNone;
  if (name == "zscore") return Standardization::kZScore;
  if (name == "minmax") return Standardization::kMinMax;
  return std::nullopt;
}

FeatureMatrix standardize(const FeatureMatrix& m, Standardization method) {
  FeatureMatrix out = m;
  if (method == Standardization::kNone || m.rows() == 0) return out;
  const double n = static_cast<double>(m.rows());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    auto col = out.values.col(j);
    const double lo = col.minCoeff();
    const double hi = col.maxCoeff();
    if (lo == hi) {
      col.setZero();
      continue;
    }
    if (method == Standardization::kMinMax) {
      col = ((col.array() - lo) / (hi - lo)).matrix();
      continue;
    }
    const double mean = col.sum() / n;
    const double var = (col.array() - mean).square().sum() / n;
    if (!(var > 0.0)) {
      col.setZero();
      continue;
    }
    col = ((col.array() - mean) / std::sqrt(var)).matrix();
  }
  return out;
}

FeatureMatrix with_total_data_column(const FeatureMatrix& m) {
  if (m.column_index(kTotalDataColumn)) return m;
  const auto up = m.column_index("total_uplink_kb");
  const auto down = m.column_index("total_downlink_kb");
  if (!up || !down) {
    throw ValidationError("deriving total_data_kb needs total_uplink_kb and total_downlink_kb");
  }
  FeatureMatrix out = m;
  out.columns.emplace_back(kTotalDataColumn);
  out.values.conservativeResize(Eigen::NoChange, m.cols() + 1);
  out.values.col(m.cols()) = m.values.col(*up) + m.values.col(*down);
  return out;
}

FeatureMatrix select_columns(const FeatureMatrix& m, std::span<const std::string> names) {
  FeatureMatrix out;
  out.ue_ids = m.ue_ids;
  out.values.resize(m.rows(), static_cast<Eigen::Index>(names.size()));
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto j = m.column_index(names[i]);
    if (!j) throw ValidationError("unknown feature column '" + names[i] + "'");
    out.columns.push_back(names[i]);
    out.values.col(static_cast<Eigen::Index>(i)) = m.values.col(*j);
  }
  return out;
}

std::string write_features_csv(const FeatureMatrix& m) {
  m.check();
  std::string out = "ue_id";
  for (const auto& c : m.columns) out += "," + c;
  out += "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out += std::to_string(m.ue_ids[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < m.cols(); ++j) out += "," + format_double(m.values(i, j));
    out += "\n";
  }
  return out;
}

FeatureMatrix parse_features_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  for (std::string_view line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) throw ParseError("line 1", "missing header row");
  const auto header = split(lines[0], ',');
  if (header[0] != "ue_id") throw ParseError(cell_path(1, 0), "header must start with 'ue_id'");

  FeatureMatrix m;
  for (std::size_t j = 1; j < header.size(); ++j) m.columns.emplace_back(header[j]);
  const auto d = static_cast<Eigen::Index>(m.columns.size());
  m.values.resize(static_cast<Eigen::Index>(lines.size() - 1), d);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split(lines[i], ',');
    if (cells.size() != header.size()) {
      throw ParseError("line " + std::to_string(i + 1), "expected " + std::to_string(header.size()) + " cells");
    }
    std::int64_t id = 0;
    auto [p, ec] = std::from_chars(cells[0].data(), cells[0].data() + cells[0].size(), id);
    if (ec != std::errc() || p != cells[0].data() + cells[0].size()) {
      throw ParseError(cell_path(i + 1, 0), "invalid ue id");
    }
    m.ue_ids.push_back(id);
    for (std::size_t j = 1; j < cells.size(); ++j) {
      double v = 0.0;
      auto [q, ec2] = std::from_chars(cells[j].data(), cells[j].data() + cells[j].size(), v);
      if (ec2 != std::errc() || q != cells[j].data() + cells[j].size()) {
        throw ParseError(cell_path(i + 1, j), "invalid number '" + std::string(cells[j]) + "'");
      }
      m.values(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j - 1)) = v;
    }
  }
  m.check();
  return m;
}

}  // namespace sliceprof
