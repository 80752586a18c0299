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

#include "sliceprof/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "sliceprof/error.hpp"
#include "sliceprof/format.hpp"

namespace sliceprof {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json resources_json(const ResourceSample& s) {
  return ordered_json{{"ram_mb", s.ram_mb}, {"cpu_units", s.cpu_units}, {"storage_mb", s.storage_mb}};
}

template <typename T, typename Fn>
ordered_json per_family_json(const PerFamily<T>& values, Fn&& fn) {
  ordered_json j = ordered_json::object();
  for (ServiceFamily f : kAllFamilies) j[std::string(to_string(f))] = fn(values[index_of(f)]);
  return j;
}

std::string csv_name(ServiceFamily f) {
  std::string s(to_string(f));
  std::replace(s.begin(), s.end(), '-', '_');
  return s;
}

std::string escape_xml(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Fixed palette, cycled per series.
constexpr std::array<std::string_view, 6> kPalette = {"#4e79a7", "#f28e2b", "#e15759",
                                                      "#76b7b2", "#59a14f", "#edc948"};

struct BarChart {
  std::string title;
  std::string y_label;
  std::vector<std::string> groups;
  std::vector<std::string> series;
  std::vector<std::vector<double>> values;  // [group][series]
};

std::string render(const BarChart& chart) {
  constexpr double kWidth = 720, kHeight = 420;
  constexpr double kLeft = 80, kRight = 180, kTop = 50, kBottom = 60;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double y_max = 0.0;
  for (const auto& g : chart.values) {
    for (double v : g) y_max = std::max(y_max, v);
  }
  if (!(y_max > 0.0)) y_max = 1.0;

  const auto fx = [](double v) { return format_fixed(v, 2); };
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fx(kWidth) + "\" height=\"" + fx(kHeight) +
       "\" viewBox=\"0 0 " + fx(kWidth) + " " + fx(kHeight) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + fx(kWidth / 2) + "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
       escape_xml(chart.title) + "</text>\n";
  s += "<text x=\"18\" y=\"" + fx(kTop + plot_h / 2) + "\" transform=\"rotate(-90 18 " + fx(kTop + plot_h / 2) +
       ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + escape_xml(chart.y_label) +
       "</text>\n";

  for (int t = 0; t <= 4; ++t) {
    const double v = y_max * t / 4.0;
    const double y = kTop + plot_h - plot_h * t / 4.0;
    s += "<line x1=\"" + fx(kLeft) + "\" y1=\"" + fx(y) + "\" x2=\"" + fx(kLeft + plot_w) + "\" y2=\"" + fx(y) +
         "\" stroke=\"#dddddd\"/>\n";
    s += "<text x=\"" + fx(kLeft - 6) + "\" y=\"" + fx(y + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" + format_double(v) + "</text>\n";
  }
  s += "<line x1=\"" + fx(kLeft) + "\" y1=\"" + fx(kTop + plot_h) + "\" x2=\"" + fx(kLeft + plot_w) + "\" y2=\"" +
       fx(kTop + plot_h) + "\" stroke=\"black\"/>\n";

  const double group_w = chart.groups.empty() ? plot_w : plot_w / static_cast<double>(chart.groups.size());
  const double bar_w = group_w * 0.8 / static_cast<double>(std::max<std::size_t>(1, chart.series.size()));
  for (std::size_t g = 0; g < chart.groups.size(); ++g) {
    const double gx = kLeft + group_w * static_cast<double>(g) + group_w * 0.1;
    for (std::size_t k = 0; k < chart.series.size(); ++k) {
      const double v = chart.values[g][k];
      const double h = plot_h * v / y_max;
      s += "<rect x=\"" + fx(gx + bar_w * static_cast<double>(k)) + "\" y=\"" + fx(kTop + plot_h - h) +
           "\" width=\"" + fx(bar_w) + "\" height=\"" + fx(h) + "\" fill=\"" +
           std::string(kPalette[k % kPalette.size()]) + "\"><title>" + escape_xml(chart.groups[g]) + " " +
           escape_xml(chart.series[k]) + ": " + format_double(v) + "</title></rect>\n";
    }
    s += "<text x=\"" + fx(kLeft + group_w * (static_cast<double>(g) + 0.5)) + "\" y=\"" +
         fx(kTop + plot_h + 18) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
         escape_xml(chart.groups[g]) + "</text>\n";
  }
  for (std::size_t k = 0; k < chart.series.size(); ++k) {
    const double y = kTop + 16.0 * static_cast<double>(k);
    s += "<rect x=\"" + fx(kWidth - kRight + 16) + "\" y=\"" + fx(y) + "\" width=\"12\" height=\"12\" fill=\"" +
         std::string(kPalette[k % kPalette.size()]) + "\"/>\n";
    s += "<text x=\"" + fx(kWidth - kRight + 34) + "\" y=\"" + fx(y + 10) +
         "\" font-family=\"sans-serif\" font-size=\"11\">" + escape_xml(chart.series[k]) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

std::vector<std::string> group_labels(std::span<const ClusterProfile> profiles) {
  std::vector<std::string> out;
  for (const auto& p : profiles) out.push_back("group " + std::to_string(p.cluster_id));
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

std::optional<ReportFormat> report_format_from_string(std::string_view name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "svg") return ReportFormat::kSvg;
  return std::nullopt;
}

namespace {

ordered_json or_null(const std::string& s) { return s.empty() ? ordered_json(nullptr) : ordered_json(s); }

}  // namespace

std::string report_json(const Report& report) {
  ordered_json run;
  run["method"] = report.run.method;
  run["k"] = report.run.k;
  run["metric"] = report.run.metric;
  run["linkage"] = or_null(report.run.linkage);
  run["standardization"] = report.run.standardization;
  run["init"] = or_null(report.run.init);
  run["restarts"] = report.run.restarts;
  run["seed"] = report.run.seed;
  run["feature_columns"] = report.run.feature_columns;
  run["within_cluster_sse"] =
      report.run.within_cluster_sse ? ordered_json(*report.run.within_cluster_sse) : ordered_json(nullptr);
  run["units"] = ordered_json{{"data", "KB"}, {"ram", "MB"}, {"cpu", "normalized CPU share"}, {"storage", "MB"}};
  run["notes"] = report.run.notes;

  ordered_json rules;
  rules["iot_share_threshold"] = report.rules.iot_share_threshold;
  rules["embb_downlink_kb_per_ue"] = report.rules.embb_downlink_kb_per_ue;
  rules["urllc_rule"] = "heuristic: dominant uav-delivery family maps to URLLC; no latency signal is available";
  rules["service_distribution_basis"] = "session counts";

  ordered_json profiles = ordered_json::array();
  for (const auto& p : report.profiles) {
    ordered_json j;
    j["cluster_id"] = p.cluster_id;
    j["member_count"] = p.member_count;
    j["uplink_kb_total"] = p.uplink_kb_total;
    j["downlink_kb_total"] = p.downlink_kb_total;
    j["session_counts"] = per_family_json(p.session_counts, [](std::int64_t v) { return ordered_json(v); });
    j["service_distribution"] = per_family_json(p.service_distribution, [](double v) { return ordered_json(v); });
    j["resource_usage"] = per_family_json(p.resource_usage, resources_json);
    j["resource_total"] = resources_json(p.resource_total);
    j["homogeneity"] = p.homogeneity;
    profiles.push_back(std::move(j));
  }

  ordered_json templates = ordered_json::array();
  for (const auto& t : report.templates) {
    ordered_json j;
    j["cluster_id"] = t.cluster_id;
    j["slice_class"] = std::string(to_string(t.slice_class));
    j["dominant_service"] =
        t.dominant_service ? ordered_json(std::string(to_string(*t.dominant_service))) : ordered_json(nullptr);
    j["dominant_share"] = t.dominant_share;
    j["uplink_kb_per_ue"] = t.uplink_kb_per_ue;
    j["downlink_kb_per_ue"] = t.downlink_kb_per_ue;
    j["resource_totals"] = resources_json(t.resource_totals);
    j["resources_per_ue"] = resources_json(t.resources_per_ue);
    j["heuristic"] = t.heuristic;
    j["rationale"] = t.rationale;
    templates.push_back(std::move(j));
  }

  ordered_json doc;
  doc["run"] = std::move(run);
  doc["slice_rules"] = std::move(rules);
  doc["profiles"] = std::move(profiles);
  doc["templates"] = std::move(templates);
  if (!report.homogeneity_by_k.empty()) {
    ordered_json h = ordered_json::array();
    for (const auto& point : report.homogeneity_by_k) {
      h.push_back(ordered_json{{"k", point.k}, {"within_cluster_sse", point.within_cluster_sse}});
    }
    doc["homogeneity_by_k"] = std::move(h);
  }
  return doc.dump(2) + "\n";
}

std::string data_usage_csv(std::span<const ClusterProfile> profiles) {
  std::string out = "cluster_id,member_count,uplink_kb_total,downlink_kb_total\n";
  for (const auto& p : profiles) {
    out += std::to_string(p.cluster_id) + "," + std::to_string(p.member_count) + "," +
           format_double(p.uplink_kb_total) + "," + format_double(p.downlink_kb_total) + "\n";
  }
  return out;
}

std::string service_distribution_csv(std::span<const ClusterProfile> profiles) {
  std::string out = "cluster_id";
  for (ServiceFamily f : kAllFamilies) out += "," + csv_name(f) + "_share";
  for (ServiceFamily f : kAllFamilies) out += "," + csv_name(f) + "_sessions";
  out += "\n";
  for (const auto& p : profiles) {
    out += std::to_string(p.cluster_id);
    for (double v : p.service_distribution) out += "," + format_double(v);
    for (std::int64_t n : p.session_counts) out += "," + std::to_string(n);
    out += "\n";
  }
  return out;
}

std::string resource_usage_csv(std::span<const ClusterProfile> profiles) {
  std::string out = "cluster_id,ram_mb_total,cpu_units_total,storage_mb_total";
  for (ServiceFamily f : kAllFamilies) {
    const std::string n = csv_name(f);
    out += "," + n + "_ram_mb," + n + "_cpu_units," + n + "_storage_mb";
  }
  out += "\n";
  for (const auto& p : profiles) {
    out += std::to_string(p.cluster_id) + "," + format_double(p.resource_total.ram_mb) + "," +
           format_double(p.resource_total.cpu_units) + "," + format_double(p.resource_total.storage_mb);
    for (const ResourceSample& r : p.resource_usage) {
      out += "," + format_double(r.ram_mb) + "," + format_double(r.cpu_units) + "," + format_double(r.storage_mb);
    }
    out += "\n";
  }
  return out;
}

std::string data_usage_svg(std::span<const ClusterProfile> profiles) {
  BarChart c{"Data usage per group", "KB", group_labels(profiles), {"uplink", "downlink"}, {}};
  for (const auto& p : profiles) c.values.push_back({p.uplink_kb_total, p.downlink_kb_total});
  return render(c);
}

std::string service_distribution_svg(std::span<const ClusterProfile> profiles) {
  BarChart c{"Service distribution per group", "share of sessions", group_labels(profiles), {}, {}};
  for (ServiceFamily f : kAllFamilies) c.series.emplace_back(to_string(f));
  for (const auto& p : profiles) c.values.emplace_back(p.service_distribution.begin(), p.service_distribution.end());
  return render(c);
}

std::string resource_usage_svg(std::span<const ClusterProfile> profiles) {
  BarChart c{"Edge resource usage per group", "total (MB / CPU share)", group_labels(profiles),
             {"RAM (MB)", "CPU (share)", "storage (MB)"}, {}};
  for (const auto& p : profiles) {
    c.values.push_back({p.resource_total.ram_mb, p.resource_total.cpu_units, p.resource_total.storage_mb});
  }
  return render(c);
}

std::vector<std::filesystem::path> emit_report(const Report& report, std::span<const ReportFormat> formats,
                                               const std::filesystem::path& out_dir) {
  if (report.profiles.empty()) throw std::invalid_argument("refusing to emit a report without cluster profiles");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create '" + out_dir.string() + "': " + ec.message());

  std::vector<std::filesystem::path> written;
  const auto put = [&](const char* name, const std::string& content) {
    write_file(out_dir / name, content);
    written.push_back(out_dir / name);
  };
  for (ReportFormat f : formats) {
    switch (f) {
      case ReportFormat::kJson:
        put("report.json", report_json(report));
        break;
      case ReportFormat::kCsv:
        put("data_usage.csv", data_usage_csv(report.profiles));
        put("service_distribution.csv", service_distribution_csv(report.profiles));
        put("resource_usage.csv", resource_usage_csv(report.profiles));
        break;
      case ReportFormat::kSvg:
        put("data_usage.svg", data_usage_svg(report.profiles));
        put("service_distribution.svg", service_distribution_svg(report.profiles));
        put("resource_usage.svg", resource_usage_svg(report.profiles));
        break;
    }
  }
  return written;
}

}  // namespace sliceprof
