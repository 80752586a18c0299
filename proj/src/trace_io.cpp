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

#include "sliceprof/trace_io.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sliceprof/error.hpp"

namespace sliceprof {
namespace {

using nlohmann::json;

std::string child(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string element(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

// Typed accessors over a JSON object that report failures by path.
class Reader {
 public:
  Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ParseError(path_.empty() ? "$" : path_, "expected an object");
  }

  bool has(std::string_view key) const { return node_.contains(key); }

  const json& at(std::string_view key) const {
    auto it = node_.find(key);
    if (it == node_.end()) throw ParseError(child(path_, key), "missing required key");
    return *it;
  }

  double number(std::string_view key) const {
    const json& v = at(key);
    if (!v.is_number()) throw ParseError(child(path_, key), "expected a number");
    return v.get<double>();
  }

  double number_or(std::string_view key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  std::int64_t integer(std::string_view key) const {
    const json& v = at(key);
    if (!v.is_number_integer()) throw ParseError(child(path_, key), "expected an integer");
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
      throw ParseError(child(path_, key), "integer out of range");
    }
    return v.get<std::int64_t>();
  }

  std::uint64_t unsigned_integer(std::string_view key) const {
    const json& v = at(key);
    if (!v.is_number_unsigned()) {
      throw ParseError(child(path_, key), "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }

  std::string text(std::string_view key) const {
    const json& v = at(key);
    if (!v.is_string()) throw ParseError(child(path_, key), "expected a string");
    return v.get<std::string>();
  }

  const json& array(std::string_view key) const {
    const json& v = at(key);
    if (!v.is_array()) throw ParseError(child(path_, key), "expected an array");
    return v;
  }

  Reader object(std::string_view key) const { return Reader(at(key), child(path_, key)); }

  const std::string& path() const { return path_; }
  const json& node() const { return node_; }

 private:
  const json& node_;
  std::string path_;
};

GeoPosition read_position(const Reader& r) {
  GeoPosition p{r.number("latitude"), r.number("longitude")};
  if (!is_valid(p)) {
    throw ValidationError("coordinate out of range at '" + r.path() + "': (" +
                          std::to_string(p.latitude) + ", " + std::to_string(p.longitude) + ")");
  }
  return p;
}

void write_position_into(json& j, const GeoPosition& p) {
  j["latitude"] = p.latitude;
  j["longitude"] = p.longitude;
}

Enodeb read_enodeb(const Reader& r, std::optional<std::int64_t> default_ta) {
  Enodeb e;
  e.enb_id = r.has("enb_id") || !default_ta ? r.integer("enb_id") : 0;
  e.position = read_position(r);
  e.radius_m = r.number("radius");
  e.tracking_area_id =
      r.has("tracking_area_id") || !default_ta ? r.integer("tracking_area_id") : *default_ta;
  return e;
}

json write_enodeb(const Enodeb& e) {
  json j;
  j["enb_id"] = e.enb_id;
  write_position_into(j, e.position);
  j["radius"] = e.radius_m;
  j["tracking_area_id"] = e.tracking_area_id;
  return j;
}

ResourceSample read_resources(const Reader& r) {
  return {r.number("ram_mb"), r.number("cpu_units"), r.number("storage_mb")};
}

json write_resources(const ResourceSample& s) {
  return json{{"ram_mb", s.ram_mb}, {"cpu_units", s.cpu_units}, {"storage_mb", s.storage_mb}};
}

UeLogRecord read_record(const Reader& r) {
  UeLogRecord rec;
  rec.time = r.number("time");
  rec.user_equipment_id = r.integer("user_equipment_id");
  rec.service_name = r.text("service_name");
  if (r.has("data_uplink_kb") || r.has("data_downlink_kb")) {
    rec.data_uplink_kb = r.number("data_uplink_kb");
    rec.data_downlink_kb = r.number("data_downlink_kb");
  } else if (r.has("datasource")) {
    rec.data_uplink_kb = 0.0;
    rec.data_downlink_kb = r.number("datasource");
  } else {
    throw ParseError(child(r.path(), "data_downlink_kb"), "missing required key");
  }
  rec.position = read_position(r);
  rec.tracking_area_id = r.integer("tracking_area_id");
  rec.previous_tracking_area = r.integer("previous_tracking_area");
  rec.current_enodeb = read_enodeb(r.object("current_enodeb"), rec.tracking_area_id);
  rec.previous_enodeb = read_enodeb(r.object("previous_enodeb"), rec.previous_tracking_area);
  rec.edge_cloud_id = r.has("edge_cloud_id") ? r.integer("edge_cloud_id") : 0;
  if (r.has("resources")) rec.resources = read_resources(r.object("resources"));
  return rec;
}

json write_record(const UeLogRecord& rec) {
  json j;
  j["time"] = rec.time;
  j["user_equipment_id"] = rec.user_equipment_id;
  j["service_name"] = rec.service_name;
  j["data_uplink_kb"] = rec.data_uplink_kb;
  j["data_downlink_kb"] = rec.data_downlink_kb;
  write_position_into(j, rec.position);
  j["current_enodeb"] = write_enodeb(rec.current_enodeb);
  j["previous_enodeb"] = write_enodeb(rec.previous_enodeb);
  j["tracking_area_id"] = rec.tracking_area_id;
  j["previous_tracking_area"] = rec.previous_tracking_area;
  j["edge_cloud_id"] = rec.edge_cloud_id;
  j["resources"] = write_resources(rec.resources);
  return j;
}

EventRecord read_event(const Reader& r) {
  return {r.text("event_type"), r.number("time"), r.integer("user_equipment_id")};
}

json write_event(const EventRecord& e) {
  return json{{"event_type", e.event_type}, {"time", e.time}, {"user_equipment_id", e.user_equipment_id}};
}

template <typename T, typename Fn>
PerFamily<T> read_per_family(const Reader& r, Fn&& read_value) {
  PerFamily<T> out{};
  for (const auto& [key, value] : r.node().items()) {
    auto family = family_from_string(key);
    if (!family) throw ParseError(child(r.path(), key), "unknown service family");
    out[index_of(*family)] = read_value(value, child(r.path(), key));
  }
  return out;
}

template <typename T, typename Fn>
json write_per_family(const PerFamily<T>& values, Fn&& write_value) {
  json j = json::object();
  for (ServiceFamily f : kAllFamilies) j[std::string(to_string(f))] = write_value(values[index_of(f)]);
  return j;
}

UserProfile read_profile(const Reader& r) {
  UserProfile p;
  p.profile_name = r.text("profile_name");
  p.count = r.integer("count");
  const std::string mode = r.text("mobility_mode");
  auto m = mobility_from_string(mode);
  if (!m) throw ParseError(child(r.path(), "mobility_mode"), "unknown mobility mode '" + mode + "'");
  p.mobility_mode = *m;
  p.session_rates = read_per_family<double>(r.object("session_rates"), [](const json& v, const std::string& path) {
    if (!v.is_number()) throw ParseError(path, "expected a number");
    return v.get<double>();
  });
  if (r.has("session_size_kb")) {
    p.session_size_kb = read_per_family<SessionSize>(
        r.object("session_size_kb"), [](const json& v, const std::string& path) {
          Reader s(v, path);
          return SessionSize{s.number("uplink_kb"), s.number("downlink_kb")};
        });
  }
  if (r.has("resource_draw")) {
    p.resource_draw = read_per_family<ResourceSample>(
        r.object("resource_draw"),
        [](const json& v, const std::string& path) { return read_resources(Reader(v, path)); });
  }
  return p;
}

json write_profile(const UserProfile& p) {
  json j;
  j["profile_name"] = p.profile_name;
  j["count"] = p.count;
  j["mobility_mode"] = std::string(to_string(p.mobility_mode));
  j["session_rates"] = write_per_family(p.session_rates, [](double v) { return json(v); });
  j["session_size_kb"] = write_per_family(p.session_size_kb, [](const SessionSize& s) {
    return json{{"uplink_kb", s.uplink_kb}, {"downlink_kb", s.downlink_kb}};
  });
  j["resource_draw"] = write_per_family(p.resource_draw, write_resources);
  return j;
}

ScenarioSettings read_settings(const Reader& r) {
  ScenarioSettings s;
  s.area_center = read_position(r.object("area_center"));
  s.area_radius_m = r.number("area_radius_m");
  const json& enbs = r.array("enodebs");
  for (std::size_t i = 0; i < enbs.size(); ++i) {
    s.enodebs.push_back(read_enodeb(Reader(enbs[i], element(child(r.path(), "enodebs"), i)), std::nullopt));
  }
  const Reader catalog = r.object("service_catalog");
  for (const auto& [name, family] : catalog.node().items()) {
    if (!family.is_string()) throw ParseError(child(catalog.path(), name), "expected a family name");
    auto f = family_from_string(family.get<std::string>());
    if (!f) throw ParseError(child(catalog.path(), name), "unknown service family");
    s.service_catalog.emplace(name, *f);
  }
  const json& profiles = r.array("user_profiles");
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    s.user_profiles.push_back(
        read_profile(Reader(profiles[i], element(child(r.path(), "user_profiles"), i))));
  }
  s.horizon_s = r.number("horizon_s");
  s.seed = r.unsigned_integer("seed");
  return s;
}

json write_settings(const ScenarioSettings& s) {
  json j;
  j["area_center"] = json{{"latitude", s.area_center.latitude}, {"longitude", s.area_center.longitude}};
  j["area_radius_m"] = s.area_radius_m;
  j["enodebs"] = json::array();
  for (const auto& e : s.enodebs) j["enodebs"].push_back(write_enodeb(e));
  j["service_catalog"] = json::object();
  for (const auto& [name, f] : s.service_catalog) j["service_catalog"][name] = std::string(to_string(f));
  j["user_profiles"] = json::array();
  for (const auto& p : s.user_profiles) j["user_profiles"].push_back(write_profile(p));
  j["horizon_s"] = s.horizon_s;
  j["seed"] = s.seed;
  return j;
}

json parse_document(std::string_view document) {
  try {
    return json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw ParseError("$", e.what());
  }
}

template <typename Record>
void sort_by_time(std::vector<Record>& records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const Record& a, const Record& b) { return a.time < b.time; });
}

// --- validation -----------------------------------------------------------

class Checker {
 public:
  explicit Checker(ValidationReport& report) : report_(report) {}

  void fail(std::string path, std::optional<std::size_t> index, std::string message) {
    report_.violations.push_back({std::move(path), index, std::move(message)});
  }

  void non_negative(double v, const std::string& path, std::optional<std::size_t> index) {
    if (!std::isfinite(v)) {
      fail(path, index, "value is not finite");
    } else if (v < 0.0) {
      fail(path, index, "value is negative");
    }
  }

  void position(const GeoPosition& p, const std::string& path, std::optional<std::size_t> index) {
    if (!is_valid(p)) fail(path, index, "coordinate not finite or out of range");
  }

  void enodeb(const Enodeb& e, const std::string& path, std::optional<std::size_t> index) {
    if (e.enb_id < 0) fail(child(path, "enb_id"), index, "negative id");
    position(e.position, path, index);
    if (!(std::isfinite(e.radius_m) && e.radius_m > 0.0)) {
      fail(child(path, "radius"), index, "radius must be positive");
    }
    if (e.tracking_area_id < 0) fail(child(path, "tracking_area_id"), index, "negative id");
  }

  void resources(const ResourceSample& s, const std::string& path, std::optional<std::size_t> index) {
    non_negative(s.ram_mb, child(path, "ram_mb"), index);
    non_negative(s.cpu_units, child(path, "cpu_units"), index);
    non_negative(s.storage_mb, child(path, "storage_mb"), index);
  }

  void record_list(const std::vector<UeLogRecord>& records, const std::string& list,
                   const ServiceCatalog& catalog, bool iot_list) {
    for (std::size_t i = 0; i < records.size(); ++i) {
      const UeLogRecord& r = records[i];
      const std::string p = element(list, i);
      non_negative(r.time, child(p, "time"), i);
      if (i > 0 && r.time < records[i - 1].time) fail(child(p, "time"), i, "log not sorted by time");
      if (r.user_equipment_id < 0) fail(child(p, "user_equipment_id"), i, "negative id");
      non_negative(r.data_uplink_kb, child(p, "data_uplink_kb"), i);
      non_negative(r.data_downlink_kb, child(p, "data_downlink_kb"), i);
      position(r.position, p, i);
      enodeb(r.current_enodeb, child(p, "current_enodeb"), i);
      enodeb(r.previous_enodeb, child(p, "previous_enodeb"), i);
      if (r.edge_cloud_id < 0) fail(child(p, "edge_cloud_id"), i, "negative id");
      resources(r.resources, child(p, "resources"), i);
      auto it = catalog.find(r.service_name);
      if (it == catalog.end()) {
        fail(child(p, "service_name"), i, "service '" + r.service_name + "' not in catalog");
      } else if (iot_list && it->second != ServiceFamily::kIotSensor) {
        fail(child(p, "service_name"), i,
             "family mismatch: '" + std::string(to_string(it->second)) + "' record in " + list);
      }
    }
  }

  void settings(const ScenarioSettings& s, const std::string& path) {
    position(s.area_center, child(path, "area_center"), std::nullopt);
    if (!std::isfinite(s.area_radius_m) || s.area_radius_m < 0.0) {
      fail(child(path, "area_radius_m"), std::nullopt, "radius must be finite and non-negative");
    }
    if (!std::isfinite(s.horizon_s) || s.horizon_s < 0.0) {
      fail(child(path, "horizon_s"), std::nullopt, "horizon must be finite and non-negative");
    }
    if (s.horizon_s > 0.0 && s.enodebs.empty()) {
      fail(child(path, "enodebs"), std::nullopt, "no eNodeBs for a positive horizon");
    }
    std::set<std::int64_t> ids;
    for (std::size_t i = 0; i < s.enodebs.size(); ++i) {
      const std::string p = element(child(path, "enodebs"), i);
      enodeb(s.enodebs[i], p, i);
      if (!ids.insert(s.enodebs[i].enb_id).second) fail(child(p, "enb_id"), i, "duplicate eNodeB id");
    }
    for (std::size_t i = 0; i < s.user_profiles.size(); ++i) {
      const UserProfile& prof = s.user_profiles[i];
      const std::string p = element(child(path, "user_profiles"), i);
      if (prof.count < 0) fail(child(p, "count"), i, "negative count");
      bool any_rate = false;
      for (ServiceFamily f : kAllFamilies) {
        const std::string fam(to_string(f));
        const std::size_t k = index_of(f);
        non_negative(prof.session_rates[k], child(child(p, "session_rates"), fam), i);
        non_negative(prof.session_size_kb[k].uplink_kb, child(child(p, "session_size_kb"), fam), i);
        non_negative(prof.session_size_kb[k].downlink_kb, child(child(p, "session_size_kb"), fam), i);
        resources(prof.resource_draw[k], child(child(p, "resource_draw"), fam), i);
        any_rate = any_rate || prof.session_rates[k] > 0.0;
      }
      if (prof.count > 0 && !any_rate) fail(child(p, "session_rates"), i, "no positive session rate");
    }
  }

 private:
  ValidationReport& report_;
};

}  // namespace

std::string ValidationReport::summary(std::size_t max_items) const {
  std::ostringstream out;
  out << violations.size() << " violation(s)";
  for (std::size_t i = 0; i < violations.size() && i < max_items; ++i) {
    out << "\n  " << violations[i].path << ": " << violations[i].message;
  }
  if (violations.size() > max_items) out << "\n  ...";
  return out.str();
}

Trace parse_trace(std::string_view document) {
  const json doc = parse_document(document);
  const Reader root(doc, "");
  Trace trace;
  const auto read_records = [&](std::string_view key) {
    std::vector<UeLogRecord> out;
    const json& arr = root.array(key);
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
      out.push_back(read_record(Reader(arr[i], element(std::string(key), i))));
    }
    return out;
  };
  trace.ue_logs = read_records("ue_logs");
  trace.iot_logs = read_records("iot_logs");
  const json& events = root.array("event_logs");
  for (std::size_t i = 0; i < events.size(); ++i) {
    trace.event_logs.push_back(read_event(Reader(events[i], element("event_logs", i))));
  }
  trace.scenario_settings = read_settings(root.object("scenario_settings"));
  sort_by_time(trace.ue_logs);
  sort_by_time(trace.iot_logs);
  sort_by_time(trace.event_logs);
  return trace;
}

std::string write_trace(const Trace& trace) {
  const ValidationReport report = validate_trace(trace);
  if (!report.ok()) throw ValidationError("refusing to serialize invalid trace: " + report.summary());
  json j;
  j["ue_logs"] = json::array();
  for (const auto& r : trace.ue_logs) j["ue_logs"].push_back(write_record(r));
  j["iot_logs"] = json::array();
  for (const auto& r : trace.iot_logs) j["iot_logs"].push_back(write_record(r));
  j["event_logs"] = json::array();
  for (const auto& e : trace.event_logs) j["event_logs"].push_back(write_event(e));
  j["scenario_settings"] = write_settings(trace.scenario_settings);
  return j.dump(1) + "\n";
}

ScenarioSettings parse_scenario(std::string_view document) {
  const json doc = parse_document(document);
  return read_settings(Reader(doc, ""));
}

std::string write_scenario(const ScenarioSettings& settings) {
  const ValidationReport report = validate_settings(settings);
  if (!report.ok()) throw ValidationError("refusing to serialize invalid scenario: " + report.summary());
  return write_settings(settings).dump(2) + "\n";
}

ValidationReport validate_settings(const ScenarioSettings& settings) {
  ValidationReport report;
  Checker(report).settings(settings, "");
  return report;
}

ValidationReport validate_trace(const Trace& trace) {
  ValidationReport report;
  Checker check(report);
  const ServiceCatalog& catalog = trace.scenario_settings.service_catalog;
  check.record_list(trace.ue_logs, "ue_logs", catalog, false);
  check.record_list(trace.iot_logs, "iot_logs", catalog, true);
  for (std::size_t i = 0; i < trace.event_logs.size(); ++i) {
    const EventRecord& e = trace.event_logs[i];
    const std::string p = element("event_logs", i);
    if (!event_type_from_string(e.event_type)) {
      check.fail(child(p, "event_type"), i, "unknown event type '" + e.event_type + "'");
    }
    check.non_negative(e.time, child(p, "time"), i);
    if (i > 0 && e.time < trace.event_logs[i - 1].time) check.fail(child(p, "time"), i, "log not sorted by time");
    if (e.user_equipment_id < 0) check.fail(child(p, "user_equipment_id"), i, "negative id");
  }
  check.settings(trace.scenario_settings, "scenario_settings");
  return report;
}

}  // namespace sliceprof
