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

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sliceprof {

/// The five service families a session can belong to. The enumerator order is
/// the canonical column/report order everywhere in the toolkit.
enum class ServiceFamily : std::uint8_t {
  kVideoStreaming = 0,
  kSocialNetwork,
  kInstantMessaging,
  kUavDelivery,
  kIotSensor,
};

inline constexpr std::size_t kNumFamilies = 5;
inline constexpr std::array<ServiceFamily, kNumFamilies> kAllFamilies = {
    ServiceFamily::kVideoStreaming, ServiceFamily::kSocialNetwork,
    ServiceFamily::kInstantMessaging, ServiceFamily::kUavDelivery,
    ServiceFamily::kIotSensor};

template <typename T>
using PerFamily = std::array<T, kNumFamilies>;

constexpr std::size_t index_of(ServiceFamily f) { return static_cast<std::size_t>(f); }

/// "video-streaming", "social-network", ...
std::string_view to_string(ServiceFamily f);
std::optional<ServiceFamily> family_from_string(std::string_view name);

enum class MobilityMode : std::uint8_t { kWalking, kBiking, kDriving, kStatic };

std::string_view to_string(MobilityMode m);
std::optional<MobilityMode> mobility_from_string(std::string_view name);

/// Speed cap of a mobility mode in m/s. Static is 0.
double mode_speed_mps(MobilityMode m);

enum class EventType : std::uint8_t {
  kAttach,
  kDetach,
  kHandoff,
  kTrackingAreaUpdate,
  kMigration,
};

std::string_view to_string(EventType e);
std::optional<EventType> event_type_from_string(std::string_view name);

struct GeoPosition {
  double latitude = 0.0;
  double longitude = 0.0;

  bool operator==(const GeoPosition&) const = default;
};

bool is_valid(const GeoPosition& p);

/// Great-circle distance in meters (haversine, mean Earth radius).
double haversine_m(const GeoPosition& a, const GeoPosition& b);

/// Equirectangular tangent-plane projection around a fixed origin. Local
/// coordinates are meters east (x) and north (y) of the origin.
class LocalFrame {
 public:
  explicit LocalFrame(const GeoPosition& origin);

  std::array<double, 2> to_local(const GeoPosition& p) const;
  GeoPosition to_geo(const std::array<double, 2>& xy) const;

 private:
  GeoPosition origin_;
  double meters_per_deg_lat_;
  double meters_per_deg_lon_;
};

struct Enodeb {
  std::int64_t enb_id = 0;
  GeoPosition position;
  double radius_m = 1.0;
  std::int64_t tracking_area_id = 0;

  bool operator==(const Enodeb&) const = default;
};

/// Edge-cloud resource consumption. RAM and storage in MB, CPU as a
/// normalized share.
struct ResourceSample {
  double ram_mb = 0.0;
  double cpu_units = 0.0;
  double storage_mb = 0.0;

  ResourceSample& operator+=(const ResourceSample& o) {
    ram_mb += o.ram_mb;
    cpu_units += o.cpu_units;
    storage_mb += o.storage_mb;
    return *this;
  }
  bool operator==(const ResourceSample&) const = default;
};

struct UeLogRecord {
  double time = 0.0;
  std::int64_t user_equipment_id = 0;
  std::string service_name;
  double data_uplink_kb = 0.0;
  double data_downlink_kb = 0.0;
  GeoPosition position;
  Enodeb current_enodeb;
  Enodeb previous_enodeb;
  std::int64_t tracking_area_id = 0;
  std::int64_t previous_tracking_area = 0;
  std::int64_t edge_cloud_id = 0;
  ResourceSample resources;

  bool operator==(const UeLogRecord&) const = default;
};

/// Network event. `event_type` is kept as text so that foreign documents with
/// unknown kinds survive parsing and are reported by validate_trace.
struct EventRecord {
  std::string event_type;
  double time = 0.0;
  std::int64_t user_equipment_id = 0;

  bool operator==(const EventRecord&) const = default;
};

struct SessionSize {
  double uplink_kb = 0.0;
  double downlink_kb = 0.0;

  bool operator==(const SessionSize&) const = default;
};

/// A population of identical users in a synthetic scenario.
struct UserProfile {
  std::string profile_name;
  std::int64_t count = 0;
  MobilityMode mobility_mode = MobilityMode::kStatic;
  PerFamily<double> session_rates{};        // arrivals per hour
  PerFamily<SessionSize> session_size_kb{};  // exponential means
  PerFamily<ResourceSample> resource_draw{};  // exponential means

  bool operator==(const UserProfile&) const = default;
};

using ServiceCatalog = std::map<std::string, ServiceFamily>;

struct ScenarioSettings {
  GeoPosition area_center;
  double area_radius_m = 0.0;
  std::vector<Enodeb> enodebs;
  ServiceCatalog service_catalog;
  std::vector<UserProfile> user_profiles;
  double horizon_s = 0.0;
  std::uint64_t seed = 0;

  bool operator==(const ScenarioSettings&) const = default;
};

struct Trace {
  std::vector<UeLogRecord> ue_logs;
  std::vector<UeLogRecord> iot_logs;
  std::vector<EventRecord> event_logs;
  ScenarioSettings scenario_settings;

  bool operator==(const Trace&) const = default;
};

}  // namespace sliceprof
