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

#include "sliceprof/trace.hpp"

#include <cmath>
#include <numbers>

namespace sliceprof {
namespace {

constexpr double kEarthRadiusM = 6371008.8;
constexpr double kDegToRad = std::numbers::pi / 180.0;

constexpr std::array<std::string_view, kNumFamilies> kFamilyNames = {
    "video-streaming", "social-network", "instant-messaging", "uav-delivery",
    "iot-sensor"};
constexpr std::array<std::string_view, 4> kMobilityNames = {"walking", "biking", "driving",
                                                             "static"};
constexpr std::array<std::string_view, 5> kEventNames = {
    "attach", "detach", "handoff", "tracking-area-update", "migration"};

}  // namespace

std::string_view to_string(ServiceFamily f) { return kFamilyNames[index_of(f)]; }

std::optional<ServiceFamily> family_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kFamilyNames.size(); ++i) {
    if (kFamilyNames[i] == name) return static_cast<ServiceFamily>(i);
  }
  return std::nullopt;
}

std::string_view to_string(MobilityMode m) { return kMobilityNames[static_cast<std::size_t>(m)]; }

std::optional<MobilityMode> mobility_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kMobilityNames.size(); ++i) {
    if (kMobilityNames[i] == name) return static_cast<MobilityMode>(i);
  }
  return std::nullopt;
}

double mode_speed_mps(MobilityMode m) {
  switch (m) {
    case MobilityMode::kWalking: return 1.5;
    case MobilityMode::kBiking: return 4.5;
    case MobilityMode::kDriving: return 13.9;
    case MobilityMode::kStatic: return 0.0;
  }
  return 0.0;
}

std::string_view to_string(EventType e) { return kEventNames[static_cast<std::size_t>(e)]; }

std::optional<EventType> event_type_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kEventNames.size(); ++i) {
    if (kEventNames[i] == name) return static_cast<EventType>(i);
  }
  return std::nullopt;
}

bool is_valid(const GeoPosition& p) {
  return std::isfinite(p.latitude) && std::isfinite(p.longitude) && p.latitude >= -90.0 &&
         p.latitude <= 90.0 && p.longitude >= -180.0 && p.longitude <= 180.0;
}

double haversine_m(const GeoPosition& a, const GeoPosition& b) {
  const double lat1 = a.latitude * kDegToRad;
  const double lat2 = b.latitude * kDegToRad;
  const double dlat = lat2 - lat1;
  const double dlon = (b.longitude - a.longitude) * kDegToRad;
  const double s1 = std::sin(dlat / 2.0);
  const double s2 = std::sin(dlon / 2.0);
  const double h = s1 * s1 + std::cos(lat1) * std::cos(lat2) * s2 * s2;
  return 2.0 * kEarthRadiusM * std::asin(std::sqrt(std::min(1.0, h)));
}

LocalFrame::LocalFrame(const GeoPosition& origin)
    : origin_(origin),
      meters_per_deg_lat_(kEarthRadiusM * kDegToRad),
      meters_per_deg_lon_(kEarthRadiusM * kDegToRad * std::cos(origin.latitude * kDegToRad)) {}

std::array<double, 2> LocalFrame::to_local(const GeoPosition& p) const {
  return {(p.longitude - origin_.longitude) * meters_per_deg_lon_,
          (p.latitude - origin_.latitude) * meters_per_deg_lat_};
}

GeoPosition LocalFrame::to_geo(const std::array<double, 2>& xy) const {
  return {origin_.latitude + xy[1] / meters_per_deg_lat_,
          origin_.longitude + xy[0] / meters_per_deg_lon_};
}

}  // namespace sliceprof
