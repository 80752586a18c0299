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

// Small hand-built traces shared by the unit tests.
#pragma once

#include <string>

#include "sliceprof/trace.hpp"

namespace sliceprof::testing {

inline ServiceCatalog test_catalog() {
  return {
      {"Watching 720p Video Online", ServiceFamily::kVideoStreaming},
      {"Browsing Profile Page", ServiceFamily::kSocialNetwork},
      {"Instant Message Chat", ServiceFamily::kInstantMessaging},
      {"UAV Home Delivery", ServiceFamily::kUavDelivery},
      {"Air Pollution Service Request", ServiceFamily::kIotSensor},
  };
}

inline Enodeb test_enodeb(std::int64_t id = 0, std::int64_t ta = 1) {
  return {id, {60.27374709224876, 24.808506666693756 + 0.01 * static_cast<double>(id)}, 5000.0, ta};
}

inline ScenarioSettings test_settings() {
  ScenarioSettings s;
  s.area_center = {60.27, 24.80};
  s.area_radius_m = 5000.0;
  s.enodebs = {test_enodeb(0, 1), test_enodeb(1, 2)};
  s.service_catalog = test_catalog();
  s.horizon_s = 3600.0;
  s.seed = 1;
  return s;
}

inline UeLogRecord test_record(std::int64_t ue, double time, const std::string& service, double up, double down,
                               ResourceSample res = {}) {
  UeLogRecord r;
  r.time = time;
  r.user_equipment_id = ue;
  r.service_name = service;
  r.data_uplink_kb = up;
  r.data_downlink_kb = down;
  r.position = {60.2570862, 24.7156538};
  r.current_enodeb = test_enodeb(0, 1);
  r.previous_enodeb = test_enodeb(0, 1);
  r.tracking_area_id = 1;
  r.previous_tracking_area = 1;
  r.edge_cloud_id = 0;
  r.resources = res;
  return r;
}

}  // namespace sliceprof::testing
