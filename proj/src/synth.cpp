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

#include "sliceprof/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include "sliceprof/error.hpp"
#include "sliceprof/trace_io.hpp"

namespace sliceprof {
namespace {

double quantize(double v) { return std::round(v / kUsageQuantum) * kUsageQuantum; }

std::array<double, 2> uniform_in_disc(double radius, Rng& rng) {
  const double r = radius * std::sqrt(rng.uniform01());
  const double theta = 2.0 * std::numbers::pi * rng.uniform01();
  return {r * std::cos(theta), r * std::sin(theta)};
}

std::vector<double> sample_times(double horizon_s) {
  std::vector<double> times;
  for (std::int64_t i = 0;; ++i) {
    const double t = static_cast<double>(i) * kItineraryStepS;
    if (t > horizon_s) break;
    times.push_back(t);
  }
  if (times.back() < horizon_s) times.push_back(horizon_s);
  return times;
}

// Index of the last itinerary sample at or before t.
std::size_t sample_at(const std::vector<ItinerarySample>& itinerary, double t) {
  auto it = std::upper_bound(itinerary.begin(), itinerary.end(), t,
                             [](double v, const ItinerarySample& s) { return v < s.time_s; });
  return it == itinerary.begin() ? 0 : static_cast<std::size_t>(it - itinerary.begin() - 1);
}

}  // namespace

std::vector<ItinerarySample> sample_itinerary(const UserProfile& profile, const GeoPosition& start,
                                              double horizon_s, const Area& area, Rng& rng) {
  const std::vector<double> times = sample_times(std::max(0.0, horizon_s));
  std::vector<ItinerarySample> out;
  out.reserve(times.size());
  const double speed = mode_speed_mps(profile.mobility_mode);
  if (speed <= 0.0 || area.radius_m <= 0.0) {
    for (double t : times) out.push_back({t, start});
    return out;
  }

  const LocalFrame frame(area.center);
  std::array<double, 2> here = frame.to_local(start);
  std::array<double, 2> waypoint = uniform_in_disc(area.radius_m, rng);
  out.push_back({times[0], start});
  for (std::size_t i = 1; i < times.size(); ++i) {
    double budget = speed * (times[i] - times[i - 1]);
    // Bounded so that degenerate waypoint draws cannot stall a step.
    for (int hops = 0; budget > 0.0 && hops < 64; ++hops) {
      const double dx = waypoint[0] - here[0];
      const double dy = waypoint[1] - here[1];
      const double dist = std::hypot(dx, dy);
      if (dist <= budget) {
        here = waypoint;
        budget -= dist;
        waypoint = uniform_in_disc(area.radius_m, rng);
      } else {
        here = {here[0] + dx * (budget / dist), here[1] + dy * (budget / dist)};
        budget = 0.0;
      }
    }
    out.push_back({times[i], frame.to_geo(here)});
  }
  return out;
}

std::vector<SessionEvent> sample_sessions(const UserProfile& profile, std::int64_t ue_id,
                                          double horizon_s, const ServiceCatalog& catalog, Rng& rng) {
  PerFamily<std::vector<std::string>> names;
  for (const auto& [name, family] : catalog) names[index_of(family)].push_back(name);

  std::vector<SessionEvent> out;
  for (ServiceFamily family : kAllFamilies) {
    const std::size_t f = index_of(family);
    const double rate_per_s = profile.session_rates[f] / 3600.0;
    if (!(rate_per_s > 0.0)) continue;
    if (names[f].empty()) {
      throw ConfigError("no catalog service for family '" + std::string(to_string(family)) + "'");
    }
    const SessionSize& size = profile.session_size_kb[f];
    const ResourceSample& draw = profile.resource_draw[f];
    double t = 0.0;
    while (true) {
      t += rng.exponential(1.0 / rate_per_s);
      if (t > horizon_s) break;
      SessionEvent s;
      s.ue_id = ue_id;
      s.start_time_s = t;
      s.family = family;
      s.service_name = names[f][rng.uniform_index(names[f].size())];
      s.uplink_kb = quantize(rng.exponential(size.uplink_kb));
      s.downlink_kb = quantize(rng.exponential(size.downlink_kb));
      s.resources.ram_mb = quantize(rng.exponential(draw.ram_mb));
      s.resources.cpu_units = quantize(rng.exponential(draw.cpu_units));
      s.resources.storage_mb = quantize(rng.exponential(draw.storage_mb));
      out.push_back(std::move(s));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const SessionEvent& a, const SessionEvent& b) {
    return a.start_time_s < b.start_time_s;
  });
  return out;
}

const Enodeb& assign_enodeb(const GeoPosition& position, std::span<const Enodeb> enodebs) {
  if (enodebs.empty()) throw ConfigError("cannot assign an eNodeB from an empty list");
  const Enodeb* best = &enodebs.front();
  double best_d = haversine_m(position, best->position);
  for (const Enodeb& e : enodebs.subspan(1)) {
    const double d = haversine_m(position, e.position);
    if (d < best_d || (d == best_d && e.enb_id < best->enb_id)) {
      best = &e;
      best_d = d;
    }
  }
  return *best;
}

Simulation simulate(const ScenarioSettings& settings) {
  const ValidationReport report = validate_settings(settings);
  if (!report.ok()) throw ConfigError("invalid scenario: " + report.summary());

  Simulation sim;
  sim.trace.scenario_settings = settings;
  if (settings.horizon_s <= 0.0) return sim;

  const Area area{settings.area_center, settings.area_radius_m};
  const LocalFrame frame(area.center);
  const std::span<const Enodeb> enbs(settings.enodebs);

  struct Keyed {
    double time;
    std::int64_t ue;
    std::size_t seq;
    EventRecord event;
  };
  std::vector<Keyed> events;
  std::vector<UeLogRecord> ue_logs;
  std::vector<UeLogRecord> iot_logs;

  std::int64_t ue_id = 0;
  for (const UserProfile& profile : settings.user_profiles) {
    for (std::int64_t n = 0; n < profile.count; ++n, ++ue_id) {
      Rng mobility(stream_seed(settings.seed, static_cast<std::uint64_t>(ue_id), 0));
      Rng sessions_rng(stream_seed(settings.seed, static_cast<std::uint64_t>(ue_id), 1));

      const GeoPosition start = frame.to_geo(uniform_in_disc(area.radius_m, mobility));
      std::vector<ItinerarySample> itinerary =
          sample_itinerary(profile, start, settings.horizon_s, area, mobility);
      std::vector<SessionEvent> sessions =
          sample_sessions(profile, ue_id, settings.horizon_s, settings.service_catalog, sessions_rng);

      std::vector<const Enodeb*> serving;
      serving.reserve(itinerary.size());
      for (const auto& s : itinerary) serving.push_back(&assign_enodeb(s.position, enbs));

      auto emit = [&](EventType type, double t) {
        events.push_back({t, ue_id, events.size(), {std::string(to_string(type)), t, ue_id}});
      };

      const Enodeb* previous = nullptr;
      for (const SessionEvent& s : sessions) {
        const std::size_t at = sample_at(itinerary, s.start_time_s);
        const Enodeb* current = serving[at];
        if (previous == nullptr) {
          emit(EventType::kAttach, s.start_time_s);
        } else if (previous->enb_id != current->enb_id) {
          emit(EventType::kMigration, s.start_time_s);
        }
        UeLogRecord rec;
        rec.time = s.start_time_s;
        rec.user_equipment_id = ue_id;
        rec.service_name = s.service_name;
        rec.data_uplink_kb = s.uplink_kb;
        rec.data_downlink_kb = s.downlink_kb;
        rec.position = itinerary[at].position;
        rec.current_enodeb = *current;
        rec.previous_enodeb = previous ? *previous : *current;
        rec.tracking_area_id = current->tracking_area_id;
        rec.previous_tracking_area = rec.previous_enodeb.tracking_area_id;
        rec.edge_cloud_id = current->enb_id;
        rec.resources = s.resources;
        (s.family == ServiceFamily::kIotSensor ? iot_logs : ue_logs).push_back(std::move(rec));
        previous = current;
      }

      if (!sessions.empty()) {
        const double attached_at = sessions.front().start_time_s;
        for (std::size_t i = 1; i < itinerary.size(); ++i) {
          if (itinerary[i].time_s < attached_at) continue;
          if (serving[i]->enb_id != serving[i - 1]->enb_id) emit(EventType::kHandoff, itinerary[i].time_s);
          if (serving[i]->tracking_area_id != serving[i - 1]->tracking_area_id) {
            emit(EventType::kTrackingAreaUpdate, itinerary[i].time_s);
          }
        }
        emit(EventType::kDetach, settings.horizon_s);
      }

      sim.itineraries.push_back(std::move(itinerary));
      std::move(sessions.begin(), sessions.end(), std::back_inserter(sim.sessions));
    }
  }

  const auto by_time_then_ue = [](const UeLogRecord& a, const UeLogRecord& b) {
    return std::tie(a.time, a.user_equipment_id) < std::tie(b.time, b.user_equipment_id);
  };
  std::stable_sort(ue_logs.begin(), ue_logs.end(), by_time_then_ue);
  std::stable_sort(iot_logs.begin(), iot_logs.end(), by_time_then_ue);
  std::sort(events.begin(), events.end(), [](const Keyed& a, const Keyed& b) {
    return std::tie(a.time, a.ue, a.seq) < std::tie(b.time, b.ue, b.seq);
  });

  sim.trace.ue_logs = std::move(ue_logs);
  sim.trace.iot_logs = std::move(iot_logs);
  sim.trace.event_logs.reserve(events.size());
  for (auto& k : events) sim.trace.event_logs.push_back(std::move(k.event));
  return sim;
}

Trace generate(const ScenarioSettings& settings) { return simulate(settings).trace; }

ScenarioSettings default_scenario(std::uint64_t seed) {
  ScenarioSettings s;
  s.area_center = {60.2737470922, 24.8085066667};
  s.area_radius_m = 5000.0;
  s.horizon_s = 7200.0;
  s.seed = seed;

  // Hexagonal layout: one central cell and a ring of six at 3 km.
  const LocalFrame frame(s.area_center);
  s.enodebs.push_back({0, s.area_center, 2000.0, 1});
  for (int i = 0; i < 6; ++i) {
    const double a = std::numbers::pi / 3.0 * i;
    s.enodebs.push_back({i + 1, frame.to_geo({3000.0 * std::cos(a), 3000.0 * std::sin(a)}), 2000.0,
                         2 + i % 2});
  }

  s.service_catalog = {
      {"Watching 720p Video Online", ServiceFamily::kVideoStreaming},
      {"Watching 1080p Video Online", ServiceFamily::kVideoStreaming},
      {"Browsing Profile Page", ServiceFamily::kSocialNetwork},
      {"Posting Photo", ServiceFamily::kSocialNetwork},
      {"Instant Message Chat", ServiceFamily::kInstantMessaging},
      {"UAV Home Delivery", ServiceFamily::kUavDelivery},
      {"Weather Sensing", ServiceFamily::kIotSensor},
      {"Air Pollution Service Request", ServiceFamily::kIotSensor},
  };

  UserProfile heavy;
  heavy.profile_name = "heavy-embb";
  heavy.count = 40;
  heavy.mobility_mode = MobilityMode::kWalking;
  heavy.session_rates[index_of(ServiceFamily::kVideoStreaming)] = 3.0;
  heavy.session_rates[index_of(ServiceFamily::kSocialNetwork)] = 6.0;
  heavy.session_rates[index_of(ServiceFamily::kInstantMessaging)] = 12.0;
  heavy.session_size_kb[index_of(ServiceFamily::kVideoStreaming)] = {400.0, 60000.0};
  heavy.session_size_kb[index_of(ServiceFamily::kSocialNetwork)] = {300.0, 3000.0};
  heavy.session_size_kb[index_of(ServiceFamily::kInstantMessaging)] = {20.0, 40.0};
  heavy.resource_draw[index_of(ServiceFamily::kVideoStreaming)] = {256.0, 0.5, 512.0};
  heavy.resource_draw[index_of(ServiceFamily::kSocialNetwork)] = {128.0, 0.25, 64.0};
  heavy.resource_draw[index_of(ServiceFamily::kInstantMessaging)] = {32.0, 0.05, 4.0};

  UserProfile iot;
  iot.profile_name = "light-iot";
  iot.count = 40;
  iot.mobility_mode = MobilityMode::kStatic;
  iot.session_rates[index_of(ServiceFamily::kIotSensor)] = 12.0;
  iot.session_size_kb[index_of(ServiceFamily::kIotSensor)] = {1.5, 0.2};
  iot.resource_draw[index_of(ServiceFamily::kIotSensor)] = {4.0, 0.01, 0.5};

  s.user_profiles = {heavy, iot};
  return s;
}

}  // namespace sliceprof
