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
#include <span>
#include <string>
#include <vector>

#include "sliceprof/rng.hpp"
#include "sliceprof/trace.hpp"

namespace sliceprof {

/// Sampling period of user itineraries, in seconds.
inline constexpr double kItineraryStepS = 10.0;

/// Usage and resource draws are rounded to this grid (one byte, expressed in
/// KB or MB). Values on the grid add exactly in double precision, so totals
/// are independent of summation order.
inline constexpr double kUsageQuantum = 1.0 / 1024.0;

struct Area {
  GeoPosition center;
  double radius_m = 0.0;
};

struct ItinerarySample {
  double time_s = 0.0;
  GeoPosition position;
};

struct SessionEvent {
  std::int64_t ue_id = 0;
  double start_time_s = 0.0;
  std::string service_name;
  ServiceFamily family = ServiceFamily::kVideoStreaming;
  double uplink_kb = 0.0;
  double downlink_kb = 0.0;
  ResourceSample resources;
};

/// Random-waypoint travel inside `area` at the profile's mode speed, sampled
/// every kItineraryStepS seconds from 0 (plus a final sample at `horizon_s`
/// when it is not on the grid). Distances are measured in the local tangent
/// plane of the area center. Static users never move.
std::vector<ItinerarySample> sample_itinerary(const UserProfile& profile, const GeoPosition& start,
                                              double horizon_s, const Area& area, Rng& rng);

/// Homogeneous Poisson arrivals per family on [0, horizon_s]; sizes and
/// resources exponential with the profile's means. The service name of each
/// session is drawn uniformly from the catalog entries of its family.
/// Output is ordered by start time. Throws ConfigError when a family with a
/// positive rate has no catalog entry.
std::vector<SessionEvent> sample_sessions(const UserProfile& profile, std::int64_t ue_id,
                                          double horizon_s, const ServiceCatalog& catalog, Rng& rng);

/// Great-circle-nearest eNodeB, ties to the lowest enb_id. Throws ConfigError
/// on an empty list.
const Enodeb& assign_enodeb(const GeoPosition& position, std::span<const Enodeb> enodebs);

/// Everything a generation run produced, for inspection in tests.
struct Simulation {
  Trace trace;
  std::vector<SessionEvent> sessions;  // grouped by user, time-ordered within a user
  std::vector<std::vector<ItinerarySample>> itineraries;  // indexed by ue_id
};

/// Deterministic trace synthesis. Users are numbered 0.. across profiles in
/// order; user u draws its mobility from stream (seed, u, 0) and its sessions
/// from stream (seed, u, 1).
Simulation simulate(const ScenarioSettings& settings);
Trace generate(const ScenarioSettings& settings);

/// Built-in two-population scenario: heavy broadband users (video, social,
/// messaging) walking through a 7-cell area, and static IoT sensors.
ScenarioSettings default_scenario(std::uint64_t seed);

}  // namespace sliceprof
