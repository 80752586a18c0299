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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sliceprof/trace.hpp"

namespace sliceprof {

struct Violation {
  std::string path;                  // e.g. "ue_logs[3].time"
  std::optional<std::size_t> index;  // record index within its list, if any
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string summary(std::size_t max_items = 10) const;
};

/// Parses a trace document (JSON with "ue_logs", "iot_logs", "event_logs" and
/// "scenario_settings"). Unknown keys are ignored and every log list is
/// stably re-sorted by time. A record carrying only the legacy scalar
/// "datasource" usage field is read as downlink usage with zero uplink.
///
/// Throws ParseError naming the offending path for malformed documents and
/// ValidationError for coordinates outside [-90, 90] x [-180, 180].
Trace parse_trace(std::string_view document);

/// Serializes a trace. Refuses (ValidationError) any trace for which
/// validate_trace reports a violation. parse_trace(write_trace(t)) == t.
std::string write_trace(const Trace& trace);

/// Standalone scenario configuration; same layout as "scenario_settings".
ScenarioSettings parse_scenario(std::string_view document);
std::string write_scenario(const ScenarioSettings& settings);

/// Lists every invariant violation. Never throws.
ValidationReport validate_trace(const Trace& trace);
ValidationReport validate_settings(const ScenarioSettings& settings);

}  // namespace sliceprof
