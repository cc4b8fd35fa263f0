// Copyright 2026 The hwplan Authors
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

#ifndef HWPLAN__CORE__SCENARIO_IO_HPP_
#define HWPLAN__CORE__SCENARIO_IO_HPP_

#include <string>

#include "hwplan/core/types.hpp"

namespace hwplan::core
{

/// Parses and validates a scenario document (JSON text).
///
/// Top-level keys: road {reference_line, l_lb, l_ub, lane_centers, lane_width},
/// ev {s, l, v, a, heading, width, length}, svs [{id, width, length, poses}], dt, duration.
/// Pose rows are [s, l, heading, v]; an optional fifth column carries the sample time and is
/// checked against the implicit schedule t = k * dt.
///
/// The duration check uses \p config (N * dt must fit inside the scenario).
Scenario load_scenario(const std::string & text, const PlannerConfig & config = {});

/// Serializes a scenario into the same document format. Output is byte-stable.
std::string serialize_scenario(const Scenario & scenario);

/// Runs every Scenario invariant; throws InputError with a message naming the violation.
void validate_scenario(const Scenario & scenario, const PlannerConfig & config = {});

/// Reads planner overrides from a JSON document; absent keys keep their defaults.
PlannerConfig load_config(const std::string & text, PlannerConfig base = {});

/// Reads a whole file into a string; throws InputError when it cannot be opened.
std::string read_text_file(const std::string & path);

}  // namespace hwplan::core

#endif  // HWPLAN__CORE__SCENARIO_IO_HPP_
