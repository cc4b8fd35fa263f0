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

#ifndef HWPLAN__CORE__GENERATOR_HPP_
#define HWPLAN__CORE__GENERATOR_HPP_

#include <cstdint>
#include <map>
#include <string>

#include "hwplan/core/types.hpp"

namespace hwplan::core
{

/// Emergency cut-in archetypes on a straight three-lane road.
enum class Archetype {
  kCutInSlowFront,   // slower vehicle ahead-left merges into the ego lane
  kCutInCloseDecel,  // close, decelerating vehicle ahead-left drifts in nearly parallel
  kCutInFastRear,    // fast vehicle from the right-rear overtakes and cuts in
};

Archetype parse_archetype(const std::string & name);
std::string archetype_name(Archetype archetype);

/// Overridable generator parameters (all optional):
///   ev_v, cutter_v, cutter_gap, cut_time, lane_change_time, cutter_decel, duration
using GeneratorOverrides = std::map<std::string, double>;

/// Deterministic scenario synthesis: identical (archetype, seed, overrides) gives an identical
/// scenario. Throws InputError for unknown override keys or physically out-of-range values.
Scenario generate_scenario(
  Archetype archetype, std::uint64_t seed, const GeneratorOverrides & overrides = {});

}  // namespace hwplan::core

#endif  // HWPLAN__CORE__GENERATOR_HPP_
