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

#ifndef HWPLAN__VELOCITY__PROFILE_HPP_
#define HWPLAN__VELOCITY__PROFILE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "hwplan/core/types.hpp"

namespace hwplan::velocity
{

/// Longitudinal speed per planning step; entry i covers the interval ((i-1) dt, i dt].
struct VelocityProfile
{
  std::vector<double> v;
  double dt{0.1};

  /// Checks 0 < v_i <= v_max and, when \p expected_len > 0, the length.
  void validate(double v_max, int expected_len = 0) const;
};

/// Vehicle ahead in the ego lane, as seen at the current planning instant.
struct LeadVehicle
{
  double s{0.0};       // m, centre
  double v{0.0};       // m/s
  double length{4.8};  // m
};

struct LoadedProfile
{
  VelocityProfile profile;
  std::vector<std::string> warnings;
};

VelocityProfile constant_profile(double v0, int num_steps, double dt, double v_max);

/// Headway keeping: while the time headway to the lead is below 2 s and the ego is faster, brake
/// toward the lead speed at up to 3 m/s^2 (the lead is extrapolated at constant speed);
/// otherwise hold speed.
VelocityProfile gap_keeping_profile(
  const core::VehicleState & ev, const std::optional<LeadVehicle> & lead, int num_steps, double dt,
  const core::PlannerConfig & config);

/// Positions relative to the current ego position: s_i = sum_{j=1..i} v_j dt.
std::vector<double> positions_from_profile(const VelocityProfile & profile);

/// Parses the exchange format: one decimal speed per line, '#' lines are comments, blank lines
/// ignored. Entries above v_max are clamped with a warning.
LoadedProfile load_profile(const std::string & text, int num_steps, double dt, double v_max);

/// Writes the exchange format.
std::string format_profile(const VelocityProfile & profile);

}  // namespace hwplan::velocity

#endif  // HWPLAN__VELOCITY__PROFILE_HPP_
