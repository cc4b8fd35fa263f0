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

#include "hwplan/velocity/profile.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace hwplan::velocity
{

namespace
{

constexpr double kHeadwayThreshold = 2.0;  // s
constexpr double kMaxAccel = 3.0;          // m/s^2

}  // namespace

void VelocityProfile::validate(double v_max, int expected_len) const
{
  if (expected_len > 0 && static_cast<int>(v.size()) != expected_len) {
    throw core::InputError(
      "length mismatch: profile has " + std::to_string(v.size()) + " entries, expected " +
      std::to_string(expected_len));
  }
  if (!(dt > 0.0)) {
    throw core::InputError("profile dt must be positive");
  }
  for (double speed : v) {
    if (!(speed > 0.0) || speed > v_max) {
      throw core::InputError("profile speed " + std::to_string(speed) + " outside (0, v_max]");
    }
  }
}

VelocityProfile constant_profile(double v0, int num_steps, double dt, double v_max)
{
  if (!(v0 > 0.0)) {
    throw core::InputError("constant_profile: v0 must be positive");
  }
  return {std::vector<double>(static_cast<std::size_t>(num_steps), std::min(v0, v_max)), dt};
}

VelocityProfile gap_keeping_profile(
  const core::VehicleState & ev, const std::optional<LeadVehicle> & lead, int num_steps, double dt,
  const core::PlannerConfig & config)
{
  // A stopped ego still gets a positive profile; the planner needs strictly increasing positions.
  const double floor_speed = config.min_step_ds / dt;
  double v = std::clamp(ev.v, floor_speed, config.v_max);
  if (!lead) {
    return constant_profile(v, num_steps, dt, config.v_max);
  }

  VelocityProfile profile{{}, dt};
  profile.v.reserve(static_cast<std::size_t>(num_steps));
  double ego_s = ev.s;
  for (int k = 1; k <= num_steps; ++k) {
    const double lead_s = lead->s + lead->v * (k - 1) * dt;
    const double gap = lead_s - ego_s - 0.5 * (lead->length + ev.dims.length);
    const double headway = gap / v;
    if (headway < kHeadwayThreshold && v > lead->v) {
      const double decel = std::min(kMaxAccel, (v - lead->v) / dt);
      v -= decel * dt;
    }
    v = std::clamp(v, floor_speed, config.v_max);
    profile.v.push_back(v);
    ego_s += v * dt;
  }
  return profile;
}

std::vector<double> positions_from_profile(const VelocityProfile & profile)
{
  std::vector<double> s(profile.v.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < profile.v.size(); ++i) {
    acc += profile.v[i] * profile.dt;
    s[i] = acc;
  }
  return s;
}

LoadedProfile load_profile(const std::string & text, int num_steps, double dt, double v_max)
{
  LoadedProfile out;
  out.profile.dt = dt;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') {
      continue;
    }
    const auto last = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(first, last - first + 1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value)) {
      throw core::InputError(
        "non-numeric entry '" + token + "' on line " + std::to_string(line_no));
    }
    if (!(value > 0.0)) {
      throw core::InputError(
        "non-positive speed " + token + " on line " + std::to_string(line_no));
    }
    if (value > v_max) {
      out.warnings.push_back(
        "line " + std::to_string(line_no) + ": speed " + token + " clamped to v_max");
      value = v_max;
    }
    out.profile.v.push_back(value);
  }
  if (static_cast<int>(out.profile.v.size()) != num_steps) {
    throw core::InputError(
      "length mismatch: profile has " + std::to_string(out.profile.v.size()) +
      " entries, expected " + std::to_string(num_steps));
  }
  return out;
}

std::string format_profile(const VelocityProfile & profile)
{
  std::ostringstream out;
  out << "# velocity profile, m/s, dt = " << profile.dt << "\n";
  out << std::setprecision(17);
  for (double v : profile.v) {
    out << v << "\n";
  }
  return out.str();
}

}  // namespace hwplan::velocity
