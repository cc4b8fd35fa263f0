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

#include "hwplan/core/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace hwplan::core
{

namespace
{

constexpr double kLaneWidth = 3.75;
constexpr double kEvStartS = 100.0;
constexpr double kRoadLength = 3000.0;
constexpr double kDt = 0.1;
// Tracks extend past the simulated duration so horizon-long predictions stay on ground truth.
constexpr double kTrackPad = 4.0;

/// Uniform [lo, hi) draw with a fixed bit-to-double mapping, so sequences do not depend on the
/// standard library's distribution implementation.
class Sampler
{
public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi)
  {
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  bool coin(double p_true) { return uniform(0.0, 1.0) < p_true; }

private:
  std::mt19937_64 rng_;
};

/// Longitudinal motion with a constant acceleration phase and a speed floor, combined with an
/// optional quintic lane change.
struct SvMotion
{
  double s0{0.0};
  double v0{0.0};
  double accel{0.0};
  double accel_start{0.0};
  double v_floor{0.0};
  double l_from{0.0};
  double l_to{0.0};
  double lc_start{1e9};
  double lc_duration{3.0};

  double speed(double t) const
  {
    if (t <= accel_start || accel == 0.0) {
      return v0;
    }
    return std::max(v_floor, v0 + accel * (t - accel_start));
  }

  double position(double t) const
  {
    if (t <= accel_start || accel == 0.0) {
      return s0 + v0 * t;
    }
    const double s_start = s0 + v0 * accel_start;
    const double tau = t - accel_start;
    // Time at which the floor is reached (accel < 0) or infinity.
    const double t_floor = accel < 0.0 ? (v_floor - v0) / accel : 1e18;
    if (tau <= t_floor) {
      return s_start + v0 * tau + 0.5 * accel * tau * tau;
    }
    return s_start + v0 * t_floor + 0.5 * accel * t_floor * t_floor + v_floor * (tau - t_floor);
  }

  double lateral(double t) const
  {
    const double tau = std::clamp((t - lc_start) / lc_duration, 0.0, 1.0);
    const double blend = tau * tau * tau * (10.0 - 15.0 * tau + 6.0 * tau * tau);
    return l_from + (l_to - l_from) * blend;
  }

  double lateral_rate(double t) const
  {
    const double tau = (t - lc_start) / lc_duration;
    if (tau <= 0.0 || tau >= 1.0) {
      return 0.0;
    }
    const double d_blend = 30.0 * tau * tau * (1.0 - 2.0 * tau + tau * tau);
    return (l_to - l_from) * d_blend / lc_duration;
  }
};

SvTrack sample_track(const std::string & id, const SvMotion & motion, double duration)
{
  SvTrack track;
  track.id = id;
  track.dims = VehicleDims{1.8, 4.8};
  const auto steps = static_cast<std::size_t>(std::llround((duration + kTrackPad) / kDt)) + 1;
  track.poses.reserve(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * kDt;
    const double v = motion.speed(t);
    const double heading = v > 0.0 ? std::atan2(motion.lateral_rate(t), v) : 0.0;
    track.poses.push_back({motion.position(t), motion.lateral(t), heading, v});
  }
  return track;
}

struct Params
{
  double ev_v;
  double cutter_v;
  double cutter_gap;
  double cut_time;
  double lane_change_time;
  double cutter_decel;
  double duration;
};

void apply_overrides(Params & params, const GeneratorOverrides & overrides)
{
  for (const auto & [key, value] : overrides) {
    auto in_range = [&](double lo, double hi) {
      if (!(value >= lo && value <= hi)) {
        throw InputError(
          "override '" + key + "' = " + std::to_string(value) + " outside physical range [" +
          std::to_string(lo) + ", " + std::to_string(hi) + "]");
      }
    };
    if (key == "ev_v") {
      in_range(1.0, 50.0);
      params.ev_v = value;
    } else if (key == "cutter_v") {
      in_range(1.0, 50.0);
      params.cutter_v = value;
    } else if (key == "cutter_gap") {
      in_range(-200.0, 200.0);
      params.cutter_gap = value;
    } else if (key == "cut_time") {
      in_range(0.0, 60.0);
      params.cut_time = value;
    } else if (key == "lane_change_time") {
      in_range(0.5, 10.0);
      params.lane_change_time = value;
    } else if (key == "cutter_decel") {
      in_range(0.0, 8.0);
      params.cutter_decel = value;
    } else if (key == "duration") {
      in_range(3.0, 120.0);
      params.duration = value;
    } else {
      throw InputError("unknown generator override '" + key + "'");
    }
  }
}

Scenario base_scenario(double ev_v, double duration)
{
  Scenario scenario;
  scenario.road.reference_line = {{0.0, 0.0}, {kRoadLength, 0.0}};
  scenario.road.lane_centerlines = {-kLaneWidth, 0.0, kLaneWidth};
  scenario.road.lane_width = kLaneWidth;
  scenario.road.l_road_lb = -1.5 * kLaneWidth;
  scenario.road.l_road_ub = 1.5 * kLaneWidth;
  scenario.ev_initial.s = kEvStartS;
  scenario.ev_initial.l = 0.0;
  scenario.ev_initial.v = ev_v;
  scenario.ev_initial.dims = VehicleDims{1.8, 4.8};
  scenario.duration = duration;
  scenario.dt_sample = kDt;
  return scenario;
}

SvMotion cruising(double s0, double v, double l)
{
  SvMotion m;
  m.s0 = s0;
  m.v0 = v;
  m.l_from = l;
  m.l_to = l;
  return m;
}

}  // namespace

Archetype parse_archetype(const std::string & name)
{
  if (name == "CutInSlowFront" || name == "slow-front") return Archetype::kCutInSlowFront;
  if (name == "CutInCloseDecel" || name == "close-decel") return Archetype::kCutInCloseDecel;
  if (name == "CutInFastRear" || name == "fast-rear") return Archetype::kCutInFastRear;
  throw InputError("unknown archetype '" + name + "'");
}

std::string archetype_name(Archetype archetype)
{
  switch (archetype) {
    case Archetype::kCutInSlowFront:
      return "CutInSlowFront";
    case Archetype::kCutInCloseDecel:
      return "CutInCloseDecel";
    case Archetype::kCutInFastRear:
      return "CutInFastRear";
  }
  throw InputError("unknown archetype");
}

Scenario generate_scenario(
  Archetype archetype, std::uint64_t seed, const GeneratorOverrides & overrides)
{
  Sampler rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(archetype) + 1);
  Params params{};
  params.duration = 8.0;

  // Randomized draws happen before overrides so that overriding one key leaves the others intact.
  switch (archetype) {
    case Archetype::kCutInSlowFront:
      params.ev_v = 32.0;
      params.cutter_v = 25.0;
      params.cutter_gap = rng.uniform(45.0, 65.0);
      params.cut_time = rng.uniform(2.5, 3.5);
      params.lane_change_time = rng.uniform(2.5, 3.5);
      params.cutter_decel = 0.0;
      break;
    case Archetype::kCutInCloseDecel:
      params.ev_v = 32.0;
      params.cutter_v = 29.0;
      params.cutter_gap = rng.uniform(10.0, 18.0);
      params.cut_time = rng.uniform(2.5, 3.5);
      params.lane_change_time = rng.uniform(3.5, 4.5);
      params.cutter_decel = rng.uniform(0.5, 1.5);
      break;
    case Archetype::kCutInFastRear:
      params.ev_v = 30.0;
      params.cutter_v = 33.0;
      params.cutter_gap = rng.uniform(-30.0, -18.0);
      params.cut_time = rng.uniform(3.0, 4.5);
      params.lane_change_time = rng.uniform(2.5, 3.5);
      params.cutter_decel = 0.0;
      break;
  }
  const bool bg_ahead = rng.coin(0.5);
  const double bg_gap = bg_ahead ? rng.uniform(90.0, 140.0) : rng.uniform(-70.0, -40.0);
  const double bg_dv = rng.uniform(-2.0, 0.0);

  apply_overrides(params, overrides);

  Scenario scenario = base_scenario(params.ev_v, params.duration);
  const double s_ev = kEvStartS;

  SvMotion cutter = cruising(s_ev + params.cutter_gap, params.cutter_v, 0.0);
  cutter.lc_start = params.cut_time;
  cutter.lc_duration = params.lane_change_time;
  double bg_lane = 0.0;
  switch (archetype) {
    case Archetype::kCutInSlowFront:
      cutter.l_from = kLaneWidth;
      bg_lane = -kLaneWidth;
      break;
    case Archetype::kCutInCloseDecel:
      cutter.l_from = kLaneWidth;
      cutter.accel = -params.cutter_decel;
      cutter.accel_start = params.cut_time;
      cutter.v_floor = std::max(1.0, params.cutter_v - 8.0);
      bg_lane = -kLaneWidth;
      break;
    case Archetype::kCutInFastRear:
      cutter.l_from = -kLaneWidth;
      bg_lane = kLaneWidth;
      break;
  }
  cutter.l_to = 0.0;
  scenario.sv_tracks.push_back(sample_track("tv", cutter, params.duration));

  const SvMotion background = cruising(s_ev + bg_gap, params.ev_v + bg_dv, bg_lane);
  scenario.sv_tracks.push_back(sample_track("bg", background, params.duration));
  return scenario;
}

}  // namespace hwplan::core
