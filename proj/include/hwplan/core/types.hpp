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

#ifndef HWPLAN__CORE__TYPES_HPP_
#define HWPLAN__CORE__TYPES_HPP_

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace hwplan::core
{

/// Raised for malformed or invariant-violating inputs (scenario files, config, profiles).
class InputError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct Point2
{
  double x{0.0};
  double y{0.0};
};

/// One sample of a discretized trajectory in the s-l-t space.
struct TrajectoryPoint
{
  double s{0.0};  // m
  double l{0.0};  // m
  double t{0.0};  // s
};

struct VehicleDims
{
  double width{1.8};   // m
  double length{4.8};  // m

  bool valid() const { return width > 0.0 && length > 0.0; }
};

/// Ego state in the Frenet frame. heading is the angle between velocity and the s-axis.
struct VehicleState
{
  double s{0.0};
  double l{0.0};
  double v{0.0};
  double a{0.0};
  double heading{0.0};
  VehicleDims dims{};
};

struct RoadModel
{
  std::vector<Point2> reference_line;
  double l_road_lb{-5.625};
  double l_road_ub{5.625};
  std::vector<double> lane_centerlines;
  double lane_width{3.75};
};

struct SvPose
{
  double s{0.0};
  double l{0.0};
  double heading{0.0};
  double v{0.0};
};

/// Surrounding-vehicle motion. Pose k is sampled at t = k * dt of the owning scenario.
struct SvTrack
{
  std::string id;
  VehicleDims dims{};
  std::vector<SvPose> poses;

  /// Pose at step index k; indices past the end hold the last pose.
  const SvPose & pose_at(std::size_t k) const
  {
    return k < poses.size() ? poses[k] : poses.back();
  }
};

struct Scenario
{
  RoadModel road;
  VehicleState ev_initial;
  std::vector<SvTrack> sv_tracks;
  double duration{8.0};   // s
  double dt_sample{0.1};  // s
};

/// Predicted motion of one surrounding vehicle over a planning horizon; poses[i] is the pose at
/// t0 + i * dt (i = 0 is the current observation).
struct SvPrediction
{
  std::string id;
  VehicleDims dims{};
  std::vector<SvPose> poses;

  const SvPose & pose_at(std::size_t i) const
  {
    return i < poses.size() ? poses[i] : poses.back();
  }
};

enum class SolveMode { kBranchAndBound, kConvexEquivalent };

/// Planner parameters. Defaults reproduce the reference highway configuration.
struct PlannerConfig
{
  int num_steps{30};          // N
  double dt{0.1};             // trajectory discretization, s
  double dt_replan{0.1};      // replanning period, s
  int num_segments{6};        // lambda
  double l_mar{0.3};          // m
  double l_buf{0.5};          // m
  double w_cell{0.5};         // s
  std::array<double, 6> weights{1.0, 500.0, 500.0, 500.0, 500.0, 500.0};
  double l1_min{-std::tan(std::numbers::pi / 3.0)};
  double l1_max{std::tan(std::numbers::pi / 3.0)};
  double l2_min{-3.0};
  double l2_max{3.0};
  double l3_min{-3.0};
  double l3_max{3.0};
  double phi_max{std::numbers::pi / 3.0};
  double v_max{50.0};
  int k_min_steps{10};

  SolveMode mode{SolveMode::kBranchAndBound};
  double qp_tol{1e-6};
  int qp_max_iter{20000};
  double min_step_ds{0.1};  // m, floor on positional spacing between optimization steps

  /// Throws InputError naming the first violated invariant.
  void validate() const;
};

}  // namespace hwplan::core

#endif  // HWPLAN__CORE__TYPES_HPP_
