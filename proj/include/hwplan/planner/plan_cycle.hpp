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

#ifndef HWPLAN__PLANNER__PLAN_CYCLE_HPP_
#define HWPLAN__PLANNER__PLAN_CYCLE_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hwplan/corridor/corridor.hpp"
#include "hwplan/planner/miqp.hpp"
#include "hwplan/velocity/profile.hpp"

namespace hwplan::planner
{

/// Snapshot handed to one planning cycle.
struct CycleInput
{
  const core::RoadModel * road{nullptr};
  core::VehicleState ev;
  std::vector<core::SvPrediction> predictions;  // poses[i] at t0 + i dt
  double t0{0.0};
  double l2{0.0};  // path curvature carried over from the previous plan
  std::optional<double> previous_reference;
};

class ProfileProvider
{
public:
  virtual ~ProfileProvider() = default;
  virtual velocity::VelocityProfile profile(
    const CycleInput & input, const core::PlannerConfig & config) const = 0;
  virtual std::string name() const = 0;
};

/// Holds the current speed.
class ConstantSpeedProvider : public ProfileProvider
{
public:
  velocity::VelocityProfile profile(
    const CycleInput & input, const core::PlannerConfig & config) const override;
  std::string name() const override { return "constant"; }
};

/// Headway keeping behind the nearest vehicle overlapping the ego lane band.
class GapKeepingProvider : public ProfileProvider
{
public:
  velocity::VelocityProfile profile(
    const CycleInput & input, const core::PlannerConfig & config) const override;
  std::string name() const override { return "gap-keeping"; }
};

/// Replays a profile supplied from outside, e.g. an exchange file.
class FixedProfileProvider : public ProfileProvider
{
public:
  explicit FixedProfileProvider(velocity::VelocityProfile profile) : profile_(std::move(profile)) {}
  velocity::VelocityProfile profile(
    const CycleInput & input, const core::PlannerConfig & config) const override;
  std::string name() const override { return "file"; }

private:
  velocity::VelocityProfile profile_;
};

/// Nearest vehicle ahead whose body overlaps the ego's lateral band widened by l_buf.
std::optional<velocity::LeadVehicle> find_lead(
  const core::VehicleState & ev, const std::vector<core::SvPrediction> & predictions,
  const core::PlannerConfig & config);

enum class PlanStatus { kSolved, kCorridorEmpty, kInfeasible, kSolverFailure };

std::string to_string(PlanStatus status);

struct StageTimings
{
  double profile_ms{0.0};
  double corridor_ms{0.0};
  double optimization_ms{0.0};
  double total_ms{0.0};
};

struct PlanOutcome
{
  PlanStatus status{PlanStatus::kSolverFailure};
  std::optional<PathSolution> solution;
  std::optional<Trajectory> trajectory;
  velocity::VelocityProfile profile;
  std::vector<double> positions;
  corridor::Corridor corridor;
  std::vector<double> l_ref;
  InitialLateralState init;
  StageTimings timings;
  int nodes{0};
  std::string message;
};

/// profile -> positions -> corridor -> path optimization -> trajectory. The status names the
/// first failing stage; nothing is thrown past the outcome.
PlanOutcome plan_cycle(
  const CycleInput & input, const core::PlannerConfig & config, const ProfileProvider & provider,
  corridor::CorridorTrace * trace = nullptr);

}  // namespace hwplan::planner

#endif  // HWPLAN__PLANNER__PLAN_CYCLE_HPP_
