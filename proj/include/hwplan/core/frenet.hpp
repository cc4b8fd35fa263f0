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

#ifndef HWPLAN__CORE__FRENET_HPP_
#define HWPLAN__CORE__FRENET_HPP_

#include <vector>

#include "hwplan/core/types.hpp"

namespace hwplan::core
{

/// Cumulative arc length at every reference-line vertex (first entry 0).
std::vector<double> cumulative_arc_length(const std::vector<Point2> & reference_line);

/// Maps a Frenet point onto the Cartesian plane. The reference line is parameterized by arc
/// length; the lateral offset is applied along the left normal of the segment containing s.
/// Throws InputError when s lies outside [0, total arc length].
Point2 frenet_to_cartesian(const RoadModel & road, const TrajectoryPoint & p);

}  // namespace hwplan::core

#endif  // HWPLAN__CORE__FRENET_HPP_
