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

#ifndef HWPLAN__GEOMETRY__OBB_HPP_
#define HWPLAN__GEOMETRY__OBB_HPP_

#include <array>

#include "hwplan/core/types.hpp"

namespace hwplan::geometry
{

/// Oriented rectangle. half_length runs along the heading direction.
struct Obb
{
  core::Point2 center{};
  double heading{0.0};
  double half_length{0.5};
  double half_width{0.5};
};

/// Corners in counter-clockwise order, starting at the rear-right corner.
std::array<core::Point2, 4> obb_corners(const Obb & box);

/// Separating-axis test over the four edge normals. Only positive-area overlap counts;
/// touching boundaries report false.
bool obb_intersect(const Obb & p, const Obb & q);

}  // namespace hwplan::geometry

#endif  // HWPLAN__GEOMETRY__OBB_HPP_
