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

#include "hwplan/geometry/obb.hpp"

#include <cmath>

namespace hwplan::geometry
{

namespace
{

// Projections that overlap by less than this are treated as touching.
constexpr double kContactTolerance = 1e-12;

double projected_radius(const Obb & box, double ax, double ay)
{
  const double c = std::cos(box.heading);
  const double s = std::sin(box.heading);
  return box.half_length * std::abs(c * ax + s * ay) + box.half_width * std::abs(-s * ax + c * ay);
}

}  // namespace

std::array<core::Point2, 4> obb_corners(const Obb & box)
{
  const double c = std::cos(box.heading);
  const double s = std::sin(box.heading);
  const double local[4][2] = {
    {-box.half_length, -box.half_width},
    {box.half_length, -box.half_width},
    {box.half_length, box.half_width},
    {-box.half_length, box.half_width}};
  std::array<core::Point2, 4> corners{};
  for (int k = 0; k < 4; ++k) {
    corners[k] = {
      box.center.x + c * local[k][0] - s * local[k][1],
      box.center.y + s * local[k][0] + c * local[k][1]};
  }
  return corners;
}

bool obb_intersect(const Obb & p, const Obb & q)
{
  const double dx = q.center.x - p.center.x;
  const double dy = q.center.y - p.center.y;
  const double headings[2] = {p.heading, q.heading};
  for (double heading : headings) {
    const double c = std::cos(heading);
    const double s = std::sin(heading);
    const double axes[2][2] = {{c, s}, {-s, c}};
    for (const auto & axis : axes) {
      const double distance = std::abs(dx * axis[0] + dy * axis[1]);
      const double reach = projected_radius(p, axis[0], axis[1]) + projected_radius(q, axis[0], axis[1]);
      if (distance >= reach - kContactTolerance) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace hwplan::geometry
