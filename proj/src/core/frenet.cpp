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

#include "hwplan/core/frenet.hpp"

#include <cmath>
#include <string>

namespace hwplan::core
{

std::vector<double> cumulative_arc_length(const std::vector<Point2> & reference_line)
{
  std::vector<double> arc(reference_line.size(), 0.0);
  for (std::size_t k = 1; k < reference_line.size(); ++k) {
    const double dx = reference_line[k].x - reference_line[k - 1].x;
    const double dy = reference_line[k].y - reference_line[k - 1].y;
    arc[k] = arc[k - 1] + std::hypot(dx, dy);
  }
  return arc;
}

Point2 frenet_to_cartesian(const RoadModel & road, const TrajectoryPoint & p)
{
  const auto & line = road.reference_line;
  if (line.size() < 2) {
    throw InputError("reference line needs at least two points");
  }
  const auto arc = cumulative_arc_length(line);
  if (p.s < 0.0 || p.s > arc.back()) {
    throw InputError(
      "s = " + std::to_string(p.s) + " outside reference line range [0, " +
      std::to_string(arc.back()) + "]");
  }

  // Segment k spans [arc[k], arc[k+1]); s equal to the total length falls on the last segment.
  std::size_t k = 0;
  while (k + 2 < line.size() && p.s >= arc[k + 1]) {
    ++k;
  }
  const double seg_len = arc[k + 1] - arc[k];
  const double ux = (line[k + 1].x - line[k].x) / seg_len;
  const double uy = (line[k + 1].y - line[k].y) / seg_len;
  const double along = p.s - arc[k];
  return {line[k].x + along * ux - p.l * uy, line[k].y + along * uy + p.l * ux};
}

}  // namespace hwplan::core
