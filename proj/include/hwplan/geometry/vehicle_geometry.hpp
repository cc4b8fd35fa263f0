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

#ifndef HWPLAN__GEOMETRY__VEHICLE_GEOMETRY_HPP_
#define HWPLAN__GEOMETRY__VEHICLE_GEOMETRY_HPP_

#include <vector>

namespace hwplan::geometry
{

/// Lateral half-extent model of the ego body as a function of path slope l' = tan(heading).
///
/// The exact half width f1(l') = (W/2) sqrt(1 + l'^2) is replaced by the chord
/// f2(l') = a |l'| + b through (0, f1(0)) and (+-tan(phi_max), f1(tan(phi_max))). Since f1 is
/// convex, f2 >= f1 on the whole slope domain.
struct GeometryModel
{
  double width{1.8};
  double length{4.8};
  double a{0.0};
  double b{0.9};
  int num_segments{6};
  double phi_max{1.0471975511965976};

  static GeometryModel make(double width, double length, int num_segments, double phi_max);

  double max_slope() const;
};

struct LinearParams
{
  double a{0.0};
  double b{0.0};
};

struct MaxError
{
  double error{0.0};
  double at_l_prime{0.0};
};

/// Per-segment lateral footprint of the ego body; index j = 0..lambda-1.
struct FootprintBounds
{
  std::vector<double> ub;
  std::vector<double> lb;
};

double exact_half_width(double l_prime, double width);

/// Requires 0 < phi_max < pi/2.
LinearParams fit_linear_params(double width, double phi_max);

/// a |l'| + b, with |l'| clamped to tan(phi_max). \p clamped, when given, reports whether the
/// clamp was active.
double approx_half_width(double l_prime, const GeometryModel & model, bool * clamped = nullptr);

/// Largest over-approximation gap f2 - f1 on [-tan(phi_max), tan(phi_max)], found by dense
/// sampling followed by golden-section refinement around the best sample.
MaxError max_approx_error(const GeometryModel & model);

/// Centered segment coefficients j - (lambda + 1) / 2 for j = 1..lambda.
std::vector<double> segment_offsets(int num_segments);

/// ub_j = l + eps + coeff_j * ds_seg * l', lb_j = l - eps + coeff_j * ds_seg * l', where
/// eps = approx_half_width(l') and ds_seg = cell_len / lambda.
FootprintBounds footprint_bounds(double l, double l_prime, double cell_len, const GeometryModel & model);

}  // namespace hwplan::geometry

#endif  // HWPLAN__GEOMETRY__VEHICLE_GEOMETRY_HPP_
