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

#include "hwplan/geometry/vehicle_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hwplan::geometry
{

GeometryModel GeometryModel::make(double width, double length, int num_segments, double phi_max)
{
  const LinearParams fit = fit_linear_params(width, phi_max);
  GeometryModel model;
  model.width = width;
  model.length = length;
  model.a = fit.a;
  model.b = fit.b;
  model.num_segments = num_segments;
  model.phi_max = phi_max;
  return model;
}

double GeometryModel::max_slope() const { return std::tan(phi_max); }

double exact_half_width(double l_prime, double width)
{
  return 0.5 * width * std::sqrt(1.0 + l_prime * l_prime);
}

LinearParams fit_linear_params(double width, double phi_max)
{
  if (!(phi_max > 0.0 && phi_max < 0.5 * M_PI)) {
    throw std::invalid_argument("fit_linear_params: phi_max must lie in (0, pi/2)");
  }
  const double x1 = std::tan(phi_max);
  const double b = exact_half_width(0.0, width);
  return {(exact_half_width(x1, width) - b) / x1, b};
}

double approx_half_width(double l_prime, const GeometryModel & model, bool * clamped)
{
  const double limit = model.max_slope();
  const double magnitude = std::abs(l_prime);
  if (clamped != nullptr) {
    *clamped = magnitude > limit;
  }
  return model.a * std::min(magnitude, limit) + model.b;
}

MaxError max_approx_error(const GeometryModel & model)
{
  const double limit = model.max_slope();
  auto gap = [&](double x) {
    return approx_half_width(x, model) - exact_half_width(x, model.width);
  };

  constexpr int kSamples = 200001;
  const double step = 2.0 * limit / (kSamples - 1);
  int best = 0;
  double best_gap = gap(-limit);
  for (int k = 1; k < kSamples; ++k) {
    const double g = gap(-limit + k * step);
    if (g > best_gap) {
      best_gap = g;
      best = k;
    }
  }

  // f2 - f1 is concave on each half-line, so golden-section over the neighbouring bracket
  // converges to the local maximum.
  double lo = -limit + std::max(0, best - 1) * step;
  double hi = -limit + std::min(kSamples - 1, best + 1) * step;
  if (lo < 0.0 && hi > 0.0) {
    // The bracket straddles the kink at 0; keep the half containing the sample.
    const double centre = -limit + best * step;
    (centre >= 0.0 ? lo : hi) = 0.0;
  }
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double g1 = gap(x1);
  double g2 = gap(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    if (g1 < g2) {
      lo = x1;
      x1 = x2;
      g1 = g2;
      x2 = lo + inv_phi * (hi - lo);
      g2 = gap(x2);
    } else {
      hi = x2;
      x2 = x1;
      g2 = g1;
      x1 = hi - inv_phi * (hi - lo);
      g1 = gap(x1);
    }
  }
  const double x_star = 0.5 * (lo + hi);
  const double g_star = gap(x_star);
  if (g_star >= best_gap) {
    return {g_star, x_star};
  }
  return {best_gap, -limit + best * step};
}

std::vector<double> segment_offsets(int num_segments)
{
  if (num_segments < 1) {
    throw std::invalid_argument("segment_offsets: lambda must be >= 1");
  }
  std::vector<double> offsets(static_cast<std::size_t>(num_segments));
  const double centre = 0.5 * (num_segments + 1);
  for (int j = 1; j <= num_segments; ++j) {
    offsets[static_cast<std::size_t>(j - 1)] = j - centre;
  }
  return offsets;
}

FootprintBounds footprint_bounds(
  double l, double l_prime, double cell_len, const GeometryModel & model)
{
  if (!(cell_len > 0.0)) {
    throw std::invalid_argument("footprint_bounds: cell_len must be positive");
  }
  const double eps = approx_half_width(l_prime, model);
  const double ds_seg = cell_len / model.num_segments;
  FootprintBounds bounds;
  for (double coeff : segment_offsets(model.num_segments)) {
    const double shift = coeff * ds_seg * l_prime;
    bounds.ub.push_back(l + eps + shift);
    bounds.lb.push_back(l - eps + shift);
  }
  return bounds;
}

}  // namespace hwplan::geometry
