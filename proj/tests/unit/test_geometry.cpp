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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "hwplan/geometry/obb.hpp"
#include "hwplan/geometry/vehicle_geometry.hpp"

namespace
{

using namespace hwplan::geometry;
using hwplan::core::Point2;

constexpr double kPi = std::numbers::pi;

GeometryModel default_model() { return GeometryModel::make(1.8, 4.8, 6, kPi / 3.0); }

TEST(ExactHalfWidth, HandValues)
{
  EXPECT_DOUBLE_EQ(exact_half_width(0.0, 1.8), 0.9);
  EXPECT_NEAR(exact_half_width(std::tan(kPi / 3.0), 1.8), 1.8, 1e-12);
  for (double x : {0.1, 0.7, 1.3, 5.0}) {
    EXPECT_EQ(exact_half_width(-x, 2.3), exact_half_width(x, 2.3));
  }
}

TEST(FitLinearParams, ReferenceValues)
{
  const LinearParams p = fit_linear_params(1.8, kPi / 3.0);
  EXPECT_NEAR(p.a, 0.5196, 5e-4);
  EXPECT_EQ(p.b, 0.9);

  const LinearParams q = fit_linear_params(2.0, kPi / 3.0);
  EXPECT_EQ(q.b, 1.0);
  EXPECT_NEAR(q.a, 1.0 / std::tan(kPi / 3.0), 1e-12);
  EXPECT_NEAR(q.a, 0.5774, 1e-4);
  EXPECT_THROW(fit_linear_params(1.8, 0.0), std::invalid_argument);
  EXPECT_THROW(fit_linear_params(1.8, kPi / 2.0), std::invalid_argument);
}

TEST(FitLinearParams, EndpointsAreExact)
{
  for (double w : {1.5, 1.8, 2.5}) {
    for (double phi : {0.2, 0.7, kPi / 3.0, 1.4}) {
      const GeometryModel m = GeometryModel::make(w, 4.8, 6, phi);
      const double x = std::tan(phi);
      EXPECT_LE(std::abs(approx_half_width(x, m) - exact_half_width(x, w)), 1e-12);
      EXPECT_LE(std::abs(approx_half_width(-x, m) - exact_half_width(-x, w)), 1e-12);
    }
  }
}

TEST(ApproxHalfWidth, ValuesAndClamp)
{
  const GeometryModel m = default_model();
  EXPECT_DOUBLE_EQ(approx_half_width(0.0, m), 0.9);
  const double x = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(approx_half_width(x, m), 1.2674, 1e-4);
  EXPECT_NEAR(exact_half_width(x, 1.8), 1.1023, 1e-4);
  EXPECT_NEAR(approx_half_width(x, m) - exact_half_width(x, 1.8), 0.1652, 1e-3);
  EXPECT_NEAR(approx_half_width(std::tan(kPi / 3.0), m), 1.8, 1e-12);

  bool clamped = false;
  EXPECT_NEAR(approx_half_width(3.0, m, &clamped), 1.8, 1e-12);
  EXPECT_TRUE(clamped);
  approx_half_width(0.5, m, &clamped);
  EXPECT_FALSE(clamped);
}

TEST(MaxApproxError, ReferenceModelAndSamplingOracle)
{
  const GeometryModel m = default_model();
  const MaxError e = max_approx_error(m);
  EXPECT_NEAR(e.error, 0.1652, 1e-3);
  EXPECT_NEAR(std::abs(e.at_l_prime), 0.7071, 1e-2);

  // Over-approximation on 1e5 uniform samples, bounded by the reported maximum.
  const GeometryModel wide = GeometryModel::make(2.0, 4.8, 6, kPi / 3.0);
  for (const GeometryModel & model : {m, wide}) {
    const MaxError me = max_approx_error(model);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-model.max_slope(), model.max_slope());
    double worst = 0.0;
    for (int k = 0; k < 100000; ++k) {
      const double x = u(rng);
      const double gap = approx_half_width(x, model) - exact_half_width(x, model.width);
      ASSERT_GE(gap, -1e-12);
      worst = std::max(worst, gap);
    }
    EXPECT_LE(worst, me.error + 1e-9);
    EXPECT_GE(worst, me.error - 1e-4);
  }
}

TEST(MaxApproxError, VanishesAsPhiShrinks)
{
  double previous = 1e9;
  for (double phi : {0.5, 0.1, 0.01, 1e-3}) {
    const double e = max_approx_error(GeometryModel::make(1.8, 4.8, 6, phi)).error;
    EXPECT_LT(e, previous);
    previous = e;
  }
  EXPECT_LT(previous, 1e-6);
}

TEST(SegmentOffsets, CentredCoefficients)
{
  EXPECT_EQ(segment_offsets(6), (std::vector<double>{-2.5, -1.5, -0.5, 0.5, 1.5, 2.5}));
  EXPECT_EQ(segment_offsets(1), (std::vector<double>{0.0}));
  EXPECT_EQ(segment_offsets(3), (std::vector<double>{-1.0, 0.0, 1.0}));
  EXPECT_THROW(segment_offsets(0), std::invalid_argument);
}

TEST(FootprintBounds, HandEvaluation)
{
  const GeometryModel m = default_model();
  const FootprintBounds straight = footprint_bounds(0.0, 0.0, 16.0, m);
  for (int j = 0; j < 6; ++j) {
    EXPECT_DOUBLE_EQ(straight.ub[j], 0.9);
    EXPECT_DOUBLE_EQ(straight.lb[j], -0.9);
  }
  const FootprintBounds sloped = footprint_bounds(0.0, 0.1, 16.0, m);
  EXPECT_NEAR(sloped.ub[5], 0.1 * m.a + 0.9 + 2.5 * (16.0 / 6.0) * 0.1, 1e-12);
  EXPECT_NEAR(sloped.ub[5], 1.6185, 5e-4);  // rounded hand value; exactly 1.61863...
  for (int j = 0; j < 6; ++j) {
    EXPECT_NEAR(sloped.ub[j] - sloped.lb[j], 2.0 * approx_half_width(0.1, m), 1e-12);
  }
}

TEST(FootprintBounds, AffineForFixedSign)
{
  const GeometryModel m = default_model();
  const double h = 1e-3;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ul(-3.0, 3.0);
  std::uniform_real_distribution<double> us(0.05, 1.5);
  for (int trial = 0; trial < 200; ++trial) {
    const double l = ul(rng);
    const double sign = trial % 2 == 0 ? 1.0 : -1.0;
    const double lp = sign * us(rng);
    const double len = 5.2 + 20.0 * std::abs(ul(rng)) / 3.0;
    const auto base = footprint_bounds(l, lp, len, m);
    const auto dl = footprint_bounds(l + h, lp, len, m);
    const auto dp = footprint_bounds(l, lp + h, len, m);
    const auto dp2 = footprint_bounds(l, lp + 2.0 * h, len, m);
    const auto offsets = segment_offsets(6);
    for (int j = 0; j < 6; ++j) {
      EXPECT_NEAR((dl.ub[j] - base.ub[j]) / h, 1.0, 1e-9);
      const double slope = (dp.ub[j] - base.ub[j]) / h;
      EXPECT_NEAR(slope, sign * m.a + offsets[j] * len / 6.0, 1e-8);
      // Second difference vanishes: affine in l'.
      EXPECT_NEAR(dp2.ub[j] - 2.0 * dp.ub[j] + base.ub[j], 0.0, 1e-12);
      EXPECT_NEAR(dp2.lb[j] - 2.0 * dp.lb[j] + base.lb[j], 0.0, 1e-12);
    }
  }
}

TEST(ObbCorners, RotationCases)
{
  const auto unit = obb_corners({{0.0, 0.0}, 0.0, 1.0, 1.0});
  for (const Point2 & c : unit) {
    EXPECT_DOUBLE_EQ(std::abs(c.x), 1.0);
    EXPECT_DOUBLE_EQ(std::abs(c.y), 1.0);
  }
  // Counter-clockwise from the rear-right corner.
  EXPECT_DOUBLE_EQ(unit[0].x, -1.0);
  EXPECT_DOUBLE_EQ(unit[0].y, -1.0);
  EXPECT_DOUBLE_EQ(unit[1].x, 1.0);
  EXPECT_DOUBLE_EQ(unit[1].y, -1.0);

  const auto turned = obb_corners({{0.0, 0.0}, kPi / 2.0, 2.0, 1.0});
  for (const Point2 & c : turned) {
    EXPECT_NEAR(std::abs(c.x), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(c.y), 2.0, 1e-12);
  }

  const auto diamond = obb_corners({{0.0, 0.0}, kPi / 4.0, 1.0, 1.0});
  for (const Point2 & c : diamond) {
    EXPECT_NEAR(std::hypot(c.x, c.y), std::sqrt(2.0), 1e-12);
    EXPECT_TRUE(std::abs(c.x) < 1e-12 || std::abs(c.y) < 1e-12);
  }
}

TEST(ObbIntersect, BasicCases)
{
  const Obb a{{0.0, 0.0}, 0.0, 1.0, 1.0};
  EXPECT_TRUE(obb_intersect(a, a));
  EXPECT_FALSE(obb_intersect(a, {{100.0, 0.0}, 0.3, 1.0, 1.0}));
  EXPECT_FALSE(obb_intersect(a, {{2.0, 0.0}, 0.0, 1.0, 1.0}));  // edge contact
  EXPECT_TRUE(obb_intersect(a, {{1.999, 0.0}, 0.0, 1.0, 1.0}));
  // Diamond whose vertex pokes into the square although the centres are far apart.
  EXPECT_TRUE(obb_intersect(a, {{2.3, 0.0}, kPi / 4.0, 1.0, 1.0}));
  EXPECT_FALSE(obb_intersect(a, {{2.5, 0.0}, kPi / 4.0, 1.0, 1.0}));
}

Obb random_box(std::mt19937_64 & rng)
{
  std::uniform_real_distribution<double> pos(-4.0, 4.0);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  std::uniform_real_distribution<double> dim(0.3, 2.5);
  return {{pos(rng), pos(rng)}, ang(rng), dim(rng), dim(rng)};
}

TEST(ObbIntersect, Symmetric)
{
  std::mt19937_64 rng(21);
  for (int k = 0; k < 10000; ++k) {
    const Obb p = random_box(rng);
    const Obb q = random_box(rng);
    ASSERT_EQ(obb_intersect(p, q), obb_intersect(q, p));
  }
}

bool strictly_inside(const Obb & box, const Point2 & pt)
{
  const double dx = pt.x - box.center.x;
  const double dy = pt.y - box.center.y;
  const double u = dx * std::cos(box.heading) + dy * std::sin(box.heading);
  const double v = -dx * std::sin(box.heading) + dy * std::cos(box.heading);
  return std::abs(u) < box.half_length && std::abs(v) < box.half_width;
}

/// Overlap area by clipping q's polygon against p's four edges.
double clipped_area(const Obb & p, const Obb & q)
{
  auto poly = std::vector<Point2>();
  for (const Point2 & c : obb_corners(q)) {
    poly.push_back(c);
  }
  const auto pc = obb_corners(p);
  for (int e = 0; e < 4; ++e) {
    const Point2 a = pc[e];
    const Point2 b = pc[(e + 1) % 4];
    auto side = [&](const Point2 & x) {
      return (b.x - a.x) * (x.y - a.y) - (b.y - a.y) * (x.x - a.x);
    };
    std::vector<Point2> out;
    for (std::size_t k = 0; k < poly.size(); ++k) {
      const Point2 cur = poly[k];
      const Point2 nxt = poly[(k + 1) % poly.size()];
      const double sc = side(cur);
      const double sn = side(nxt);
      if (sc >= 0.0) {
        out.push_back(cur);
      }
      if ((sc >= 0.0) != (sn >= 0.0)) {
        const double t = sc / (sc - sn);
        out.push_back({cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)});
      }
    }
    poly = out;
    if (poly.empty()) {
      return 0.0;
    }
  }
  double area = 0.0;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const Point2 & u = poly[k];
    const Point2 & v = poly[(k + 1) % poly.size()];
    area += u.x * v.y - v.x * u.y;
  }
  return 0.5 * std::abs(area);
}

TEST(ObbIntersect, AgreesWithPointSampling)
{
  std::mt19937_64 rng(33);
  constexpr int kGrid = 120;
  int disagreements = 0;
  for (int k = 0; k < 1000; ++k) {
    const Obb p = random_box(rng);
    const Obb q = random_box(rng);
    // Rasterize p on a cell-centred grid in its own frame and test membership in q.
    bool hit = false;
    for (int a = 0; a < kGrid && !hit; ++a) {
      for (int b = 0; b < kGrid && !hit; ++b) {
        const double u = ((a + 0.5) / kGrid * 2.0 - 1.0) * p.half_length;
        const double v = ((b + 0.5) / kGrid * 2.0 - 1.0) * p.half_width;
        const Point2 pt{
          p.center.x + u * std::cos(p.heading) - v * std::sin(p.heading),
          p.center.y + u * std::sin(p.heading) + v * std::cos(p.heading)};
        hit = strictly_inside(q, pt);
      }
    }
    const bool sat = obb_intersect(p, q);
    if (hit != sat) {
      // The only admissible mismatch is a sliver thinner than the raster resolution.
      const double cell = 4.0 * p.half_length * p.half_width / (kGrid * kGrid);
      EXPECT_TRUE(sat && !hit) << "sampled overlap that SAT missed, pair " << k;
      EXPECT_LT(clipped_area(p, q), 4.0 * cell) << "pair " << k;
      ++disagreements;
    }
  }
  EXPECT_LT(disagreements, 10);
}

}  // namespace
