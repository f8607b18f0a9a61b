// Copyright 2026 The mixedlp Authors
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

#include "mixedlp/core.hpp"
#include "mixedlp/quadrature.hpp"
#include "mixedlp/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace mixedlp {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(UnitBallVolume, KnownValues) {
  EXPECT_NEAR(unit_ball_volume(0), 1.0, 1e-15);
  EXPECT_NEAR(unit_ball_volume(1), 2.0, 1e-14);
  EXPECT_NEAR(unit_ball_volume(2), kPi, 1e-14);
  EXPECT_NEAR(unit_ball_volume(3), 4.0 * kPi / 3.0, 1e-14);
  EXPECT_NEAR(unit_ball_volume(4), kPi * kPi / 2.0, 1e-13);
  EXPECT_THROW(unit_ball_volume(-1.0), std::domain_error);
}

TEST(LyzConstant, KnownValues) {
  // c_{n,p} = ω_{n+p} / (ω_2 ω_n ω_{p−1}).
  EXPECT_NEAR(lyz_constant(1, 1), 0.5, 1e-14);
  EXPECT_NEAR(lyz_constant(2, 2), 0.25, 1e-14);
  EXPECT_NEAR(lyz_constant(3, 1), unit_ball_volume(4) / (kPi * unit_ball_volume(3)), 1e-14);
}

TEST(SphereMoments, AgainstClosedForms) {
  EXPECT_NEAR(sphere_area(3), 4.0 * kPi, 1e-13);
  EXPECT_NEAR(sphere_area(2), 2.0 * kPi, 1e-13);
  // ∫_{S^2} |u·e| = 2π, ∫_{S^2} (u·e)² = 4π/3, ∫_{S^1} |cos θ| = 4.
  EXPECT_NEAR(sphere_abs_moment(3, 1.0), 2.0 * kPi, 1e-12);
  EXPECT_NEAR(sphere_abs_moment(3, 2.0), 4.0 * kPi / 3.0, 1e-12);
  EXPECT_NEAR(sphere_abs_moment(2, 1.0), 4.0, 1e-12);
  EXPECT_NEAR(sphere_abs_moment(2, 2.0), kPi, 1e-12);
}

TEST(Powers, FastPathsMatchPow) {
  for (double p : {1.0, 1.5, 2.0, 3.0, 2.5, -2.0}) {
    for (double x : {0.3, 1.0, 2.7}) {
      EXPECT_NEAR(pos_pow(x, p), std::pow(x, p), 1e-14 * std::pow(x, p)) << p << " " << x;
      EXPECT_NEAR(abs_pow(-x, p), std::pow(x, p), 1e-14 * std::pow(x, p)) << p << " " << x;
    }
  }
}

TEST(LinMap, DeterminantInverseAndCondition) {
  Mat<3> m;
  m << 2, 1, 0, 0, 1, 0, 0, 0, 0.5;
  const LinMap<3> phi(m);
  EXPECT_NEAR(phi.det(), 1.0, 1e-15);
  EXPECT_TRUE(phi.is_special());
  const Vec<3> x(0.3, -1.2, 2.0);
  EXPECT_LT((phi.inverse()(phi(x)) - x).norm(), 1e-14);
  EXPECT_LT((phi.inverse_transpose().matrix() - m.inverse().transpose()).norm(), 1e-14);
  EXPECT_NEAR(LinMap<2>(Mat<2>(Eigen::DiagonalMatrix<double, 2>(4.0, 1.0))).condition_number(), 4.0, 1e-12);
  EXPECT_THROW(LinMap<2>(Mat<2>::Zero()).inverse(), std::domain_error);
  EXPECT_FALSE(LinMap<2>::scaling(2.0).is_special());
}

TEST(Rng, SeedReproducibility) {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.bits(), b.bits());
  EXPECT_NE(Rng(42).bits(), c.bits());
  EXPECT_NE(Rng::stream(1, 0).bits(), Rng::stream(1, 1).bits());
  EXPECT_EQ(Rng::stream(9, 4).bits(), Rng::stream(9, 4).bits());
}

TEST(Rng, Distributions) {
  Rng r(7);
  double mean = 0.0, sq = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double g = r.normal();
    mean += g;
    sq += g * g;
  }
  mean /= n;
  EXPECT_LT(std::abs(mean), 5.0 / std::sqrt(n));
  EXPECT_NEAR(sq / n, 1.0, 0.02);
  for (int i = 0; i < 100; ++i) EXPECT_NEAR(r.unit_vector<3>().norm(), 1.0, 1e-14);
}

TEST(Quadrature, WeightsSumToSphereArea) {
  for (int level = 0; level <= 8; ++level) {
    const auto q = make_quadrature<3>(level);
    double s = 0.0;
    for (double w : q.weights) s += w;
    EXPECT_NEAR(s, 4.0 * kPi, 1e-11) << level;
    for (const auto& u : q.nodes) EXPECT_NEAR(u.norm(), 1.0, 1e-14);
  }
  const auto q2 = make_quadrature<2>(8);
  EXPECT_EQ(q2.size(), 256u);
  double s = 0.0;
  for (double w : q2.weights) s += w;
  EXPECT_NEAR(s, 2.0 * kPi, 1e-12);
}

TEST(Quadrature, ExactOnPolynomialsUpToDegree) {
  // ∫_{S^2} x^a y^b z^c for even exponents, via Γ functions.
  const auto moment = [](int a, int b, int c) {
    const auto g = [](double x) { return std::tgamma(x); };
    return 2.0 * g((a + 1) / 2.0) * g((b + 1) / 2.0) * g((c + 1) / 2.0) / g((a + b + c + 3) / 2.0);
  };
  const auto q = make_quadrature<3>(kDefaultSphereLevel);
  ASSERT_GE(q.degree, 35);
  for (auto [a, b, c] : {std::array<int, 3>{2, 0, 0}, {2, 2, 0}, {4, 2, 2}, {10, 6, 8}, {0, 0, 34}, {12, 10, 12}}) {
    const double v = q.integrate([&](const Vec<3>& u) { return std::pow(u[0], a) * std::pow(u[1], b) * std::pow(u[2], c); });
    EXPECT_NEAR(v, moment(a, b, c), 1e-12) << a << b << c;
  }
  const double odd = q.integrate([](const Vec<3>& u) { return u[0] * u[1] * u[1]; });
  EXPECT_NEAR(odd, 0.0, 1e-14);
}

TEST(Quadrature, KinkedIntegrandsConvergeAndProxyShrinks) {
  double prev = 1.0;
  for (int level = 2; level <= 8; level += 2) {
    const auto q = make_quadrature<3>(level);
    const double proxy = quadrature_proxy(q, 1.0);
    EXPECT_LT(proxy, prev);
    prev = proxy;
  }
  EXPECT_LT(quadrature_proxy(make_quadrature<3>(kDefaultSphereLevel), 1.0), 5e-3 / 3.0);
  // Even integer p is a polynomial and integrated exactly.
  EXPECT_LT(quadrature_proxy(make_quadrature<3>(kDefaultSphereLevel), 2.0), 1e-12);
}

TEST(Quadrature, RangeAndCoarserRule) {
  EXPECT_THROW(make_quadrature<3>(9), std::out_of_range);
  EXPECT_THROW(make_quadrature<2>(1), std::out_of_range);
  const auto& q = cached_quadrature<3>(4);
  ASSERT_NE(coarser_quadrature(q), nullptr);
  EXPECT_EQ(coarser_quadrature(q)->level, 3);
  EXPECT_EQ(coarser_quadrature(cached_quadrature<3>(0)), nullptr);
  EXPECT_EQ(&cached_quadrature<3>(4), &q);
}

TEST(SpherePoints, UnitAndDistinct) {
  const auto pts = sphere_points<3>(200);
  ASSERT_EQ(pts.size(), 200u);
  for (const auto& p : pts) EXPECT_NEAR(p.norm(), 1.0, 1e-14);
  Vec<3> sum = Vec<3>::Zero();
  for (const auto& p : pts) sum += p;
  EXPECT_LT(sum.norm() / 200, 0.05);
}

}  // namespace
}  // namespace mixedlp
