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

#include "mixedlp/functionals.hpp"
#include "mixedlp/lab.hpp"
#include "mixedlp/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace mixedlp {
namespace {

const double kPi = std::numbers::pi;

Polytope<3> body(std::uint64_t seed) { return lab::generate_polytope<3>(12, seed); }

TEST(MixedVolume, CubeAndOctahedronByHand) {
  const auto c = hypercube<3>(1.0), o = cross_polytope<3>(1.0);
  // (1/3) Σ over octahedron facets of h_C · area = (1/3)·8·√3·(√3/2).
  EXPECT_NEAR(mixed_volume<3>({c, o, o}).value, 4.0, 1e-13);
  EXPECT_NEAR(mixed_volume<3>({c, c, o}).value, 8.0, 1e-13);
  EXPECT_NEAR(mixed_volume<3>({o, o, o}).value, 4.0 / 3.0, 1e-14);
  EXPECT_EQ(mixed_volume<3>({c, c, o}).method, Method::exact_sum);
}

TEST(MixedVolume, TwoDimensionalSteiner) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto k = lab::generate_polytope<2>(8, 2 * s), l = lab::generate_polytope<2>(8, 2 * s + 1);
    const double v = mixed_volume<2>({k, l}).value;
    EXPECT_NEAR(v, oracle::mixed_area_by_steiner(k, l, 1.0), 1e-11 * v);
    EXPECT_NEAR(v, oracle::mixed_area_by_steiner(k, l, 0.1), 1e-10 * v);
  }
}

TEST(MixedVolume, SymmetricAndMinkowskiLinear) {
  const auto k = body(1), l = body(2), m = body(3);
  const double a = mixed_volume<3>({k, l, m}).value;
  EXPECT_NEAR(mixed_volume<3>({m, k, l}).value, a, 1e-12 * a);
  EXPECT_NEAR(mixed_volume<3>({l, m, k}).value, a, 1e-12 * a);
  const double sum = mixed_volume<3>({minkowski_sum(k, l), m, m}).value;
  EXPECT_NEAR(sum, mixed_volume<3>({k, m, m}).value + mixed_volume<3>({l, m, m}).value, 1e-11 * sum);
  EXPECT_NEAR(mixed_volume<3>({k.scaled(2.5), l, m}).value, 2.5 * a, 1e-12 * a);
  EXPECT_NEAR(mixed_volume<3>({k.translated(Vec<3>(1, 2, 3)), l, m}).value, a, 1e-11 * a);
}

TEST(MixedVolume, WrongArityThrows) {
  const auto k = body(1);
  EXPECT_THROW(mixed_volume<3>({k, k}), std::invalid_argument);
  EXPECT_THROW(repeated_mixed_volume(k, 2, k, 2, k), std::out_of_range);
}

TEST(Quermassintegral, CubeAgainstClosedForms) {
  const auto c = hypercube<3>(1.0);
  EXPECT_EQ(quermassintegral(c, 0, 320).value, 8.0);
  const double closed[] = {8.0, 8.0, 2.0 * kPi, 4.0 * kPi / 3.0};  // V, S/3, (ω/2)·mean width, ω
  for (int i = 1; i <= 3; ++i) {
    const auto w = quermassintegral(c, i, 320);
    EXPECT_LE(std::abs(w.value - closed[i]), w.tolerance + 1e-12) << i;
    EXPECT_LT(w.tolerance / w.value, 3e-2) << i;
  }
}

TEST(LptMixedVolume, DiagonalsAreVolumes) {
  const auto k = body(4), q = body(5);
  for (double p : {1.0, 1.5, 2.0, 4.0}) {
    EXPECT_NEAR(lp_mixed_volume<3>(k, k, p).value, k.volume(), 1e-12 * k.volume());
    for (int t = 0; t <= 2; ++t) {
      const double v = lpt_mixed_volume<3>(k, k, q, p, t).value;
      EXPECT_NEAR(v, repeated_mixed_volume(k, t + 1, q, 0, q).value, 1e-12 * v);
    }
  }
}

TEST(LptMixedVolume, PEqualOneIsAClassicalMixedVolume) {
  const auto k = body(6), l = body(7), q = body(8);
  for (int t = 0; t <= 2; ++t) {
    std::vector<Polytope<3>> list;
    for (int i = 0; i < t; ++i) list.push_back(k);
    list.push_back(l);
    while (list.size() < 3) list.push_back(q);
    const double v = lpt_mixed_volume<3>(k, l, q, 1.0, t).value;
    EXPECT_NEAR(v, oracle::mixed_volume_by_polarization<3>(list), 1e-10 * v) << t;
  }
}

TEST(LptMixedVolume, HomogeneousOfDegreePInL) {
  const auto k = body(9), l = body(10), q = body(11);
  for (double p : {1.0, 2.0, 3.5}) {
    const double v = lpt_mixed_volume<3>(k, l, q, p, 1).value;
    EXPECT_NEAR(lpt_mixed_volume<3>(k, l.scaled(1.7), q, p, 1).value, std::pow(1.7, p) * v, 1e-12 * v);
  }
}

TEST(LptMixedVolume, HypothesesAreChecked) {
  const auto k = body(1);
  EXPECT_THROW(lpt_mixed_volume<3>(k, k, k, 2.0, 3), std::out_of_range);
  EXPECT_THROW(lpt_mixed_volume<3>(k, k.translated(Vec<3>(9, 0, 0)), k, 2.0, 1), MembershipError);
}

TEST(LptMixedVolume, DifferenceQuotientAtPOneIsQuadraticInEps) {
  // V(K + εL, 2; Q) = V(K,K,Q) + 2ε V(K,L,Q) + ε² V(L,L,Q).
  const auto k = body(12), l = body(13), q = body(14);
  const double vklq = oracle::mixed_volume_by_polarization<3>(std::vector<Polytope<3>>{k, l, q});
  const double vllq = oracle::mixed_volume_by_polarization<3>(std::vector<Polytope<3>>{l, l, q});
  for (double eps : {0.1, 0.01}) {
    const double dq = lpt_difference_quotient<3>(k, l, q, 1.0, 1, eps);
    EXPECT_NEAR(dq, vklq + 0.5 * eps * vllq, 1e-9 * vklq) << eps;
  }
}

TEST(LptMixedVolume, LimitAgreesWithTheIntegral) {
  for (std::uint64_t s = 0; s < 4; ++s) {
    const auto k = body(20 + s), l = body(30 + s), q = body(40 + s);
    for (double p : {1.0, 2.0}) {
      for (int t = 0; t <= 2; ++t) {
        const double exact = lpt_mixed_volume<3>(k, l, q, p, t).value;
        const auto lim = lpt_mixed_volume_limit<3>(k, l, q, p, t);
        EXPECT_EQ(lim.method, Method::finite_difference);
        EXPECT_NEAR(lim.value, exact, 1e-4 * exact) << s << " " << p << " " << t;
      }
    }
  }
}

TEST(LptMixedVolume, LimitWithABallSlot) {
  const auto c = hypercube<3>(1.0);
  const auto lim = lpt_mixed_volume_limit<3>(c, SupportBody<3>::ball(), c, 2.0, 2);
  EXPECT_NEAR(lim.value, lp_mixed_volume<3>(c, SupportBody<3>::ball(), 2.0).value, 1e-4 * lim.value);
}

TEST(LptMixedVolume, ScheduleValidation) {
  const auto k = body(1);
  EXPECT_THROW(lpt_mixed_volume_limit<3>(k, k, k, 2.0, 1, {0.01}), std::invalid_argument);
  EXPECT_THROW(lpt_mixed_volume_limit<3>(k, k, k, 2.0, 1, {0.5, 0.1}), std::invalid_argument);
  EXPECT_THROW(lpt_mixed_volume_limit<3>(k, k, k, 2.0, 1, {0.01, 0.02}), std::invalid_argument);
  EXPECT_THROW(lpt_mixed_volume_limit<3>(k, k, k, 2.0, 1, {0.01, -0.005}), std::invalid_argument);
  EXPECT_THROW(lpt_mixed_volume_limit<3>(k, k, k, 0.5, 1), std::domain_error);
}

TEST(LpMixedQuermassintegral, EndpointsAndBallSlot) {
  const auto k = body(15), l = body(16);
  EXPECT_NEAR(lp_mixed_quermassintegral<3>(k, l, 2.0, 0, 320).value, lp_mixed_volume<3>(k, l, 2.0).value, 1e-15);
  // W_{p,i}(K, K) = W_i(K) for every p.
  for (int i = 1; i <= 2; ++i) {
    const auto a = lp_mixed_quermassintegral<3>(k, k, 2.0, i, 320);
    EXPECT_NEAR(a.value, quermassintegral(k, i, 320).value, 1e-12 * a.value);
  }
}

TEST(StarVolume, BallIsIntegratedExactly) {
  const auto q = make_quadrature<3>(3);
  const auto v = star_volume(StarBody<3>::ball(2.0), q);
  EXPECT_NEAR(v.value, 8.0 * 4.0 * kPi / 3.0, 1e-12);
  EXPECT_EQ(v.method, Method::quadrature);
  EXPECT_LT(v.tolerance, 1e-11);
  const auto circle = star_volume(StarBody<2>::ball(3.0), make_quadrature<2>(6));
  EXPECT_NEAR(circle.value, 9.0 * kPi, 1e-12);
}

TEST(StarVolume, PolytopeConvergesWithLevel) {
  const auto c = hypercube<3>(1.0);
  double prev = 1.0;
  for (int level : {4, 6, 8}) {
    const double err = std::abs(star_volume(StarBody<3>(c), cached_quadrature<3>(level)).value - 8.0) / 8.0;
    EXPECT_LT(err, prev);
    prev = err;
  }
  EXPECT_LT(prev, 1e-3);
  EXPECT_EQ(support_body_volume(SupportBody<3>(c), cached_quadrature<3>(0)).value, c.volume());
}

TEST(StarVolume, EllipsoidAgainstDeterminant) {
  Mat<3> m;
  m << 1.2, 0.3, 0, 0, 0.9, 0.1, 0.2, 0, 0.7;
  const LinMap<3> phi(m);
  const auto v = star_volume(StarBody<3>::ellipsoid(phi), cached_quadrature<3>(6));
  EXPECT_NEAR(v.value, std::abs(phi.det()) * 4.0 * kPi / 3.0, 1e-6);
}

TEST(DualMixedVolume, BallsAndDiagonal) {
  const auto& q = cached_quadrature<3>(4);
  for (double p : {1.0, 2.0, 3.0}) {
    const double v = dual_mixed_volume(StarBody<3>::ball(2.0), StarBody<3>::ball(0.5), p, q).value;
    EXPECT_NEAR(v, 4.0 * kPi / 3.0 * std::pow(2.0, 3 + p) * std::pow(0.5, -p), 1e-10 * v);
  }
  const StarBody<3> k = lab::generate_star_body<3>(10, 5);
  EXPECT_NEAR(dual_mixed_volume(k, k, 2.0, q).value, star_volume(k, q).value, 1e-12);
  EXPECT_THROW(dual_mixed_volume(k, k, 0.5, q), std::domain_error);
}

}  // namespace
}  // namespace mixedlp
