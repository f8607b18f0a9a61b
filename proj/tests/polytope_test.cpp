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

#include "mixedlp/lab.hpp"
#include "mixedlp/oracles.hpp"
#include "mixedlp/polytope.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace mixedlp {
namespace {

TEST(Hull2, Square) {
  const auto sq = hypercube<2>(1.0);
  EXPECT_EQ(sq.vertices().size(), 4u);
  EXPECT_EQ(sq.facets().size(), 4u);
  EXPECT_NEAR(sq.volume(), 4.0, 1e-15);
  EXPECT_NEAR(sq.surface_area(), 8.0, 1e-15);
  EXPECT_LT(sq.closedness_residual().norm(), 1e-15);
}

TEST(Hull2, DropsInteriorAndCollinearPoints) {
  std::vector<Vec<2>> pts{{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 0}, {1, 1}, {2, 1}, {0.5, 0.5}};
  const auto p = convex_hull<2>(pts);
  EXPECT_EQ(p.vertices().size(), 4u);
  EXPECT_NEAR(p.volume(), 4.0, 1e-15);
}

TEST(Hull2, DegenerateInputThrows) {
  std::vector<Vec<2>> line{{0, 0}, {1, 1}, {2, 2}, {3, 3}};
  EXPECT_THROW(convex_hull<2>(line), DegenerateInput);
}

TEST(Hull3, CubeWithFaceCentersAndInteriorPoints) {
  std::vector<Vec<3>> pts = hypercube<3>(1.0).vertices();
  for (int i = 0; i < 3; ++i) {
    Vec<3> e = Vec<3>::Zero();
    e[i] = 1.0;
    pts.push_back(e);
    pts.push_back(-e);
  }
  pts.push_back(Vec<3>(0.1, 0.2, -0.3));
  pts.push_back(Vec<3>(1, 0.5, 0.5));  // on a face
  const auto c = convex_hull<3>(pts);
  EXPECT_EQ(c.vertices().size(), 8u);
  ASSERT_EQ(c.facets().size(), 6u);
  for (const auto& f : c.facets()) {
    EXPECT_NEAR(f.measure, 4.0, 1e-13);
    EXPECT_NEAR(f.offset, 1.0, 1e-15);
  }
  EXPECT_NEAR(c.volume(), 8.0, 1e-13);
}

TEST(Hull3, Octahedron) {
  const auto o = cross_polytope<3>(1.0);
  EXPECT_EQ(o.vertices().size(), 6u);
  EXPECT_EQ(o.facets().size(), 8u);
  EXPECT_NEAR(o.volume(), 4.0 / 3.0, 1e-14);
  EXPECT_NEAR(o.surface_area(), 8.0 * std::sqrt(3.0) / 2.0, 1e-13);
}

TEST(Hull3, DegenerateInputThrows) {
  std::vector<Vec<3>> flat{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0.5, 0.2, 0}};
  EXPECT_THROW(convex_hull<3>(flat), DegenerateInput);
  std::vector<Vec<3>> few{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  EXPECT_THROW(convex_hull<3>(few), DegenerateInput);
}

TEST(Hull3, RandomCloudsAreClosedAndContainTheirPoints) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    std::vector<Vec<3>> pts;
    const int m = 10 + static_cast<int>(seed) * 20;
    for (int i = 0; i < m; ++i) pts.push_back(rng.normal_vector<3>());
    const auto p = convex_hull<3>(pts);
    EXPECT_LT(p.closedness_residual().norm(), 1e-12 * p.surface_area());
    for (const auto& x : pts) {
      for (const auto& f : p.facets()) EXPECT_LE(f.normal.dot(x), f.offset + 1e-12);
    }
    // Every vertex is one of the input points.
    for (const auto& v : p.vertices()) {
      EXPECT_TRUE(std::any_of(pts.begin(), pts.end(), [&](const Vec<3>& x) { return x == v; }));
    }
  }
}

TEST(Hull3, NearDuplicateCloudOfPolarFacetPoints) {
  // Polar of a polytope cut by many close directions: thousands of nearly
  // coincident points. Must stay a closed surface.
  const auto k = hypercube<3>(1.0);
  std::vector<Vec<3>> dirs = sphere_points<3>(400);
  for (const auto& f : k.facets()) dirs.push_back(f.normal);
  std::vector<Vec<3>> pts;
  for (const auto& u : dirs) pts.push_back(u / (k.support(u) + 0.01 * cross_polytope<3>(1.0).support(u)));
  const auto hull = convex_hull<3>(pts);
  const auto outer = polar_polytope(hull);
  EXPECT_LT(outer.closedness_residual().norm(), 1e-10 * outer.surface_area());
  EXPECT_GT(outer.volume(), 8.0);
  EXPECT_LT(outer.volume(), 8.0 * std::pow(1.011, 3));
}

TEST(Polytope, SupportAndRadial) {
  const auto c = hypercube<3>(1.0);
  EXPECT_NEAR(c.support(Vec<3>(1, 1, 1)), 3.0, 1e-15);
  EXPECT_NEAR(c.radial(Vec<3>(1, 1, 1)), 1.0, 1e-15);
  EXPECT_NEAR(c.radial(Vec<3>(2, 0, 0)), 0.5, 1e-15);
  EXPECT_THROW(c.support(Vec<3>::Zero()), std::domain_error);
  EXPECT_THROW(c.translated(Vec<3>(3, 0, 0)).radial(Vec<3>(1, 0, 0)), MembershipError);
}

TEST(Polytope, MinkowskiSumOfCubes) {
  const auto c = hypercube<3>(1.0);
  const auto s = minkowski_sum(c, c);
  EXPECT_NEAR(s.volume(), 64.0, 1e-12);
  EXPECT_EQ(s.vertices().size(), 8u);
}

TEST(Polytope, PolarOfCubeIsOctahedron) {
  const auto p = polar_polytope(hypercube<3>(1.0));
  EXPECT_EQ(p.vertices().size(), 6u);
  EXPECT_NEAR(p.volume(), 4.0 / 3.0, 1e-14);
  EXPECT_THROW(polar_polytope(hypercube<3>(1.0).translated(Vec<3>(2, 0, 0))), MembershipError);
}

TEST(Polytope, LinearImageScalesVolumeByDeterminant) {
  const auto k = lab::generate_polytope<3>(15, 3);
  Mat<3> m;
  m << 1.5, 0.2, 0, 0.1, 0.8, 0.3, 0, -0.4, 1.1;
  const LinMap<3> phi(m);
  EXPECT_NEAR(linear_image(phi, k).volume(), std::abs(phi.det()) * k.volume(), 1e-12 * k.volume());
}

TEST(Polytope, CentroidAndRecentering) {
  const auto c = hypercube<3>(1.0).translated(Vec<3>(0.5, -0.25, 2.0));
  EXPECT_LT((c.centroid() - Vec<3>(0.5, -0.25, 2.0)).norm(), 1e-13);
  const auto k = lab::generate_polytope<3>(10, 11, false);
  const auto r = recentered(k);
  EXPECT_LT(r.centroid().norm(), 1e-13);
  EXPECT_TRUE(r.contains_origin());
}

TEST(Polytope, CanonicalOrderMakesEqualHullsEqual) {
  std::vector<Vec<3>> pts = hypercube<3>(1.0).vertices();
  std::reverse(pts.begin(), pts.end());
  EXPECT_TRUE(convex_hull<3>(pts) == hypercube<3>(1.0));
}

TEST(Polytope, VolumeAgainstMonteCarlo) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto k = lab::generate_polytope<3>(12, seed, false);
    Rng rng(seed + 100);
    const auto est = oracle::monte_carlo_volume(k, 200000, rng);
    EXPECT_LE(std::abs(est.value - k.volume()), 4.0 * est.sigma) << seed;
  }
}

TEST(BallApprox, TwoDimensionalInscribedPolygon) {
  const auto b = ball_approx<2>(4);
  EXPECT_NEAR(b.body.volume(), 2.0, 1e-14);
  const auto fine = ball_approx<2>(4096);
  EXPECT_NEAR(fine.body.volume(), std::numbers::pi, 1e-5);
}

TEST(BallApprox, ThreeDimensionalAreaMatched) {
  const auto b = ball_approx<3>(320);
  EXPECT_NEAR(b.body.surface_area(), 4.0 * std::numbers::pi, 1e-12);
  EXPECT_NEAR(b.body.volume() / unit_ball_volume(3), 1.0, 1e-2);
  EXPECT_LT(b.inner_radius, 1.0);
  EXPECT_GT(b.outer_radius, 1.0);
  EXPECT_LT(b.hausdorff(), 1e-2);
  EXPECT_THROW(ball_approx<3>(3), std::invalid_argument);
}

}  // namespace
}  // namespace mixedlp
