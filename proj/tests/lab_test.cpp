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

#include "mixedlp/suite.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

namespace mixedlp::lab {
namespace {

SuiteConfig small_config() {
  SuiteConfig c;
  c.seed = 99;
  c.identity_cases = 2;
  c.definition_cases = 1;
  c.minkowski_cases = 2;
  c.projection_cases = 1;
  c.covariance_cases = 2;
  c.dual_cases = 1;
  c.battery_cases = 2;
  c.equality_cases = 1;
  c.brightness_cases = 1;
  c.monte_carlo_cases = 1;
  c.monte_carlo_samples = 20000;
  c.polarization_cases = 2;
  c.normalization_directions = 64;
  return c;
}

bool same_records(const std::vector<CheckRecord>& a, const std::vector<CheckRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a[i];
    const auto& y = b[i];
    if (x.name != y.name || x.params != y.params || x.seed != y.seed || x.case_index != y.case_index ||
        x.lhs != y.lhs || x.rhs != y.rhs || x.ratio != y.ratio || x.verdict != y.verdict || x.note != y.note) {
      return false;
    }
  }
  return true;
}

TEST(Generators, PolytopesAreReproducibleAndCentered) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto a = generate_polytope<3>(12, s);
    EXPECT_TRUE(a == generate_polytope<3>(12, s));
    EXPECT_LT(a.centroid().norm(), 1e-12);
    for (const auto& f : a.facets()) EXPECT_GT(f.offset, 0.0);
  }
  EXPECT_FALSE(generate_polytope<3>(12, 1) == generate_polytope<3>(12, 2));
  EXPECT_THROW(generate_polytope<3>(3, 1), std::invalid_argument);
}

TEST(Generators, SLMapsHaveUnitDeterminantAndBoundedCondition) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto phi = generate_slmap<3>(s, 20.0);
    EXPECT_LE(std::abs(phi.det() - 1.0), 1e-10);
    EXPECT_LE(phi.condition_number(), 20.0);
    const auto psi = generate_slmap<2>(s, 5.0);
    EXPECT_LE(std::abs(psi.det() - 1.0), 1e-10);
    EXPECT_LE(psi.condition_number(), 5.0);
  }
  EXPECT_THROW(generate_slmap<3>(1, 0.5), std::invalid_argument);
}

TEST(Generators, StarBodiesArePositive) {
  const auto l = generate_star_body<3>(10, 4);
  for (const auto& u : sphere_points<3>(100)) {
    EXPECT_GT(l.radial(u), 0.0);
    EXPECT_TRUE(std::isfinite(l.radial(u)));
  }
}

TEST(Names, RoundTrip) {
  for (int i = 0; i <= static_cast<int>(Inequality::VPTI); ++i) {
    const auto w = static_cast<Inequality>(i);
    EXPECT_EQ(inequality_from_name(info(w).name), w);
  }
  for (int i = 0; i <= static_cast<int>(Identity::volume_polarization); ++i) {
    const auto w = static_cast<Identity>(i);
    EXPECT_EQ(identity_from_name(info(w).name), w);
  }
  EXPECT_FALSE(inequality_from_name("nope").has_value());
  EXPECT_EQ(to_string(Verdict::equality_case), "equality-case");
}

TEST(Hypotheses, AreEnforced) {
  CheckInputs<3> in;
  in.bodies = {generate_polytope<3>(12, 1), generate_polytope<3>(12, 2), generate_polytope<3>(12, 3)};
  in.quad = &cached_quadrature<3>(4);
  CheckParams par;
  par.p = 1.0;
  par.t = 1;
  EXPECT_THROW(check_inequality(Inequality::VPTI, in, par), HypothesisError);
  par.p = 2.0;
  par.t = 0;
  EXPECT_THROW(check_inequality(Inequality::VPTI, in, par), HypothesisError);
  par.t = 2;
  EXPECT_THROW(check_identity(Identity::PTPI, in, par), HypothesisError);  // and no map either
  par.t = 1;
  EXPECT_THROW(check_identity(Identity::PTPI, in, par), HypothesisError);
  par.p = 0.5;
  EXPECT_THROW(check_inequality(Inequality::MLPMI, in, par), HypothesisError);
  par.p = 2.0;
  CheckInputs<3> off = in;
  off.bodies[0] = off.bodies[0].translated(Vec<3>(10, 0, 0));
  EXPECT_THROW(check_inequality(Inequality::MLPMI, off, par), HypothesisError);
  CheckInputs<3> bad_map = in;
  Mat<3> m = Mat<3>::Identity();
  m(0, 0) = 2.0;
  bad_map.map = LinMap<3>(m);
  EXPECT_THROW(check_identity(Identity::PHI, bad_map, par), HypothesisError);
  CheckInputs<3> empty;
  EXPECT_THROW(check_inequality(Inequality::MFI, empty, par), HypothesisError);
}

TEST(Inequalities, StrictForGenericBodiesAndEqualForDilates) {
  const auto k = generate_polytope<3>(12, 5), l = generate_polytope<3>(12, 6), q = generate_polytope<3>(12, 7);
  CheckInputs<3> in;
  in.bodies = {k, l, q};
  for (double p : {1.0, 2.0}) {
    for (int t = 0; t <= 2; ++t) {
      CheckParams par;
      par.p = p;
      par.t = t;
      const auto r = check_inequality(Inequality::MLPMI, in, par);
      EXPECT_EQ(r.verdict, Verdict::holds);
      EXPECT_GT(r.ratio, 1.0);
    }
  }
  CheckInputs<3> dil;
  dil.bodies = {k, k.scaled(1.5), k.scaled(0.7).translated(Vec<3>(0.2, 0, 0))};
  CheckParams par;
  par.p = 2.0;
  par.t = 1;
  par.expect_equality = true;
  const auto eq = check_inequality(Inequality::MLPMI, dil, par);
  EXPECT_EQ(eq.verdict, Verdict::equality_case);
  EXPECT_NEAR(eq.ratio, 1.0, 1e-10);
  // Without the flag an exact equality is flagged.
  par.expect_equality = false;
  EXPECT_EQ(check_inequality(Inequality::MLPMI, dil, par).verdict, Verdict::violated);
}

TEST(Inequalities, ExpectedEqualityThatFailsIsAViolation) {
  CheckInputs<3> in;
  in.bodies = {generate_polytope<3>(12, 5), generate_polytope<3>(12, 6)};
  CheckParams par;
  par.expect_equality = true;
  const auto r = check_inequality(Inequality::MFI, in, par);
  EXPECT_EQ(r.verdict, Verdict::violated);
  EXPECT_FALSE(r.note.empty());
}

TEST(Identities, TransferWithIdentityMapIsExact) {
  CheckInputs<3> in;
  in.bodies = {generate_polytope<3>(12, 8), generate_polytope<3>(12, 9), generate_polytope<3>(12, 10)};
  in.map = LinMap<3>::identity();
  CheckParams par;
  par.p = 2.0;
  par.t = 1;
  const auto r = check_identity(Identity::PTPI, in, par);
  EXPECT_EQ(r.verdict, Verdict::holds);
  EXPECT_EQ(r.ratio, 0.0);
  in.map = generate_slmap<3>(3);
  EXPECT_EQ(check_identity(Identity::PTPI, in, par).verdict, Verdict::holds);
}

TEST(Identities, ToleranceOverrideCanFailACheck) {
  CheckInputs<3> in;
  in.bodies = {generate_polytope<3>(12, 8)};
  CheckParams par;
  par.samples = 1000;
  par.seed = 3;
  par.tolerance = 0.0;
  EXPECT_EQ(check_identity(Identity::monte_carlo_volume, in, par).verdict, Verdict::violated);
}

TEST(Suite, SmallRunHasNoViolationsAndIsDeterministic) {
  const auto c = small_config();
  const auto a = run_suite<3>(c);
  const auto s = summarize(a);
  EXPECT_GT(s.records, 100u);
  EXPECT_EQ(s.violations, 0u);
  for (const auto& r : a) EXPECT_NE(r.verdict, Verdict::violated) << r.name << " " << r.params << " " << r.note;
  EXPECT_GT(s.equality_cases, 0u);
  auto threaded = c;
  threaded.threads = 2;
  EXPECT_TRUE(same_records(a, run_suite<3>(threaded)));
  std::set<std::string> names;
  for (const auto& r : a) names.insert(r.name);
  for (const char* want : {"MLPMI", "VPTI", "Petty", "LpPetty", "MixedPetty", "PTPI", "LPPK", "LPDE",
                           "limit_definition", "monte_carlo_volume", "volume_polarization"}) {
    EXPECT_TRUE(names.count(want)) << want;
  }
}

TEST(Suite, SeedChangesCases) {
  auto c = small_config();
  c.identity_cases = 1;
  const auto a = run_suite<3>(c);
  c.seed = 100;
  EXPECT_FALSE(same_records(a, run_suite<3>(c)));
}

TEST(Suite, PlanarRunSkipsInnerIndexStatements) {
  auto c = small_config();
  const auto a = run_suite<2>(c);
  EXPECT_EQ(summarize(a).violations, 0u);
  for (const auto& r : a) {
    EXPECT_NE(r.name, "VPTI");
    EXPECT_NE(r.name, "PTPI");
    EXPECT_NE(r.name, "LPPK");
  }
}

TEST(Suite, ConfigValidation) {
  auto c = small_config();
  c.p_grid = {0.5};
  EXPECT_THROW(run_suite<3>(c), std::invalid_argument);
  c = small_config();
  c.strict_p_grid = {1.0};
  EXPECT_THROW(run_suite<3>(c), std::invalid_argument);
  c = small_config();
  c.identity_cases = -1;
  EXPECT_THROW(run_suite<3>(c), std::invalid_argument);
}

}  // namespace
}  // namespace mixedlp::lab
