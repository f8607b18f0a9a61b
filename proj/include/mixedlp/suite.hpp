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

#pragma once

// Deterministic verification suite over seeded random cases.

#include "mixedlp/lab.hpp"

#include <atomic>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace mixedlp::lab {

struct SuiteConfig {
  std::uint64_t seed = 20260101;
  std::vector<double> p_grid{1.0, 1.5, 2.0};
  std::vector<int> t_grid{0, 1, 2};
  std::vector<double> strict_p_grid{1.5, 2.0};  // statements that need p > 1
  std::vector<double> normalization_p{1.0, 1.5, 2.0, 3.0};
  double dual_p = 2.0;
  int quad_level = -1;  // negative: default level for the dimension
  // Rule for volume-type integrals of kinked radial functions (polytope
  // radials); negative: 4096 angles in 2D, degree 127 in 3D.
  int volume_quad_level = -1;
  int ball_m = 320;
  int vertices = 12;
  double condition_bound = 20.0;
  int threads = 1;
  int normalization_directions = 512;
  int identity_cases = 100;
  int definition_cases = 25;
  int minkowski_cases = 200;
  int projection_cases = 100;
  int covariance_cases = 50;
  int dual_cases = 25;
  int battery_cases = 100;
  int equality_cases = 10;
  int brightness_cases = 50;
  int monte_carlo_cases = 20;
  int monte_carlo_samples = 200000;
  int polarization_cases = 50;
};

struct SuiteSummary {
  std::size_t records = 0;
  std::size_t holds = 0;
  std::size_t equality_cases = 0;
  std::size_t violations = 0;
};

inline SuiteSummary summarize(const std::vector<CheckRecord>& records) {
  SuiteSummary s;
  s.records = records.size();
  for (const auto& r : records) {
    if (r.verdict == Verdict::holds) ++s.holds;
    if (r.verdict == Verdict::equality_case) ++s.equality_cases;
    if (r.verdict == Verdict::violated) ++s.violations;
  }
  return s;
}

inline void validate(const SuiteConfig& c) {
  const auto fail = [](const std::string& m) { throw std::invalid_argument("suite config: " + m); };
  if (c.p_grid.empty()) fail("p grid is empty");
  for (double p : c.p_grid) {
    if (!(p >= 1.0) || !std::isfinite(p)) fail("p grid values must be finite and >= 1");
  }
  for (double p : c.strict_p_grid) {
    if (!(p > 1.0) || !std::isfinite(p)) fail("strict p grid values must be finite and > 1");
  }
  for (double p : c.normalization_p) {
    if (!(p >= 1.0) || !std::isfinite(p)) fail("normalization p values must be finite and >= 1");
  }
  if (!(c.dual_p > 1.0)) fail("dual p must be > 1");
  if (c.t_grid.empty()) fail("t grid is empty");
  for (int t : c.t_grid) {
    if (t < 0) fail("t grid values must be >= 0");
  }
  if (c.ball_m < 8) fail("ball approximant needs at least 8 points");
  if (c.vertices < 4) fail("generated polytopes need at least 4 points");
  if (!(c.condition_bound >= 1.0)) fail("condition bound must be >= 1");
  if (c.threads < 0) fail("threads must be >= 0");
  for (int k : {c.identity_cases, c.definition_cases, c.minkowski_cases, c.projection_cases, c.covariance_cases,
                c.dual_cases, c.battery_cases, c.equality_cases, c.brightness_cases, c.monte_carlo_cases,
                c.polarization_cases, c.normalization_directions}) {
    if (k < 0) fail("case counts must be >= 0");
  }
  if (c.monte_carlo_samples < 1) fail("Monte-Carlo sample count must be positive");
}

namespace detail {

inline std::uint64_t case_seed(std::uint64_t seed, int group, int index) {
  return Rng::stream(seed, static_cast<std::uint64_t>(group) * 1000003ull + static_cast<std::uint64_t>(index)).bits();
}

struct Task {
  int group;
  int index;
  std::function<std::vector<CheckRecord>(std::uint64_t)> run;
};

inline std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace detail

template <int N>
std::vector<CheckRecord> run_suite(const SuiteConfig& config) {
  using namespace detail;
  validate(config);
  const SuiteConfig c = config;
  const Quadrature<N>& rule = cached_quadrature<N>(c.quad_level >= 0 ? c.quad_level
                                                   : N == 2           ? kDefaultCircleLevel
                                                                      : kDefaultSphereLevel);
  const Quadrature<N>* quad = &rule;
  const Quadrature<N>* volume_quad = &cached_quadrature<N>(c.volume_quad_level >= 0 ? c.volume_quad_level
                                                           : N == 2                  ? 12
                                                                                     : 8);
  const BallApprox<N>& ball = cached_ball<N>(c.ball_m);
  std::vector<int> ts;
  for (int t : c.t_grid) {
    if (t <= N - 1) ts.push_back(t);
  }
  std::vector<int> inner_ts;  // 0 < t < n−1
  for (int t = 1; t < N - 1; ++t) inner_ts.push_back(t);
  const std::vector<Vec<N>> norm_dirs = sphere_points<N>(c.normalization_directions);

  std::vector<Task> tasks;
  const auto add = [&](int group, int count, std::function<std::vector<CheckRecord>(std::uint64_t, int)> body) {
    for (int i = 0; i < count; ++i) {
      tasks.push_back({group, i, [body, i](std::uint64_t s) { return body(s, i); }});
    }
  };
  // Every call shares these fields.
  const auto params = [](std::uint64_t seed, int index, double p, int t, std::string tag = {}) {
    CheckParams par;
    par.p = p;
    par.t = t;
    par.seed = seed;
    par.case_index = index;
    par.tag = std::move(tag);
    return par;
  };
  const auto poly = [&](std::uint64_t seed, std::uint64_t which) {
    return generate_polytope<N>(c.vertices, Rng::stream(seed, which).bits());
  };
  const auto sample_dirs = [](std::uint64_t seed, int count) {
    Rng rng = Rng::stream(seed, 77);
    std::vector<Vec<N>> d;
    for (int j = 0; j < count; ++j) d.push_back(rng.unit_vector<N>());
    return d;
  };
  const std::string mtag = "m=" + std::to_string(c.vertices);

  // Normalizations of the projection and centroid operators at the ball.
  add(0, 1, [&, quad, norm_dirs](std::uint64_t seed, int index) {
    std::vector<CheckRecord> out;
    CheckInputs<N> in;
    in.bodies = {ball.body};
    in.quad = quad;
    in.directions = norm_dirs;
    for (double p : c.normalization_p) {
      CheckParams par = params(seed, index, p, N - 1, "ball_m=" + std::to_string(c.ball_m));
      par.ball_m = c.ball_m;
      out.push_back(check_identity(Identity::lp_projection_ball, in, par));
      out.push_back(check_identity(Identity::centroid_ball, in, par));
      for (int t : ts) {
        par.t = t;
        out.push_back(check_identity(Identity::mixed_lp_projection_ball, in, par));
      }
    }
    return out;
  });

  // Exact-pipeline identities and collapses.
  add(1, c.identity_cases, [&, volume_quad](std::uint64_t seed, int index) {
    std::vector<CheckRecord> out;
    CheckInputs<N> in;
    const Polytope<N> k = poly(seed, 0), l = poly(seed, 1), q = poly(seed, 2);
    in.quad = volume_quad;
    in.bodies = {k};
    out.push_back(check_identity(Identity::volume_diagonal, in, params(seed, index, 1.0, 0, mtag)));
    const double pd = c.p_grid[index % c.p_grid.size()];
    out.push_back(check_identity(Identity::dual_diagonal, in, params(seed, index, pd, 0, mtag)));
    for (double p : c.p_grid) {
      for (int t : ts) {
        in.bodies = {k};
        out.push_back(check_identity(Identity::lpt_diagonal, in, params(seed, index, p, t, mtag)));
        in.bodies = {k, q};
        out.push_back(check_identity(Identity::lpt_diagonal_pair, in, params(seed, index, p, t, mtag)));
      }
      in.bodies = {k, l, q};
      out.push_back(check_identity(Identity::lp_collapse, in, params(seed, index, p, N - 1, mtag)));
    }
    in.bodies = {k, l, q};
    for (int t : ts) out.push_back(check_identity(Identity::classical_collapse, in, params(seed, index, 1.0, t, mtag)));
    in.bodies = {k, q};
    in.directions = sample_dirs(seed, 16);
    Rng rng = Rng::stream(seed, 9);
    CheckParams par = params(seed, index, c.p_grid[index % c.p_grid.size()], ts[index % ts.size()], mtag);
    par.lambda1 = rng.uniform(0.5, 2.0);
    par.lambda2 = rng.uniform(0.5, 2.0);
    out.push_back(check_identity(Identity::LBDA, in, par));
    return out;
  });

  // First variation against the integral formula.
  add(2, c.definition_cases, [&](std::uint64_t seed, int index) {
    std::vector<CheckRecord> out;
    CheckInputs<N> in;
    const Polytope<N> k = poly(seed, 0), l = poly(seed, 1), q = poly(seed, 2);
    in.bodies = {k, l, q};
    const int t = std::min(1, N - 1);
    for (double p : c.strict_p_grid) out.push_back(check_identity(Identity::limit_definition, in, params(seed, index, p, t, mtag)));
    in.bodies = {k, l};
    CheckParams par = params(seed, index, c.strict_p_grid[index % c.strict_p_grid.size()], 0, mtag);
    par.i = index % N;
    par.t = N - par.i - 1;
    par.ball_m = c.ball_m;
    out.push_back(check_identity(Identity::quermass_limit, in, par));
    return out;
  });

  // Mixed Lp Minkowski inequality over the (p, t) grid.
  add(3, c.minkowski_cases, [&](std::uint64_t seed, int index) {
    std::vector<CheckRecord> out;
    CheckInputs<N> in;
    in.bodies = {poly(seed, 0), poly(seed, 1), poly(seed, 2)};
    for (double p : c.p_grid) {
      for (int t : ts) out.push_back(check_inequality(Inequality::MLPMI, in, params(seed, index, p, t, mtag)));
    }
    return out;
  });

  // Its equality cases: K = L = Q, and L = λK with Q a translate of μK.
  add(4, c.equality_cases, [&](std::uint64_t seed, int index) {
    std::vector<CheckRecord> out;
    const Polytope<N> k = poly(seed, 0);
    Rng rng = Rng::stream(seed, 5);
    const double lambda = rng.uniform(0.5, 2.0), mu = rng.uniform(0.5, 2.0);
    const Vec<N> x = 0.5 * rng.normal_vector<N>();
    CheckInputs<N> same, dilates;
    same.bodies = {k, k, k};
    dilates.bodies = {k, k.scaled(lambda), k.scaled(mu).translated(x)};
    for (double p : c.p_grid) {
      for (int t : ts) {
        CheckParams par = params(seed, index, p, t, mtag + ";case=K=L=Q");
        par.expect_equality = true;
        out.push_back(check_inequality(Inequality::MLPMI, same, par));
        par.tag = mtag + ";case=L=lambda*K,Q=mu*K+x;lambda=" + fmt(lambda) + ";mu=" + fmt(mu);
        out.push_back(check_inequality(Inequality::MLPMI, dilates, par));
      }
    }
    return out;
  });

  // Mixed Lp projection inequality.
  if (!inner_ts.empty()) {
    add(5, c.projection_cases, [&, quad, inner_ts](std::uint64_t seed, int index) {
      std::vector<CheckRecord> out;
      CheckInputs<N> in;
      in.bodies = {poly(seed, 0), poly(seed, 1)};
      in.quad = quad;
      for (double p : c.strict_p_grid) {
        for (int t : inner_ts) out.push_back(check_inequality(Inequality::VPTI, in, params(seed, index, p, t, mtag)));
      }
      return out;
    });
    add(6, std::min(c.equality_cases, 1) + c.equality_cases, [&, quad, inner_ts](std::uint64_t seed, int index) {
      std::vector<CheckRecord> out;
      CheckInputs<N> in;
      in.quad = quad;
      std::string tag = "case=K=Q=ball;ball_m=" + std::to_string(c.ball_m);
      if (index == 0) {
        in.bodies = {ball.body, ball.body};
      } else {
        Rng rng = Rng::stream(seed, 5);
        const LinMap<N> phi = generate_slmap<N>(rng.bits(), 4.0);
        const double lambda = rng.uniform(0.5, 2.0), mu = rng.uniform(0.5, 2.0);
        const Polytope<N> e = linear_image(phi, ball.body);
        in.bodies = {e.scaled(lambda), e.scaled(mu)};
        tag = "case=K,Q dilate origin ellipsoids;lambda=" + fmt(lambda) + ";mu=" + fmt(mu) +
              ";ball_m=" + std::to_string(c.ball_m);
      }
      for (double p : c.strict_p_grid) {
        for (int t : inner_ts) {
          CheckParams par = params(seed, index, p, t, tag);
          par.expect_equality = true;
          out.push_back(check_inequality(Inequality::VPTI, in, par));
        }
      }
      return out;
    });
  }

  // SL(n) covariance identities.
  add(7, c.covariance_cases, [&, ts, inner_ts](std::uint64_t seed, int index) {
    std::vector<CheckRecord> out;
    CheckInputs<N> in;
    const Polytope<N> k = poly(seed, 0), l = poly(seed, 1), q = poly(seed, 2);
    in.map = generate_slmap<N>(Rng::stream(seed, 3).bits(), c.condition_bound);
    in.directions = sample_dirs(seed, 16);
    const std::string tag = mtag + ";condition_bound=" + fmt(c.condition_bound);
    const double ps = c.strict_p_grid[index % c.strict_p_grid.size()];
    for (int t : inner_ts) {
      in.bodies = {k, l, q};
      out.push_back(check_identity(Identity::PTPI, in, params(seed, index, ps, t, tag)));
      in.bodies = {k, q};
      out.push_back(check_identity(Identity::LPPK, in, params(seed, index, ps, t, tag)));
    }
    in.bodies = {k, q};
    for (int t : ts) {
      out.push_back(check_identity(Identity::DPT, in, params(seed, index, c.p_grid[index % c.p_grid.size()], t, tag)));
      out.push_back(check_identity(Identity::MSA, in, params(seed, index, 1.0, t, tag)));
    }
    std::vector<Polytope<N>> list{k, l, q};
    list.resize(N, k);
    in.bodies = list;
    out.push_back(check_identity(Identity::PHI, in, params(seed, index, 1.0, 0, tag)));
    return out;
  });

  // Centroid body / polar projection body duality.
  if (!inner_ts.empty()) {
    add(8, c.dual_cases, [&, quad, inner_ts](std::uint64_t seed, int index) {
      std::vector<CheckRecord> out;
      CheckInputs<N> in;
      in.bodies = {poly(seed, 0), poly(seed, 1)};
      in.stars = {generate_star_body<N>(c.vertices, Rng::stream(seed, 4).bits())};
      in.quad = quad;
      for (int t : inner_ts) {
        out.push_back(check_identity(Identity::LPDE, in, params(seed, index, c.dual_p, t, mtag)));
        out.push_back(check_identity(Identity::polar_centroid, in, params(seed, index, c.dual_p, t, mtag)));
      }
      return out;
    });
  }

  // Classical battery on random inputs.
  add(9, c.battery_cases, [&, quad](std::uint64_t seed, int index) {
    std::vector<CheckRecord> out;
    CheckInputs<N> in;
    const Polytope<N> k = poly(seed, 0), l = poly(seed, 1), q = poly(seed, 2);
    in.quad = quad;
    const double p = c.p_grid[index % c.p_grid.size()];
    const double ps = c.strict_p_grid[index % c.strict_p_grid.size()];
    in.bodies = {k, l, q};
    out.push_back(check_inequality(Inequality::MFI, in, params(seed, index, 1.0, 0, mtag)));
    out.push_back(check_inequality(Inequality::LPMI, in, params(seed, index, p, N - 1, mtag)));
    CheckParams par = params(seed, index, p, 0, mtag);
    par.i = index % N;
    par.t = N - par.i - 1;
    par.ball_m = c.ball_m;
    par.tag += ";i=" + std::to_string(par.i);
    out.push_back(check_inequality(Inequality::MILPMQ, in, par));
    par = params(seed, index, 1.0, 1, mtag);
    par.s = 1 + index % (N - 1);
    par.t = 1 + (index / (N - 1)) % (N - par.s);
    out.push_back(check_inequality(Inequality::AFI, in, par));
    std::vector<Polytope<N>> list{k, l, q};
    list.resize(N, k);
    in.bodies = list;
    out.push_back(check_inequality(Inequality::MLI, in, params(seed, index, 1.0, 0, mtag)));
    in.bodies = {k};
    in.stars = {generate_star_body<N>(c.vertices, Rng::stream(seed, 4).bits()),
                generate_star_body<N>(c.vertices, Rng::stream(seed, 5).bits())};
    out.push_back(check_inequality(Inequality::VI, in, params(seed, index, p, 0, mtag)));
    out.push_back(check_inequality(Inequality::CBI, in, params(seed, index, ps, 0, mtag)));
    out.push_back(check_inequality(Inequality::Petty, in, params(seed, index, 1.0, N - 1, mtag)));
    out.push_back(check_inequality(Inequality::LpPetty, in, params(seed, index, p, N - 1, mtag)));
    in.bodies = list;
    in.bodies.erase(in.bodies.begin() + (N - 1), in.bodies.end());
    out.push_back(check_inequality(Inequality::MixedPetty, in, params(seed, index, 1.0, 0, mtag)));
    return out;
  });

  // Battery equality cases built from dilates, homothets and ellipsoids.
  add(10, c.equality_cases, [&, quad](std::uint64_t seed, int index) {
    std::vector<CheckRecord> out;
    CheckInputs<N> in;
    in.quad = quad;
    const Polytope<N> k = poly(seed, 0), q = poly(seed, 2);
    Rng rng = Rng::stream(seed, 5);
    const double lambda = rng.uniform(0.5, 2.0);
    const Vec<N> x = 0.3 * rng.normal_vector<N>();
    const LinMap<N> phi = generate_slmap<N>(rng.bits(), 4.0);
    const double p = c.p_grid[index % c.p_grid.size()];
    const double ps = c.strict_p_grid[index % c.strict_p_grid.size()];
    const std::string lam = ";lambda=" + fmt(lambda);
    const auto eq = [&](double pp, int t, const std::string& tag) {
      CheckParams par = params(seed, index, pp, t, tag);
      par.expect_equality = true;
      par.ball_m = c.ball_m;
      return par;
    };
    in.bodies = {k, k.scaled(lambda).translated(x), q};
    out.push_back(check_inequality(Inequality::MFI, in, eq(1.0, 0, mtag + ";case=L=lambda*K+x" + lam)));
    in.bodies = {k, k.scaled(lambda), q};
    out.push_back(check_inequality(Inequality::LPMI, in, eq(p, N - 1, mtag + ";case=L=lambda*K" + lam)));
    CheckParams par = eq(p, 0, mtag + ";case=L=lambda*K" + lam);
    par.i = index % N;
    par.t = N - par.i - 1;
    out.push_back(check_inequality(Inequality::MILPMQ, in, par));
    in.bodies = {k, k.scaled(lambda).translated(x), q};
    par = eq(1.0, 1, mtag + ";case=L=lambda*K+x" + lam);
    par.s = 1 + index % (N - 1);
    par.t = 1 + (index / (N - 1)) % (N - par.s);
    out.push_back(check_inequality(Inequality::AFI, in, par));
    in.bodies.clear();
    for (int j = 0; j < N; ++j) in.bodies.push_back(k.scaled(rng.uniform(0.5, 2.0)).translated(0.3 * rng.normal_vector<N>()));
    out.push_back(check_inequality(Inequality::MLI, in, eq(1.0, 0, mtag + ";case=homothets")));
    const StarBody<N> s = generate_star_body<N>(c.vertices, Rng::stream(seed, 4).bits());
    in.stars = {s, linear_image(LinMap<N>::scaling(lambda), s)};
    out.push_back(check_inequality(Inequality::VI, in, eq(p, 0, mtag + ";case=L=lambda*K" + lam)));
    in.stars = {StarBody<N>::ellipsoid(LinMap<N>(lambda * phi.matrix()))};
    out.push_back(check_inequality(Inequality::CBI, in, eq(ps, 0, "case=origin ellipsoid" + lam)));
    const Polytope<N> e = linear_image(phi, ball.body);
    const std::string etag = ";ball_m=" + std::to_string(c.ball_m);
    in.bodies = {e.scaled(lambda).translated(x)};
    out.push_back(check_inequality(Inequality::Petty, in, eq(1.0, N - 1, "case=ellipsoid" + lam + etag)));
    in.bodies = {e.scaled(lambda)};
    out.push_back(check_inequality(Inequality::LpPetty, in, eq(p, N - 1, "case=origin ellipsoid" + lam + etag)));
    in.bodies.clear();
    for (int j = 0; j < N - 1; ++j) in.bodies.push_back(e.scaled(rng.uniform(0.5, 2.0)).translated(0.3 * rng.normal_vector<N>()));
    out.push_back(check_inequality(Inequality::MixedPetty, in, eq(1.0, 0, "case=homothetic ellipsoids" + etag)));
    return out;
  });

  // Independent oracle routes.
  add(11, c.brightness_cases, [&](std::uint64_t seed, int index) {
    CheckInputs<N> in;
    in.bodies = {generate_polytope<N>(c.vertices, seed, false)};
    in.directions = sample_dirs(seed, 16);
    return std::vector<CheckRecord>{check_identity(Identity::brightness, in, params(seed, index, 1.0, 0, mtag))};
  });
  add(12, c.monte_carlo_cases, [&](std::uint64_t seed, int index) {
    CheckInputs<N> in;
    in.bodies = {generate_polytope<N>(c.vertices, seed, false)};
    CheckParams par = params(seed, index, 1.0, 0, mtag);
    par.samples = c.monte_carlo_samples;
    return std::vector<CheckRecord>{check_identity(Identity::monte_carlo_volume, in, par)};
  });
  add(13, c.polarization_cases, [&](std::uint64_t seed, int index) {
    CheckInputs<N> in;
    for (int j = 0; j < N; ++j) in.bodies.push_back(generate_polytope<N>(c.vertices, Rng::stream(seed, j).bits(), false));
    return std::vector<CheckRecord>{check_identity(Identity::volume_polarization, in, params(seed, index, 1.0, 0, mtag))};
  });

  // Run; results are merged by task order, not completion order.
  std::vector<std::vector<CheckRecord>> results(tasks.size());
  const auto run_one = [&](std::size_t j) {
    const Task& task = tasks[j];
    const std::uint64_t seed = case_seed(c.seed, task.group, task.index);
    try {
      results[j] = task.run(seed);
    } catch (const std::exception& e) {
      CheckRecord r;
      r.name = "group" + std::to_string(task.group);
      r.anchor = "case failed";
      r.kind = "error";
      r.seed = seed;
      r.case_index = task.index;
      r.verdict = Verdict::violated;
      r.note = e.what();
      results[j] = {r};
    }
  };
  unsigned workers = c.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : static_cast<unsigned>(c.threads);
  if (workers <= 1) {
    for (std::size_t j = 0; j < tasks.size(); ++j) run_one(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t j = next++; j < tasks.size(); j = next++) run_one(j);
      });
    }
    for (auto& th : pool) th.join();
  }
  std::vector<CheckRecord> all;
  for (auto& r : results) all.insert(all.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
  return all;
}

}  // namespace mixedlp::lab
