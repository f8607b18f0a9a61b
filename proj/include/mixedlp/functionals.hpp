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

#include "mixedlp/bodies.hpp"
#include "mixedlp/core.hpp"
#include "mixedlp/measures.hpp"
#include "mixedlp/polytope.hpp"
#include "mixedlp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixedlp {

enum class Method { exact_sum, quadrature, finite_difference };

inline std::string to_string(Method m) {
  switch (m) {
    case Method::exact_sum: return "exact-sum";
    case Method::quadrature: return "quadrature";
    case Method::finite_difference: return "finite-difference";
  }
  return "unknown";
}

struct FunctionalResult {
  double value = 0.0;
  Method method = Method::exact_sum;
  double tolerance = 0.0;  // error estimate; > 0 for quadrature and finite differences
};

/// V(K_1, …, K_N) = (1/N) ∫ h_{K_N} dS(K_1, …, K_{N−1}; ·).
/// The body placed in the integrand slot is chosen so the measure slots hold
/// as many repeats as possible; the value is symmetric either way.
template <int N>
FunctionalResult mixed_volume(std::span<const Polytope<N>> bodies) {
  if (static_cast<int>(bodies.size()) != N) throw std::invalid_argument("mixed_volume: expected n bodies");
  int last = N - 1;
  std::size_t fewest = bodies.size() + 1;
  for (int cand = N - 1; cand >= 0; --cand) {
    std::vector<const Polytope<N>*> seen;
    for (int i = 0; i < N; ++i) {
      if (i == cand) continue;
      if (std::none_of(seen.begin(), seen.end(), [&](const Polytope<N>* s) { return *s == bodies[i]; })) {
        seen.push_back(&bodies[i]);
      }
    }
    if (seen.size() < fewest) fewest = seen.size(), last = cand;
  }
  std::vector<Polytope<N>> slots;
  for (int i = 0; i < N; ++i) {
    if (i != last) slots.push_back(bodies[i]);
  }
  const auto mu = mixed_area_measure<N>(slots);
  const Polytope<N>& integrand = bodies[last];
  const double v = integrate([&](const Vec<N>& u) { return integrand.support(u); }, mu) / N;
  return {v, Method::exact_sum, 0.0};
}

template <int N>
FunctionalResult mixed_volume(const std::vector<Polytope<N>>& bodies) {
  return mixed_volume<N>(std::span<const Polytope<N>>(bodies));
}

/// V(K, s; L, t; Q, N−s−t).
template <int N>
FunctionalResult repeated_mixed_volume(const Polytope<N>& k, int s, const Polytope<N>& l, int t, const Polytope<N>& q) {
  if (s < 0 || t < 0 || s + t > N) throw std::out_of_range("repeated_mixed_volume: need s, t >= 0 and s + t <= n");
  std::vector<Polytope<N>> list;
  for (int i = 0; i < s; ++i) list.push_back(k);
  for (int i = 0; i < t; ++i) list.push_back(l);
  for (int i = s + t; i < N; ++i) list.push_back(q);
  return mixed_volume<N>(list);
}

/// W_i(K) = V(K, N−i; B, i) with B replaced by ball_approx(N, m). The
/// reported tolerance brackets the true value using the approximant's inner
/// and outer radii (W_i is monotone and i-homogeneous in the ball slot).
template <int N>
FunctionalResult quermassintegral(const Polytope<N>& k, int i, int m) {
  if (i < 0 || i > N) throw std::out_of_range("quermassintegral: i must be in [0, n]");
  if (i == 0) return {k.volume(), Method::exact_sum, 0.0};
  const BallApprox<N> ball = ball_approx<N>(m);
  FunctionalResult r = repeated_mixed_volume(k, N - i, ball.body, i, ball.body);
  r.tolerance = r.value * std::max(std::pow(ball.inner_radius, -i) - 1.0, 1.0 - std::pow(ball.outer_radius, -i));
  return r;
}

/// V_{p,t}(K, L, Q) = (1/N) ∫ h_L^p dS_{p,t}(K, Q; ·), an exact finite sum
/// for polytopal K, Q and any support-evaluable L.
template <int N>
FunctionalResult lpt_mixed_volume(const Polytope<N>& k, const SupportBody<N>& l, const Polytope<N>& q, double p, int t) {
  if (t < 0 || t > N - 1) throw std::out_of_range("lpt_mixed_volume: t must be in [0, n-1]");
  if (!l.origin_interior()) throw MembershipError("lpt_mixed_volume: L must contain the origin in its interior");
  const auto mu = lp_mixed_surface_measure(k, q, p, t);
  const double v = integrate([&](const Vec<N>& u) { return pos_pow(l.support(u), p); }, mu) / N;
  return {v, Method::exact_sum, 0.0};
}

/// V_p(K, L) = (1/N) ∫ h_L^p dS_p(K, ·).
template <int N>
FunctionalResult lp_mixed_volume(const Polytope<N>& k, const SupportBody<N>& l, double p) {
  return lpt_mixed_volume(k, l, k, p, N - 1);
}

namespace detail {

/// Outer polytope {x : x·u ≤ h(u) for u in dirs}, built as the polar of
/// conv{u / h(u)}.
template <int N>
Polytope<N> halfspace_polytope(const std::vector<Vec<N>>& dirs, const std::function<double(const Vec<N>&)>& h) {
  std::vector<Vec<N>> pts;
  pts.reserve(dirs.size());
  for (const auto& u : dirs) pts.push_back(u / h(u));
  return polar_polytope(convex_hull<N>(pts));
}

/// Facet normals of K+Q (and K+L+Q for polytopal L) plus Fibonacci directions.
template <int N>
std::vector<Vec<N>> limit_directions(const Polytope<N>& k, const SupportBody<N>& l, const Polytope<N>& q, int extra) {
  Polytope<N> source = minkowski_sum(k, q);
  if (const auto* lp = l.as_polytope()) source = minkowski_sum(source, *lp);
  std::vector<Vec<N>> dirs;
  for (const auto& f : source.facets()) dirs.push_back(f.normal);
  for (const auto& u : sphere_points<N>(extra)) dirs.push_back(u);
  return dirs;
}

template <int N>
double lpt_quotient(const Polytope<N>& k, const SupportBody<N>& l, const Polytope<N>& q, double p, int t, double eps,
                    const std::vector<Vec<N>>& dirs, double v0) {
  const SupportBody<N> comb = lp_combination(1.0, SupportBody<N>(k), eps, l, p);
  const Polytope<N> approx = halfspace_polytope<N>(dirs, [&](const Vec<N>& u) { return comb.support(u); });
  return p / (t + 1) * (repeated_mixed_volume(approx, t + 1, q, 0, q).value - v0) / eps;
}

/// Value of the polynomial through (x_i, y_i) at x = 0 (Neville).
inline double extrapolate_to_zero(const std::vector<double>& x, std::vector<double> y, double* last_change) {
  const std::size_t m = x.size();
  double prev = y[m - 1];
  for (std::size_t level = 1; level < m; ++level) {
    for (std::size_t i = m - 1; i >= level; --i) {
      y[i] = (x[i] * y[i - 1] - x[i - level] * y[i]) / (x[i] - x[i - level]);
    }
    if (level + 1 == m && last_change) *last_change = std::abs(y[m - 1] - prev);
    prev = y[m - 1];
  }
  return y[m - 1];
}

}  // namespace detail

inline const std::vector<double>& default_eps_schedule() {
  static const std::vector<double> s = {1e-2, 5e-3, 2.5e-3};
  return s;
}

/// Definition-based V_{p,t}: the one-sided derivative
///   p/(t+1) · d/dε V(K +_p ε·L, t+1; Q, N−t−1) at ε = 0
/// by difference quotients and Richardson extrapolation. The steps are
/// `schedule` divided by max (h_L/h_K)^p over the cut directions, so each one
/// bounds the relative change of h_K^p.
/// K +_p ε·L is not a polytope; it is replaced by the outer polytope cut by
/// its support values on the facet normals of K+Q (and of K+L+Q when L is a
/// polytope) together with `extra_directions` Fibonacci directions. Because
/// those normals carry S(K, t; Q, ·), the approximants have the same first
/// variation at ε = 0 as the true combination.
template <int N>
FunctionalResult lpt_mixed_volume_limit(const Polytope<N>& k, const SupportBody<N>& l, const Polytope<N>& q, double p, int t,
                                        const std::vector<double>& schedule = default_eps_schedule(),
                                        int extra_directions = 128) {
  if (t < 0 || t > N - 1) throw std::out_of_range("lpt_mixed_volume_limit: t must be in [0, n-1]");
  if (!(p >= 1.0)) throw std::domain_error("lpt_mixed_volume_limit: p must be >= 1");
  if (!k.contains_origin() || !l.origin_interior()) {
    throw MembershipError("lpt_mixed_volume_limit: K and L must contain the origin in their interiors");
  }
  if (schedule.size() < 2 || schedule.front() > 0.25) {
    throw std::invalid_argument("lpt_mixed_volume_limit: eps schedule too coarse to extrapolate");
  }
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (!(schedule[i] > 0.0) || (i > 0 && !(schedule[i] < schedule[i - 1]))) {
      throw std::invalid_argument("lpt_mixed_volume_limit: eps schedule must be positive and decreasing");
    }
  }

  const std::vector<Vec<N>> dirs = detail::limit_directions(k, l, q, extra_directions);
  const double v0 = repeated_mixed_volume(k, t + 1, q, 0, q).value;
  double ratio = 0.0;
  for (const auto& u : dirs) ratio = std::max(ratio, std::pow(l.support(u) / k.support(u), p));
  std::vector<double> eps(schedule.size()), quotients;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    eps[i] = schedule[i] / ratio;
    quotients.push_back(detail::lpt_quotient(k, l, q, p, t, eps[i], dirs, v0));
  }
  double change = 0.0;
  const double value = detail::extrapolate_to_zero(eps, quotients, &change);
  return {value, Method::finite_difference, std::max(change, 1e-15 * std::abs(value))};
}

/// Difference quotient at a single ε (no extrapolation).
template <int N>
double lpt_difference_quotient(const Polytope<N>& k, const SupportBody<N>& l, const Polytope<N>& q, double p, int t, double eps,
                               int extra_directions = 128) {
  const auto dirs = detail::limit_directions(k, l, q, extra_directions);
  return detail::lpt_quotient(k, l, q, p, t, eps, dirs, repeated_mixed_volume(k, t + 1, q, 0, q).value);
}

/// W_{p,i}(K, L) = V_{p,t}(K, L, B) with i = N−t−1 and B ≈ ball_approx(N, m).
/// i = 0 needs no ball.
template <int N>
FunctionalResult lp_mixed_quermassintegral(const Polytope<N>& k, const SupportBody<N>& l, double p, int i, int m) {
  if (i < 0 || i > N - 1) throw std::out_of_range("lp_mixed_quermassintegral: i must be in [0, n-1]");
  const int t = N - i - 1;
  if (i == 0) return lpt_mixed_volume(k, l, k, p, t);
  const BallApprox<N> ball = ball_approx<N>(m);
  FunctionalResult r = lpt_mixed_volume(k, l, ball.body, p, t);
  r.tolerance = std::abs(r.value) * std::max(std::pow(ball.inner_radius, -i) - 1.0, 1.0 - std::pow(ball.outer_radius, -i));
  return r;
}

/// (1/N) ∫ ρ^N dS by quadrature. The tolerance is the change against the next
/// coarser rule of the same family (zero when there is none).
template <int N>
FunctionalResult star_volume(const StarBody<N>& k, const Quadrature<N>& quad) {
  const auto integrand = [&](const Vec<N>& u) { return pos_pow(k.radial(u), N); };
  const double v = quad.integrate(integrand) / N;
  double err = 0.0;
  if (const Quadrature<N>* coarse = coarser_quadrature(quad)) err = std::abs(coarse->integrate(integrand) / N - v);
  return {v, Method::quadrature, err};
}

/// Volume of a convex body given by its support function.
template <int N>
FunctionalResult support_body_volume(const SupportBody<N>& k, const Quadrature<N>& quad) {
  if (const auto* p = k.as_polytope()) return {p->volume(), Method::exact_sum, 0.0};
  return star_volume(StarBody<N>::radial_of(k), quad);
}

/// Ṽ_{−p}(K, L) = (1/N) ∫ ρ_K^{N+p} ρ_L^{−p} dS.
template <int N>
FunctionalResult dual_mixed_volume(const StarBody<N>& k, const StarBody<N>& l, double p, const Quadrature<N>& quad) {
  if (!(p >= 1.0)) throw std::domain_error("dual_mixed_volume: p must be >= 1");
  const double v = quad.integrate([&](const Vec<N>& u) {
    const double rk = k.radial(u), rl = l.radial(u);
    if (!(rk > 0.0) || !(rl > 0.0) || !std::isfinite(rk) || !std::isfinite(rl)) {
      throw std::domain_error("dual_mixed_volume: radial function evaluation failed");
    }
    return pos_pow(rk, N + p) * pos_pow(rl, -p);
  }) / N;
  return {v, Method::quadrature, std::abs(v) * quadrature_proxy(quad, p)};
}

}  // namespace mixedlp
