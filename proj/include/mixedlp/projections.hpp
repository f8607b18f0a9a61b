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
#include "mixedlp/functionals.hpp"
#include "mixedlp/measures.hpp"
#include "mixedlp/polytope.hpp"
#include "mixedlp/quadrature.hpp"

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace mixedlp {

/// A projection-type body: h(u) = (scale · Σ w_i |u·v_i|^p)^{1/p} over a
/// stored measure. Never materialized, except through `zonotope` for p = 1.
template <int N>
struct ProjectionBody {
  SupportBody<N> body;
  Provenance provenance;

  double operator()(const Vec<N>& u) const { return body.support(u); }
  double support(const Vec<N>& u) const { return body.support(u); }
  const SphericalMeasure<N>& measure() const { return body.as_computed()->measure; }
  double exponent() const { return body.as_computed()->p; }
  double scale() const { return body.as_computed()->scale; }
};

/// 1 / (N ω_N c_{N−2,p}), the L_p projection normalizer.
template <int N>
double lp_projection_normalizer(double p) {
  return 1.0 / (N * unit_ball_volume(N) * lyz_constant(N - 2, p));
}

/// υ(K^u) = (1/2) Σ w_i |u·v_i| over S_K, for the unit vector along u.
template <int N>
double brightness(const Polytope<N>& k, const Vec<N>& u) {
  const Vec<N> e = normalized(u);
  double s = 0.0;
  for (const auto& f : k.facets()) s += f.measure * std::abs(e.dot(f.normal));
  return 0.5 * s;
}

template <int N>
ProjectionBody<N> mixed_projection_body(std::span<const Polytope<N>> bodies) {
  auto mu = mixed_area_measure<N>(bodies);
  bool all_equal = true;
  for (const auto& b : bodies) all_equal = all_equal && b == bodies.front();
  const Provenance tag = all_equal ? Provenance::classical : Provenance::mixed;
  return {SupportBody<N>::computed(std::move(mu), 1.0, 0.5, tag), tag};
}

template <int N>
ProjectionBody<N> mixed_projection_body(const std::vector<Polytope<N>>& bodies) {
  return mixed_projection_body<N>(std::span<const Polytope<N>>(bodies));
}

/// Π(K_1, …, K_{N−1}) rescaled by the p = 1 normalizer, so that the ball is
/// mapped to itself. This is the normalization under which the Petty
/// inequalities read ≤ ω_N^N.
template <int N>
ProjectionBody<N> normalized_mixed_projection_body(std::span<const Polytope<N>> bodies) {
  ProjectionBody<N> pb = mixed_projection_body<N>(bodies);
  auto mu = pb.measure();
  return {SupportBody<N>::computed(std::move(mu), 1.0, lp_projection_normalizer<N>(1.0), pb.provenance), pb.provenance};
}

/// ΠK.
template <int N>
ProjectionBody<N> projection_body(const Polytope<N>& k) {
  return {SupportBody<N>::computed(area_measure(k), 1.0, 0.5, Provenance::classical), Provenance::classical};
}

/// Π_p K with h^p = (1/(N ω_N c_{N−2,p})) ∫ |u·v|^p dS_p(K, v).
template <int N>
ProjectionBody<N> lp_projection_body(const Polytope<N>& k, double p) {
  return {SupportBody<N>::computed(lp_surface_measure(k, p), p, lp_projection_normalizer<N>(p), Provenance::lp),
          Provenance::lp};
}

/// Π_{p,t}(K, Q) with h^p = (1/(N ω_N c_{N−2,p})) ∫ |u·v|^p dS_{p,t}(K, Q; v).
template <int N>
ProjectionBody<N> mixed_lp_projection_body(const Polytope<N>& k, const Polytope<N>& q, double p, int t) {
  return {SupportBody<N>::computed(lp_mixed_surface_measure(k, q, p, t), p, lp_projection_normalizer<N>(p),
                                   Provenance::mixed_lp),
          Provenance::mixed_lp};
}

/// K* as a star body, ρ = 1/h_K.
template <int N>
StarBody<N> polar_body(const SupportBody<N>& k) {
  return StarBody<N>::polar_of(k);
}

template <int N>
StarBody<N> polar_body(const ProjectionBody<N>& k) {
  return StarBody<N>::polar_of(k.body);
}

/// Γ_p L with h^p(x) = (1/((N+p) c_{N,p} V(L))) ∫ |x·v|^p ρ_L^{N+p}(v) dS(v),
/// discretized by `quad`; V(L) uses the same rule.
template <int N>
SupportBody<N> centroid_body(const StarBody<N>& l, double p, const Quadrature<N>& quad) {
  if (!(p >= 1.0)) throw std::domain_error("centroid_body: p must be >= 1");
  std::vector<Atom<N>> atoms;
  atoms.reserve(quad.size());
  double volume = 0.0;
  for (std::size_t j = 0; j < quad.size(); ++j) {
    const double r = l.radial(quad.nodes[j]);
    volume += quad.weights[j] * pos_pow(r, N);
    atoms.push_back({quad.nodes[j], quad.weights[j] * pos_pow(r, N + p)});
  }
  volume /= N;
  const double scale = 1.0 / ((N + p) * lyz_constant(N, p) * volume);
  return SupportBody<N>::computed(SphericalMeasure<N>(std::move(atoms), true), p, scale, Provenance::centroid);
}

/// Exact zonotope Σ_i [−(s w_i) v_i, (s w_i) v_i] for a p = 1 projection body.
template <int N>
Polytope<N> zonotope(const ProjectionBody<N>& pb) {
  if (pb.exponent() != 1.0) throw std::domain_error("zonotope: only p = 1 projection bodies are zonotopes");
  std::vector<Vec<N>> pts{Vec<N>::Zero()};
  for (const auto& a : pb.measure().atoms()) {
    const Vec<N> half = pb.scale() * a.weight * a.direction;
    std::vector<Vec<N>> next;
    next.reserve(2 * pts.size());
    for (const auto& x : pts) {
      next.push_back(x + half);
      next.push_back(x - half);
    }
    if (static_cast<int>(next.size()) > 4 * (N + 1)) {
      const Polytope<N> h = convex_hull<N>(next);
      pts = h.vertices();
    } else {
      pts = std::move(next);
    }
  }
  return convex_hull<N>(pts);
}

}  // namespace mixedlp
