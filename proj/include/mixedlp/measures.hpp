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
#include "mixedlp/polytope.hpp"
#include "mixedlp/spherical_measure.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace mixedlp {

/// S_P: one atom (normal_i, measure_i) per facet.
template <int N>
SphericalMeasure<N> area_measure(const Polytope<N>& p) {
  std::vector<Atom<N>> atoms;
  atoms.reserve(p.facets().size());
  for (const auto& f : p.facets()) atoms.push_back({f.normal, f.measure});
  return SphericalMeasure<N>(std::move(atoms), true);
}

namespace detail {

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

/// Σ_k c_k B_k for distinct bodies B_k and integer multiplicities c_k.
template <int N>
Polytope<N> multiset_sum(std::span<const Polytope<N>* const> distinct, const std::vector<int>& counts) {
  std::optional<Polytope<N>> acc;
  for (std::size_t k = 0; k < distinct.size(); ++k) {
    if (counts[k] == 0) continue;
    Polytope<N> term = counts[k] == 1 ? *distinct[k] : distinct[k]->scaled(counts[k]);
    acc = acc ? minkowski_sum(*acc, term) : std::move(term);
  }
  return *acc;
}

}  // namespace detail

/// S(K_1, …, K_{N−1}; ·) by polarization,
///   (1/(N−1)!) Σ_{∅≠J} (−1)^{N−1−|J|} S_{Σ_J K_j}.
/// Repeated arguments are grouped: a sum that uses one body c times is the
/// exact dilate c·K, so no hull is built for it.
template <int N>
SphericalMeasure<N> mixed_area_measure(std::span<const Polytope<N>> bodies) {
  if (static_cast<int>(bodies.size()) != N - 1) {
    throw std::invalid_argument("mixed_area_measure: expected n - 1 bodies");
  }
  std::vector<const Polytope<N>*> distinct;
  std::vector<int> mult;
  for (const auto& b : bodies) {
    bool found = false;
    for (std::size_t k = 0; k < distinct.size(); ++k) {
      if (*distinct[k] == b) {
        ++mult[k];
        found = true;
        break;
      }
    }
    if (!found) {
      distinct.push_back(&b);
      mult.push_back(1);
    }
  }
  if (distinct.size() == 1) return area_measure(*distinct.front());

  std::vector<Atom<N>> raw;
  std::vector<int> counts(distinct.size(), 0);
  const double norm = 1.0 / detail::factorial(N - 1);
  // Enumerate multiplicity vectors 0 ≤ counts[k] ≤ mult[k].
  for (;;) {
    std::size_t k = 0;
    while (k < counts.size() && counts[k] == mult[k]) counts[k++] = 0;
    if (k == counts.size()) break;
    ++counts[k];
    int size = 0;
    double ways = 1.0;
    for (std::size_t j = 0; j < counts.size(); ++j) {
      size += counts[j];
      ways *= detail::binomial(mult[j], counts[j]);
    }
    const double sign = ((N - 1 - size) % 2 == 0) ? 1.0 : -1.0;
    const Polytope<N> sum = detail::multiset_sum<N>(distinct, counts);
    for (const auto& f : sum.facets()) raw.push_back({f.normal, norm * sign * ways * f.measure});
  }
  return merge_atoms<N>(std::move(raw), true);
}

template <int N>
SphericalMeasure<N> mixed_area_measure(const std::vector<Polytope<N>>& bodies) {
  return mixed_area_measure<N>(std::span<const Polytope<N>>(bodies));
}

/// S(K, t; Q, N−1−t; ·). t = 0 gives S_Q and t = N−1 gives S_K.
template <int N>
SphericalMeasure<N> repeated_mixed_area_measure(const Polytope<N>& k, int t, const Polytope<N>& q) {
  if (t < 0 || t > N - 1) throw std::out_of_range("repeated_mixed_area_measure: t must be in [0, n-1]");
  std::vector<Polytope<N>> list;
  for (int i = 0; i < t; ++i) list.push_back(k);
  for (int i = t; i < N - 1; ++i) list.push_back(q);
  return mixed_area_measure<N>(list);
}

/// dS_{p,t}(K, Q; ·) = h_K^{1−p} dS(K, t; Q, N−1−t; ·).
template <int N>
SphericalMeasure<N> lp_mixed_surface_measure(const Polytope<N>& k, const Polytope<N>& q, double p, int t) {
  if (!(p >= 1.0)) throw std::domain_error("lp_mixed_surface_measure: p must be >= 1");
  if (!k.contains_origin()) throw MembershipError("lp_mixed_surface_measure: K must contain the origin in its interior");
  SphericalMeasure<N> base = repeated_mixed_area_measure(k, t, q);
  std::vector<Atom<N>> atoms = base.atoms();
  for (auto& a : atoms) a.weight *= pos_pow(k.support(a.direction), 1.0 - p);
  return SphericalMeasure<N>(std::move(atoms), true);
}

/// S_p(K, ·), the t = N−1 case.
template <int N>
SphericalMeasure<N> lp_surface_measure(const Polytope<N>& k, double p) {
  return lp_mixed_surface_measure(k, k, p, N - 1);
}

/// μ^{(p)}(φ ·): atom (v, w) ↦ (⟨φ^{−1}v⟩, |φ^{−1}v|^p w).
template <int N>
SphericalMeasure<N> transform_measure_p(const SphericalMeasure<N>& mu, const LinMap<N>& phi, double p) {
  if (!(p > 0.0)) throw std::domain_error("transform_measure_p: p must be > 0");
  const LinMap<N> inv = phi.inverse();
  std::vector<Atom<N>> atoms;
  atoms.reserve(mu.size());
  for (const auto& a : mu.atoms()) {
    const Vec<N> y = inv(a.direction);
    const double r = y.norm();
    atoms.push_back({y / r, pos_pow(r, p) * a.weight});
  }
  return SphericalMeasure<N>(std::move(atoms), mu.positive());
}

/// Largest weight discrepancy between two measures after matching atoms by
/// direction, relative to the larger total mass. Unmatched atoms count in full.
template <int N>
double atomwise_discrepancy(const SphericalMeasure<N>& a, const SphericalMeasure<N>& b, double match_angle = 1e-7) {
  const double mass = std::max({std::abs(a.total_mass()), std::abs(b.total_mass()), 1e-300});
  std::vector<char> used(b.size(), 0);
  double worst = 0.0;
  for (const auto& x : a.atoms()) {
    int hit = -1;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!used[j] && (x.direction - b.atoms()[j].direction).norm() <= match_angle) {
        hit = static_cast<int>(j);
        break;
      }
    }
    if (hit < 0) {
      worst = std::max(worst, std::abs(x.weight) / mass);
    } else {
      used[hit] = 1;
      worst = std::max(worst, std::abs(x.weight - b.atoms()[hit].weight) / mass);
    }
  }
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (!used[j]) worst = std::max(worst, std::abs(b.atoms()[j].weight) / mass);
  }
  return worst;
}

/// Atom-wise sum of two measures (merged by direction).
template <int N>
SphericalMeasure<N> add_measures(const SphericalMeasure<N>& a, const SphericalMeasure<N>& b) {
  std::vector<Atom<N>> raw = a.atoms();
  raw.insert(raw.end(), b.atoms().begin(), b.atoms().end());
  return merge_atoms<N>(std::move(raw), a.positive() && b.positive());
}

}  // namespace mixedlp
