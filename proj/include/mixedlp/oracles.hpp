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

// Independent routes used to cross-check the main pipeline. Nothing here
// goes through mixed area measures.

#include "mixedlp/core.hpp"
#include "mixedlp/polytope.hpp"
#include "mixedlp/rng.hpp"

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace mixedlp::oracle {

/// Volume of the orthogonal projection of K onto u^⊥, by projecting the
/// vertices and measuring their hull in N−1 dimensions.
template <int N>
double projected_volume(const Polytope<N>& k, const Vec<N>& u) {
  const Vec<N> e = normalized(u);
  if constexpr (N == 2) {
    const Vec<2> w(-e[1], e[0]);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& v : k.vertices()) {
      lo = std::min(lo, w.dot(v));
      hi = std::max(hi, w.dot(v));
    }
    return hi - lo;
  } else {
    const Vec<3> a = std::abs(e[0]) < 0.9 ? Vec<3>::UnitX() : Vec<3>::UnitY();
    const Vec<3> b1 = e.cross(a).normalized();
    const Vec<3> b2 = e.cross(b1);
    std::vector<Vec<2>> pts;
    for (const auto& v : k.vertices()) pts.push_back(Vec<2>(b1.dot(v), b2.dot(v)));
    return convex_hull<2>(pts).volume();
  }
}

struct MonteCarloEstimate {
  double value;
  double sigma;
};

/// Rejection sampling in the bounding box; membership by facet inequalities.
template <int N>
MonteCarloEstimate monte_carlo_volume(const Polytope<N>& k, int samples, Rng& rng) {
  Vec<N> lo = k.vertices().front(), hi = lo;
  for (const auto& v : k.vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  double box = 1.0;
  for (int i = 0; i < N; ++i) box *= hi[i] - lo[i];
  long hits = 0;
  for (int s = 0; s < samples; ++s) {
    Vec<N> x;
    for (int i = 0; i < N; ++i) x[i] = rng.uniform(lo[i], hi[i]);
    bool in = true;
    for (const auto& f : k.facets()) {
      if (f.normal.dot(x) > f.offset) {
        in = false;
        break;
      }
    }
    hits += in;
  }
  const double frac = static_cast<double>(hits) / samples;
  return {box * frac, box * std::sqrt(frac * (1.0 - frac) / samples)};
}

/// V(K_1, …, K_N) = (1/N!) Σ_{∅≠J} (−1)^{N−|J|} V(Σ_J K_j), from volumes of
/// Minkowski sums only.
template <int N>
double mixed_volume_by_polarization(std::span<const Polytope<N>> bodies) {
  if (static_cast<int>(bodies.size()) != N) throw std::invalid_argument("mixed_volume_by_polarization: expected n bodies");
  double total = 0.0, fact = 1.0;
  for (int i = 2; i <= N; ++i) fact *= i;
  for (int mask = 1; mask < (1 << N); ++mask) {
    std::vector<Vec<N>> pts{Vec<N>::Zero()};
    int size = 0;
    for (int j = 0; j < N; ++j) {
      if (!((mask >> j) & 1)) continue;
      ++size;
      std::vector<Vec<N>> next;
      for (const auto& x : pts) {
        for (const auto& v : bodies[j].vertices()) next.push_back(x + v);
      }
      pts = size >= 2 ? convex_hull<N>(next).vertices() : next;
    }
    const double v = convex_hull<N>(pts).volume();
    total += ((N - size) % 2 == 0 ? 1.0 : -1.0) * v;
  }
  return total / fact;
}

/// 2D Steiner route: V(K, L) = (A(K + rL) − A(K) − r² A(L)) / (2r).
inline double mixed_area_by_steiner(const Polytope<2>& k, const Polytope<2>& l, double r) {
  std::vector<Vec<2>> pts;
  for (const auto& x : k.vertices()) {
    for (const auto& y : l.vertices()) pts.push_back(x + r * y);
  }
  return (convex_hull<2>(pts).volume() - k.volume() - r * r * l.volume()) / (2.0 * r);
}

}  // namespace mixedlp::oracle
