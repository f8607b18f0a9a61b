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

#include "mixedlp/core.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace mixedlp {

/// Nodes and positive weights on S^{N−1}. `degree` is the largest polynomial
/// degree (trigonometric degree for N = 2) integrated exactly.
template <int N>
struct Quadrature {
  std::vector<Vec<N>> nodes;
  std::vector<double> weights;
  int degree = 0;
  int level = 0;

  std::size_t size() const { return nodes.size(); }

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

namespace detail {

/// Gauss–Legendre nodes/weights on [−1, 1] by Newton iteration on P_k.
inline void gauss_legendre(int k, std::vector<double>& x, std::vector<double>& w) {
  x.assign(k, 0.0);
  w.assign(k, 0.0);
  for (int i = 0; i < (k + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (k + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int j = 2; j <= k; ++j) {
        const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = k * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0, p1 = z;
    for (int j = 2; j <= k; ++j) {
      const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = k * (z * p1 - p0) / (z * z - 1.0);
    x[i] = -z;
    x[k - 1 - i] = z;
    w[i] = w[k - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

inline constexpr std::array<int, 9> kSphereDegrees = {5, 11, 17, 23, 35, 47, 63, 95, 127};

}  // namespace detail

inline constexpr int kDefaultCircleLevel = 8;  // 256 angles
inline constexpr int kDefaultSphereLevel = 4;  // degree 35

/// N = 2: 2^level equispaced angles (level in [2, 16]).
/// N = 3: product Gauss–Legendre × equispaced azimuth rule; level in [0, 8]
/// selects degree 5, 11, 17, 23, 35, 47, 63, 95, 127.
template <int N>
Quadrature<N> make_quadrature(int level) {
  static_assert(N == 2 || N == 3, "quadrature tables exist for n = 2, 3 only");
  Quadrature<N> q;
  q.level = level;
  if constexpr (N == 2) {
    if (level < 2 || level > 16) throw std::out_of_range("make_quadrature<2>: level must be in [2, 16]");
    const int m = 1 << level;
    q.degree = m - 1;
    const double w = 2.0 * std::numbers::pi / m;
    for (int k = 0; k < m; ++k) {
      const double a = 2.0 * std::numbers::pi * k / m;
      q.nodes.push_back(Vec<2>(std::cos(a), std::sin(a)));
      q.weights.push_back(w);
    }
  } else {
    if (level < 0 || level >= static_cast<int>(detail::kSphereDegrees.size())) {
      throw std::out_of_range("make_quadrature<3>: level must be in [0, 8]");
    }
    const int d = detail::kSphereDegrees[level];
    q.degree = d;
    std::vector<double> z, wz;
    detail::gauss_legendre((d + 2) / 2, z, wz);
    const int na = d + 1;
    for (std::size_t i = 0; i < z.size(); ++i) {
      const double r = std::sqrt(std::max(0.0, 1.0 - z[i] * z[i]));
      for (int k = 0; k < na; ++k) {
        const double a = 2.0 * std::numbers::pi * (k + 0.5 * (i % 2)) / na;
        q.nodes.push_back(Vec<3>(r * std::cos(a), r * std::sin(a), z[i]));
        q.weights.push_back(wz[i] * 2.0 * std::numbers::pi / na);
      }
    }
  }
  return q;
}

/// Shared, lazily built rules; references stay valid for the program's life.
template <int N>
const Quadrature<N>& cached_quadrature(int level) {
  static std::mutex mutex;
  static std::map<int, Quadrature<N>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(level);
  if (it == cache.end()) it = cache.emplace(level, make_quadrature<N>(level)).first;
  return it->second;
}

/// The next coarser rule of the same family, if there is one.
template <int N>
const Quadrature<N>* coarser_quadrature(const Quadrature<N>& q) {
  const int lowest = N == 2 ? 2 : 0;
  if (q.level <= lowest) return nullptr;
  return &cached_quadrature<N>(q.level - 1);
}

template <int N>
Quadrature<N> default_quadrature() {
  if constexpr (N == 2) {
    return make_quadrature<2>(kDefaultCircleLevel);
  } else {
    return make_quadrature<3>(kDefaultSphereLevel);
  }
}

/// Near-uniform point set on S^{N−1}: equispaced angles (N = 2) or the
/// Fibonacci spiral (N = 3).
template <int N>
std::vector<Vec<N>> sphere_points(int m) {
  std::vector<Vec<N>> pts;
  pts.reserve(m);
  if constexpr (N == 2) {
    for (int k = 0; k < m; ++k) {
      const double a = 2.0 * std::numbers::pi * k / m;
      pts.push_back(Vec<2>(std::cos(a), std::sin(a)));
    }
  } else {
    const double golden = std::numbers::pi * (1.0 + std::sqrt(5.0));
    for (int k = 0; k < m; ++k) {
      const double z = 1.0 - 2.0 * (k + 0.5) / m;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = golden * (k + 0.5);
      pts.push_back(Vec<3>(r * std::cos(a), r * std::sin(a), z));
    }
  }
  return pts;
}

/// Worst relative error of the rule on ∫|u·e|^p dS over a fixed set of axes e.
/// This is the normalization error of Γ_p B, used as the quadrature proxy.
template <int N>
double quadrature_proxy(const Quadrature<N>& q, double p) {
  const double exact = sphere_abs_moment(N, p);
  double worst = 0.0;
  for (const auto& e : sphere_points<N>(64)) {
    const double v = q.integrate([&](const Vec<N>& u) { return abs_pow(u.dot(e), p); });
    worst = std::max(worst, std::abs(v / exact - 1.0));
  }
  return worst;
}

}  // namespace mixedlp
