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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace mixedlp {

template <int N>
struct Atom {
  Vec<N> direction;
  double weight = 0.0;
};

/// A finitely supported measure on S^{N−1}. Atoms are kept sorted by
/// direction; `positive()` records whether all weights are known to be ≥ 0.
template <int N>
class SphericalMeasure {
 public:
  SphericalMeasure() = default;

  explicit SphericalMeasure(std::vector<Atom<N>> atoms, bool positive = true)
      : atoms_(std::move(atoms)), positive_(positive) {
    for (const auto& a : atoms_) {
      if (std::abs(a.direction.norm() - 1.0) > 1e-10) {
        throw std::domain_error("SphericalMeasure: atom direction is not a unit vector");
      }
      if (!std::isfinite(a.weight)) throw std::domain_error("SphericalMeasure: non-finite weight");
      if (positive_ && a.weight < 0.0) throw std::domain_error("SphericalMeasure: negative weight in a positive measure");
    }
    std::sort(atoms_.begin(), atoms_.end(),
              [](const Atom<N>& a, const Atom<N>& b) { return lex_less<N>(a.direction, b.direction); });
  }

  const std::vector<Atom<N>>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool positive() const { return positive_; }

  double total_mass() const {
    double s = 0.0;
    for (const auto& a : atoms_) s += a.weight;
    return s;
  }

  /// Σ w_i v_i; zero for surface area measures of closed bodies.
  Vec<N> closedness_residual() const {
    Vec<N> r = Vec<N>::Zero();
    for (const auto& a : atoms_) r += a.weight * a.direction;
    return r;
  }

  SphericalMeasure scaled(double factor) const {
    std::vector<Atom<N>> out = atoms_;
    for (auto& a : out) a.weight *= factor;
    return SphericalMeasure(std::move(out), positive_ && factor >= 0.0);
  }

 private:
  std::vector<Atom<N>> atoms_;
  bool positive_ = true;
};

/// Σ w_i f(v_i). Throws if f is not finite at some atom.
template <int N, class F>
double integrate(F&& f, const SphericalMeasure<N>& mu) {
  double s = 0.0;
  for (const auto& a : mu.atoms()) {
    const double v = f(a.direction);
    if (!std::isfinite(v)) throw std::domain_error("integrate: integrand undefined at an atom");
    s += a.weight * v;
  }
  return s;
}

/// Merges atoms whose directions are within `merge_angle` and drops the
/// cancellation residue. With `require_positive`, weights below
/// −clamp·max(1, mass) raise std::logic_error and smaller negatives are clamped.
template <int N>
SphericalMeasure<N> merge_atoms(std::vector<Atom<N>> raw, bool require_positive = true) {
  const auto& tol = tolerances();
  std::sort(raw.begin(), raw.end(),
            [](const Atom<N>& a, const Atom<N>& b) { return lex_less<N>(a.direction, b.direction); });
  struct Cluster {
    Vec<N> first;
    Vec<N> dir_acc;
    double weight;
  };
  std::vector<Cluster> clusters;
  double abs_mass = 0.0;
  for (const auto& a : raw) {
    abs_mass += std::abs(a.weight);
    int hit = -1;
    for (int c = static_cast<int>(clusters.size()) - 1; c >= 0; --c) {
      if (a.direction[0] - clusters[c].first[0] > tol.merge_angle) break;
      if ((a.direction - clusters[c].first).norm() <= tol.merge_angle) {
        hit = c;
        break;
      }
    }
    if (hit < 0) {
      clusters.push_back({a.direction, Vec<N>::Zero(), 0.0});
      hit = static_cast<int>(clusters.size()) - 1;
    }
    clusters[hit].dir_acc += std::abs(a.weight) * a.direction;
    clusters[hit].weight += a.weight;
  }
  const double drop = 1e-12 * abs_mass;
  const double clamp = tol.clamp * std::max(1.0, abs_mass);
  std::vector<Atom<N>> out;
  for (const auto& c : clusters) {
    if (require_positive && c.weight < -clamp) {
      throw std::logic_error("merge_atoms: negative weight " + std::to_string(c.weight) + " in a positive measure");
    }
    if (std::abs(c.weight) <= drop || (require_positive && c.weight < 0.0)) continue;
    const Vec<N> dir = c.dir_acc.squaredNorm() > 0.0 ? Vec<N>(c.dir_acc.normalized()) : c.first;
    out.push_back({dir, c.weight});
  }
  return SphericalMeasure<N>(std::move(out), require_positive);
}

}  // namespace mixedlp
