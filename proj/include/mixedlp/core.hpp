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

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mixedlp {

template <int N>
using Vec = Eigen::Matrix<double, N, 1>;

template <int N>
using Mat = Eigen::Matrix<double, N, N>;

/// Raised when input is lower-dimensional (flat hulls, collinear samples).
class DegenerateInput : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a body must contain the origin in its interior and does not.
class MembershipError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Every numeric tolerance used by the library, in one place.
struct Tolerances {
  double exact = 1e-9;             // exact-sum pipeline identities
  double quadrature = 5e-3;        // quadrature-backed normalizations
  double unit = 1e-12;             // |‖u‖ − 1| for unit vectors
  double hull_relative = 1e-12;    // visibility predicate, relative to point scale
  double coplanar = 1e-9;          // facet merge distance, relative to point scale
  double merge_angle = 1e-8;       // atom merge distance on the sphere
  double clamp = 1e-9;             // negative atom weights tolerated before failing
  double special_det = 1e-10;      // |det − 1| for SL(n)
  double max_condition = 1e4;      // admissible condition number of a LinMap
};

inline const Tolerances& tolerances() {
  static const Tolerances t{};
  return t;
}

/// Volume of the unit ball in R^q, extended to real q ≥ 0 through log-Γ.
inline double unit_ball_volume(double q) {
  if (!(q >= 0.0) || !std::isfinite(q)) {
    throw std::domain_error("unit_ball_volume: q must be a finite real >= 0");
  }
  return std::exp(0.5 * q * std::log(std::numbers::pi) - std::lgamma(1.0 + 0.5 * q));
}

/// ω_{n+p} / (ω_2 ω_n ω_{p−1}); the L_p projection normalizer uses lyz_constant(n − 2, p).
inline double lyz_constant(double n, double p) {
  if (!(n >= 0.0) || !(p >= 1.0)) {
    throw std::domain_error("lyz_constant: requires n >= 0 and p >= 1");
  }
  return unit_ball_volume(n + p) /
         (unit_ball_volume(2.0) * unit_ball_volume(n) * unit_ball_volume(p - 1.0));
}

/// ∫_{S^{n−1}} |u·e|^p dS(u) for any unit e.
inline double sphere_abs_moment(int n, double p) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * (n - 1)) * std::exp(std::lgamma(0.5 * (p + 1.0)) -
                                                                   std::lgamma(0.5 * (n + p)));
}

inline double sphere_area(int n) { return n * unit_ball_volume(n); }

/// |x|^p with fast paths for the exponents the library uses most.
inline double abs_pow(double x, double p) {
  const double a = std::abs(x);
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  if (p == 1.5) return a * std::sqrt(a);
  if (p == 3.0) return a * a * a;
  return std::pow(a, p);
}

/// x^p for x > 0 with the same fast paths.
inline double pos_pow(double x, double p) {
  if (p == 1.0) return x;
  if (p == 0.0) return 1.0;
  if (p == 2.0) return x * x;
  if (p == -1.0) return 1.0 / x;
  if (p == 1.5) return x * std::sqrt(x);
  if (p == -0.5) return 1.0 / std::sqrt(x);
  if (p == 3.0) return x * x * x;
  return std::pow(x, p);
}

template <int N>
bool lex_less(const Vec<N>& a, const Vec<N>& b) {
  for (int i = 0; i < N; ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

template <int N>
Vec<N> normalized(const Vec<N>& x) {
  const double r = x.norm();
  if (!(r > 0.0)) throw std::domain_error("cannot normalize the zero vector");
  return x / r;
}

/// An invertible linear map with its determinant cached at construction.
template <int N>
class LinMap {
 public:
  LinMap() : matrix_(Mat<N>::Identity()), det_(1.0) {}

  explicit LinMap(const Mat<N>& m) : matrix_(m), det_(m.determinant()) {
    if (!matrix_.allFinite()) throw std::domain_error("LinMap: non-finite entries");
  }

  static LinMap identity() { return LinMap(); }
  static LinMap scaling(double lambda) { return LinMap(Mat<N>::Identity() * lambda); }

  const Mat<N>& matrix() const { return matrix_; }
  double det() const { return det_; }

  bool invertible() const {
    return std::abs(det_) > 0.0 && condition_number() < 1e14;
  }

  /// Ratio of extreme singular values.
  double condition_number() const {
    Eigen::JacobiSVD<Mat<N>> svd(matrix_);
    const auto& s = svd.singularValues();
    return s[N - 1] > 0.0 ? s[0] / s[N - 1] : std::numeric_limits<double>::infinity();
  }

  bool is_special(double tol = tolerances().special_det) const { return std::abs(det_ - 1.0) <= tol; }

  LinMap transpose() const { return LinMap(matrix_.transpose()); }

  LinMap inverse() const {
    require_invertible("inverse");
    return LinMap(matrix_.inverse());
  }

  LinMap inverse_transpose() const {
    require_invertible("inverse_transpose");
    return LinMap(matrix_.inverse().transpose());
  }

  Vec<N> operator()(const Vec<N>& x) const { return matrix_ * x; }

  friend LinMap operator*(const LinMap& a, const LinMap& b) { return LinMap(a.matrix_ * b.matrix_); }

  void require_invertible(const char* what) const {
    if (!invertible()) throw std::domain_error(std::string(what) + ": singular linear map");
  }

 private:
  Mat<N> matrix_;
  double det_;
};

}  // namespace mixedlp
