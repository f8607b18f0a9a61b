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
#include "mixedlp/polytope.hpp"
#include "mixedlp/quadrature.hpp"
#include "mixedlp/spherical_measure.hpp"

#include <cmath>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace mixedlp {

template <int N>
class SupportBody;

template <int N>
class StarBody;

/// Which construction produced a measure-backed support function.
enum class Provenance { classical, mixed, lp, mixed_lp, centroid };

inline std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::classical: return "classical";
    case Provenance::mixed: return "mixed";
    case Provenance::lp: return "lp";
    case Provenance::mixed_lp: return "mixed-lp";
    case Provenance::centroid: return "centroid";
  }
  return "unknown";
}

namespace detail {

template <int N>
struct BallNode {
  double radius;
};

/// The ellipsoid shape·B.
template <int N>
struct EllipsoidNode {
  LinMap<N> shape;
  LinMap<N> inverse;
};

template <int N>
struct LpCombinationNode;

template <int N>
struct LinearImageNode;

template <int N>
struct TranslateNode;

/// h(u) = (scale · Σ w_i |u·v_i|^p)^{1/p}.
template <int N>
struct ComputedNode {
  SphericalMeasure<N> measure;
  double p;
  double scale;
  Provenance provenance;
};

template <int N>
using SupportVariant = std::variant<Polytope<N>, BallNode<N>, EllipsoidNode<N>, std::shared_ptr<const LpCombinationNode<N>>,
                                    std::shared_ptr<const LinearImageNode<N>>, std::shared_ptr<const TranslateNode<N>>,
                                    ComputedNode<N>>;

}  // namespace detail

/// A convex body known through its support function h_K. Values are
/// immutable and cheap to copy (shared evaluator tree).
template <int N>
class SupportBody {
 public:
  SupportBody(const Polytope<N>& p)  // NOLINT: polytopes are support bodies
      : node_(std::make_shared<detail::SupportVariant<N>>(p)), origin_interior_(p.contains_origin()) {}

  static SupportBody ball(double radius = 1.0) {
    if (!(radius > 0.0)) throw std::domain_error("ball: radius must be positive");
    return SupportBody(detail::BallNode<N>{radius}, true);
  }

  static SupportBody ellipsoid(const LinMap<N>& shape) {
    shape.require_invertible("ellipsoid");
    return SupportBody(detail::EllipsoidNode<N>{shape, shape.inverse()}, true);
  }

  static SupportBody computed(SphericalMeasure<N> measure, double p, double scale, Provenance tag) {
    if (!(p >= 1.0)) throw std::domain_error("computed support: p must be >= 1");
    return SupportBody(detail::ComputedNode<N>{std::move(measure), p, scale, tag}, true);
  }

  double operator()(const Vec<N>& x) const { return support(x); }
  double support(const Vec<N>& x) const;

  bool origin_interior() const { return origin_interior_; }

  const Polytope<N>* as_polytope() const { return std::get_if<Polytope<N>>(node_.get()); }
  const detail::ComputedNode<N>* as_computed() const { return std::get_if<detail::ComputedNode<N>>(node_.get()); }

  template <class Node>
  SupportBody(Node node, bool origin_interior)
      : node_(std::make_shared<detail::SupportVariant<N>>(std::move(node))), origin_interior_(origin_interior) {}

 private:
  std::shared_ptr<const detail::SupportVariant<N>> node_;
  bool origin_interior_;
};

namespace detail {

template <int N>
struct LpCombinationNode {
  double s;
  SupportBody<N> k;
  double t;
  SupportBody<N> l;
  double p;
};

template <int N>
struct LinearImageNode {
  LinMap<N> phi;
  LinMap<N> phi_t;
  SupportBody<N> body;
};

template <int N>
struct TranslateNode {
  SupportBody<N> body;
  Vec<N> shift;
};

template <int N>
double measure_support(const ComputedNode<N>& node, const Vec<N>& x) {
  double s = 0.0;
  for (const auto& a : node.measure.atoms()) s += a.weight * abs_pow(x.dot(a.direction), node.p);
  return pos_pow(node.scale * s, 1.0 / node.p);
}

}  // namespace detail

template <int N>
double SupportBody<N>::support(const Vec<N>& x) const {
  if (!(x.squaredNorm() > 0.0)) throw std::domain_error("support: direction must be nonzero");
  return std::visit(
      [&](const auto& node) -> double {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Polytope<N>>) {
          return node.support(x);
        } else if constexpr (std::is_same_v<T, detail::BallNode<N>>) {
          return node.radius * x.norm();
        } else if constexpr (std::is_same_v<T, detail::EllipsoidNode<N>>) {
          return (node.shape.matrix().transpose() * x).norm();
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const detail::LpCombinationNode<N>>>) {
          const auto& c = *node;
          double acc = 0.0;
          if (c.s > 0.0) acc += c.s * pos_pow(c.k.support(x), c.p);
          if (c.t > 0.0) acc += c.t * pos_pow(c.l.support(x), c.p);
          return pos_pow(acc, 1.0 / c.p);
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const detail::LinearImageNode<N>>>) {
          return node->body.support(node->phi_t(x));
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const detail::TranslateNode<N>>>) {
          return node->body.support(x) + x.dot(node->shift);
        } else {
          return detail::measure_support(node, x);
        }
      },
      *node_);
}

/// s·K +_p t·L, evaluated lazily: h^p = s h_K^p + t h_L^p.
template <int N>
SupportBody<N> lp_combination(double s, const SupportBody<N>& k, double t, const SupportBody<N>& l, double p) {
  if (!(p >= 1.0)) throw std::domain_error("lp_combination: p must be >= 1");
  if (!(s >= 0.0) || !(t >= 0.0) || !(s + t > 0.0)) {
    throw std::domain_error("lp_combination: coefficients must be >= 0 with positive sum");
  }
  if ((s > 0.0 && !k.origin_interior()) || (t > 0.0 && !l.origin_interior())) {
    throw MembershipError("lp_combination: bodies must contain the origin in their interiors");
  }
  return SupportBody<N>(std::make_shared<const detail::LpCombinationNode<N>>(detail::LpCombinationNode<N>{s, k, t, l, p}), true);
}

/// φK with h_{φK}(x) = h_K(φ^t x).
template <int N>
SupportBody<N> linear_image(const LinMap<N>& phi, const SupportBody<N>& k) {
  phi.require_invertible("linear_image");
  return SupportBody<N>(std::make_shared<const detail::LinearImageNode<N>>(detail::LinearImageNode<N>{phi, phi.transpose(), k}),
                        k.origin_interior());
}

/// K + shift. The origin-interior flag is carried only for polytopes, where
/// it is recomputed exactly.
template <int N>
SupportBody<N> translate(const SupportBody<N>& k, const Vec<N>& shift) {
  if (const auto* p = k.as_polytope()) return SupportBody<N>(p->translated(shift));
  return SupportBody<N>(std::make_shared<const detail::TranslateNode<N>>(detail::TranslateNode<N>{k, shift}), false);
}

namespace detail {

struct StarBallNode {
  double radius;
};

template <int N>
struct StarEllipsoidNode {
  LinMap<N> inverse;
};

template <int N>
struct PolarNode {
  SupportBody<N> body;
};

/// Radial function of a convex body recovered from its support function.
template <int N>
struct RadialOfConvexNode {
  SupportBody<N> body;
};

template <int N>
struct HarmonicNode;

template <int N>
struct StarImageNode;

template <int N>
using StarVariant = std::variant<Polytope<N>, StarBallNode, StarEllipsoidNode<N>, PolarNode<N>, RadialOfConvexNode<N>,
                                 std::shared_ptr<const HarmonicNode<N>>, std::shared_ptr<const StarImageNode<N>>>;

/// 1/ρ_K(u) = max_v (u·v)/h_K(v) over unit v. The objective is unimodal for
/// convex K, so a compass search on the sphere started at u converges.
template <int N>
double inverse_radial_from_support(const SupportBody<N>& body, const Vec<N>& u) {
  const auto objective = [&](const Vec<N>& v) { return u.dot(v) / body.support(v); };
  Vec<N> best = u;
  double fbest = objective(best);
  if constexpr (N == 2) {
    double theta = std::atan2(u[1], u[0]);
    double step = 0.25;
    while (step > 1e-9) {
      bool moved = false;
      for (double d : {step, -step}) {
        const Vec<2> v(std::cos(theta + d), std::sin(theta + d));
        const double f = objective(v);
        if (f > fbest) {
          fbest = f;
          theta += d;
          best = v;
          moved = true;
          break;
        }
      }
      if (!moved) step *= 0.5;
    }
  } else {
    double step = 0.25;
    while (step > 1e-8) {
      // Tangent frame at the current iterate.
      const Vec<3> a = std::abs(best[0]) < 0.9 ? Vec<3>::UnitX() : Vec<3>::UnitY();
      const Vec<3> e1 = best.cross(a).normalized();
      const Vec<3> e2 = best.cross(e1);
      bool moved = false;
      for (int k = 0; k < 8 && !moved; ++k) {
        const double ang = k * std::numbers::pi / 4.0;
        const Vec<3> v = (best + step * (std::cos(ang) * e1 + std::sin(ang) * e2)).normalized();
        const double f = objective(v);
        if (f > fbest) {
          fbest = f;
          best = v;
          moved = true;
        }
      }
      if (!moved) step *= 0.5;
    }
  }
  return fbest;
}

}  // namespace detail

/// A star body about the origin known through its radial function ρ_K.
template <int N>
class StarBody {
 public:
  StarBody(const Polytope<N>& p)  // NOLINT: polytopes with interior origin are star bodies
      : node_(std::make_shared<detail::StarVariant<N>>(p)) {
    if (!p.contains_origin()) throw MembershipError("StarBody: polytope must contain the origin in its interior");
  }

  static StarBody ball(double radius = 1.0) {
    if (!(radius > 0.0)) throw std::domain_error("ball: radius must be positive");
    return StarBody(detail::StarBallNode{radius});
  }

  static StarBody ellipsoid(const LinMap<N>& shape) {
    shape.require_invertible("ellipsoid");
    return StarBody(detail::StarEllipsoidNode<N>{shape.inverse()});
  }

  /// K* through ρ_{K*} = 1/h_K.
  static StarBody polar_of(const SupportBody<N>& k) {
    if (!k.origin_interior()) throw MembershipError("polar: body must contain the origin in its interior");
    return StarBody(detail::PolarNode<N>{k});
  }

  /// The convex body K itself, with ρ_K recovered numerically from h_K.
  static StarBody radial_of(const SupportBody<N>& k) {
    if (const auto* p = k.as_polytope()) return StarBody(*p);
    if (!k.origin_interior()) throw MembershipError("radial_of: body must contain the origin in its interior");
    return StarBody(detail::RadialOfConvexNode<N>{k});
  }

  double operator()(const Vec<N>& x) const { return radial(x); }
  double radial(const Vec<N>& x) const;

  template <class Node>
  explicit StarBody(Node node) : node_(std::make_shared<detail::StarVariant<N>>(std::move(node))) {}

 private:
  std::shared_ptr<const detail::StarVariant<N>> node_;
};

namespace detail {

template <int N>
struct HarmonicNode {
  StarBody<N> k;
  double eps;
  StarBody<N> l;
  double p;
};

template <int N>
struct StarImageNode {
  LinMap<N> inverse;
  StarBody<N> body;
};

}  // namespace detail

template <int N>
double StarBody<N>::radial(const Vec<N>& x) const {
  const double r = x.norm();
  if (!(r > 0.0)) throw std::domain_error("radial: direction must be nonzero");
  return std::visit(
      [&](const auto& node) -> double {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Polytope<N>>) {
          return node.radial(x);
        } else if constexpr (std::is_same_v<T, detail::StarBallNode>) {
          return node.radius / r;
        } else if constexpr (std::is_same_v<T, detail::StarEllipsoidNode<N>>) {
          return 1.0 / node.inverse(x).norm();
        } else if constexpr (std::is_same_v<T, detail::PolarNode<N>>) {
          const double h = node.body.support(x);
          if (!(h > 0.0)) throw std::domain_error("polar: support function vanishes");
          return 1.0 / h;
        } else if constexpr (std::is_same_v<T, detail::RadialOfConvexNode<N>>) {
          return 1.0 / (r * detail::inverse_radial_from_support(node.body, Vec<N>(x / r)));
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const detail::HarmonicNode<N>>>) {
          const auto& c = *node;
          const double s = pos_pow(c.k.radial(x), -c.p) + c.eps * pos_pow(c.l.radial(x), -c.p);
          return pos_pow(s, -1.0 / c.p);
        } else {
          return node->body.radial(node->inverse(x));
        }
      },
      *node_);
}

/// K +_{−p} ε·L: ρ^{−p} = ρ_K^{−p} + ε ρ_L^{−p}.
template <int N>
StarBody<N> harmonic_combination(const StarBody<N>& k, double eps, const StarBody<N>& l, double p) {
  if (!(p >= 1.0)) throw std::domain_error("harmonic_combination: p must be >= 1");
  if (!(eps >= 0.0)) throw std::domain_error("harmonic_combination: eps must be >= 0");
  return StarBody<N>(std::make_shared<const detail::HarmonicNode<N>>(detail::HarmonicNode<N>{k, eps, l, p}));
}

/// ρ_{φK}(x) = ρ_K(φ^{−1}x).
template <int N>
StarBody<N> linear_image(const LinMap<N>& phi, const StarBody<N>& k) {
  return StarBody<N>(std::make_shared<const detail::StarImageNode<N>>(detail::StarImageNode<N>{phi.inverse(), k}));
}

template <int N>
double support_eval(const SupportBody<N>& k, const Vec<N>& x) {
  return k.support(x);
}

template <int N>
double radial_eval(const StarBody<N>& k, const Vec<N>& x) {
  return k.radial(x);
}

}  // namespace mixedlp
