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

// Random generators and checkers for the inequalities and identities, each
// producing a CheckRecord with its margin and verdict.

#include "mixedlp/bodies.hpp"
#include "mixedlp/core.hpp"
#include "mixedlp/functionals.hpp"
#include "mixedlp/measures.hpp"
#include "mixedlp/oracles.hpp"
#include "mixedlp/polytope.hpp"
#include "mixedlp/projections.hpp"
#include "mixedlp/quadrature.hpp"
#include "mixedlp/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixedlp::lab {

/// The inputs do not satisfy the hypotheses of the requested statement.
class HypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Verdict { holds, equality_case, violated };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::equality_case: return "equality-case";
    case Verdict::violated: return "violated";
  }
  return "?";
}

struct CheckRecord {
  std::string name;
  std::string anchor;
  std::string kind;  // "inequality" or "identity"
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // inequalities: oriented ratio; identities: relative margin
  double tolerance = 0.0;
  Verdict verdict = Verdict::violated;
  std::uint64_t seed = 0;
  int case_index = 0;
  std::string params;
  std::string note;
};

enum class Inequality { MFI, LPMI, MILPMQ, MLPMI, AFI, MLI, VI, CBI, Petty, MixedPetty, LpPetty, VPTI };

enum class Identity {
  volume_diagonal,
  lpt_diagonal_pair,
  lpt_diagonal,
  lp_collapse,
  classical_collapse,
  dual_diagonal,
  limit_definition,
  PTPI,
  LPPK,
  DPT,
  PHI,
  MSA,
  LBDA,
  quermass_limit,
  LPDE,
  polar_centroid,
  lp_projection_ball,
  centroid_ball,
  mixed_lp_projection_ball,
  brightness,
  monte_carlo_volume,
  volume_polarization,
};

struct StatementInfo {
  const char* name;
  const char* anchor;
};

inline StatementInfo info(Inequality which) {
  switch (which) {
    case Inequality::MFI: return {"MFI", "Minkowski first inequality"};
    case Inequality::LPMI: return {"LPMI", "Lp Minkowski inequality"};
    case Inequality::MILPMQ: return {"MILPMQ", "Lp mixed quermassintegral inequality"};
    case Inequality::MLPMI: return {"MLPMI", "mixed Lp Minkowski inequality"};
    case Inequality::AFI: return {"AFI", "Aleksandrov-Fenchel inequality"};
    case Inequality::MLI: return {"MLI", "mixed volume product inequality"};
    case Inequality::VI: return {"VI", "dual mixed volume inequality"};
    case Inequality::CBI: return {"CBI", "Lp centroid body volume inequality"};
    case Inequality::Petty: return {"Petty", "Petty projection inequality"};
    case Inequality::MixedPetty: return {"MixedPetty", "mixed projection inequality"};
    case Inequality::LpPetty: return {"LpPetty", "Lp Petty projection inequality"};
    case Inequality::VPTI: return {"VPTI", "mixed Lp projection inequality"};
  }
  return {"?", "?"};
}

inline StatementInfo info(Identity which) {
  switch (which) {
    case Identity::volume_diagonal: return {"volume_diagonal", "V(K,...,K) = V(K)"};
    case Identity::lpt_diagonal_pair: return {"lpt_diagonal_pair", "V_{p,t}(K,K,Q) = V(K,t+1;Q,n-t-1)"};
    case Identity::lpt_diagonal: return {"lpt_diagonal", "V_{p,t}(K,K,K) = V(K)"};
    case Identity::lp_collapse: return {"lp_collapse", "V_{p,n-1}(K,L,Q) = V_p(K,L)"};
    case Identity::classical_collapse: return {"classical_collapse", "V_{1,t}(K,L,Q) = V(K,t;L,1;Q,n-t-1)"};
    case Identity::dual_diagonal: return {"dual_diagonal", "dual mixed volume of K with itself is V(K)"};
    case Identity::limit_definition: return {"limit_definition", "first variation equals the integral formula"};
    case Identity::PTPI: return {"PTPI", "SL(n) transfer of the mixed Lp mixed volume"};
    case Identity::LPPK: return {"LPPK", "SL(n) covariance of the mixed Lp projection body"};
    case Identity::DPT: return {"DPT", "SL(n) push-forward of the mixed Lp surface area measure"};
    case Identity::PHI: return {"PHI", "SL(n) invariance of the mixed volume"};
    case Identity::MSA: return {"MSA", "SL(n) push-forward of the mixed surface area measure"};
    case Identity::LBDA: return {"LBDA", "dilation law of the mixed Lp projection body"};
    case Identity::quermass_limit: return {"quermass_limit", "Lp mixed quermassintegral as a first variation"};
    case Identity::LPDE: return {"LPDE", "centroid body and polar projection body duality"};
    case Identity::polar_centroid: return {"polar_centroid", "V_{p,t}(K, Gamma_p Pi*_{p,t}(K,Q), Q) = omega_n"};
    case Identity::lp_projection_ball: return {"lp_projection_ball", "Pi_p B = B"};
    case Identity::centroid_ball: return {"centroid_ball", "Gamma_p B = B"};
    case Identity::mixed_lp_projection_ball: return {"mixed_lp_projection_ball", "Pi_{p,t}(B,B) = B"};
    case Identity::brightness: return {"brightness", "brightness against project-and-hull"};
    case Identity::monte_carlo_volume: return {"monte_carlo_volume", "volume against Monte-Carlo"};
    case Identity::volume_polarization: return {"volume_polarization", "mixed volume against polarization of sums"};
  }
  return {"?", "?"};
}

inline std::optional<Inequality> inequality_from_name(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(Inequality::VPTI); ++i) {
    if (s == info(static_cast<Inequality>(i)).name) return static_cast<Inequality>(i);
  }
  return std::nullopt;
}

inline std::optional<Identity> identity_from_name(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(Identity::volume_polarization); ++i) {
    if (s == info(static_cast<Identity>(i)).name) return static_cast<Identity>(i);
  }
  return std::nullopt;
}

template <int N>
struct CheckInputs {
  std::vector<Polytope<N>> bodies;
  std::vector<StarBody<N>> stars;
  std::optional<LinMap<N>> map;
  const Quadrature<N>* quad = nullptr;
  std::vector<Vec<N>> directions;
};

struct CheckParams {
  double p = 1.0;
  int t = 0;
  int s = 1;
  int i = 0;
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  int ball_m = 320;
  int samples = 200000;
  bool expect_equality = false;
  double tolerance = -1.0;  // negative: statement default
  double equality_tolerance = -1.0;
  std::uint64_t seed = 0;
  int case_index = 0;
  std::string tag;
};

// ---------------------------------------------------------------- generators

/// Hull of m anisotropically stretched Gaussian points; optionally translated
/// so the centroid sits at the origin.
template <int N>
Polytope<N> generate_polytope(int m, std::uint64_t seed, bool recenter = true) {
  if (m < N + 1) throw std::invalid_argument("generate_polytope: need m >= n + 1 points");
  for (std::uint64_t attempt = 0; attempt < 16; ++attempt) {
    Rng rng = Rng::stream(seed, attempt);
    Vec<N> stretch, shift;
    for (int i = 0; i < N; ++i) stretch[i] = rng.uniform(0.6, 1.6);
    for (int i = 0; i < N; ++i) shift[i] = rng.uniform(-0.3, 0.3);
    std::vector<Vec<N>> pts;
    for (int j = 0; j < m; ++j) pts.push_back(Vec<N>(stretch.cwiseProduct(rng.normal_vector<N>())) + shift);
    try {
      Polytope<N> p = convex_hull<N>(pts);
      if (p.vertices().size() < static_cast<std::size_t>(N + 1)) continue;
      if (recenter) p = recentered(p);
      return p;
    } catch (const DegenerateInput&) {
    }
  }
  throw DegenerateInput("generate_polytope: no full-dimensional sample within the retry cap");
}

/// Random φ with det φ = 1 and condition number at most `condition_bound`.
template <int N>
LinMap<N> generate_slmap(std::uint64_t seed, double condition_bound = 20.0) {
  if (!(condition_bound >= 1.0)) throw std::invalid_argument("generate_slmap: condition bound must be >= 1");
  Rng rng(seed);
  double spread = 0.8;
  for (int attempt = 0; attempt < 256; ++attempt) {
    Mat<N> m = Mat<N>::Identity();
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) m(i, j) += spread * rng.normal();
    }
    double det = m.determinant();
    if (std::abs(det) < 1e-6) continue;
    if (det < 0.0) {
      m.col(0) *= -1.0;
      det = -det;
    }
    m /= std::pow(det, 1.0 / N);
    LinMap<N> phi(m);
    if (phi.condition_number() <= condition_bound && phi.is_special()) return phi;
    if (attempt % 32 == 31) spread *= 0.7;
  }
  return LinMap<N>::identity();
}

/// Star body ρ^{−1} = ρ_A^{−1} + ρ_B^{−1} for two random recentered
/// polytopes; generally not convex.
template <int N>
StarBody<N> generate_star_body(int m, std::uint64_t seed) {
  const Polytope<N> a = generate_polytope<N>(m, Rng::stream(seed, 101).bits());
  const Polytope<N> b = generate_polytope<N>(m, Rng::stream(seed, 202).bits());
  return harmonic_combination(StarBody<N>(a.scaled(2.0)), 1.0, StarBody<N>(b.scaled(2.0)), 1.0);
}

/// Ball approximants are shared across checks.
template <int N>
const BallApprox<N>& cached_ball(int m) {
  static std::mutex mutex;
  static std::map<int, BallApprox<N>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, ball_approx<N>(m)).first;
  return it->second;
}

// ------------------------------------------------------------------ checking

namespace detail {

inline void require(bool ok, const std::string& statement, const std::string& why) {
  if (!ok) throw HypothesisError(statement + ": " + why);
}

template <int N>
const Polytope<N>& body(const CheckInputs<N>& in, std::size_t k, const std::string& statement) {
  require(in.bodies.size() > k, statement, "missing convex body #" + std::to_string(k + 1));
  return in.bodies[k];
}

template <int N>
const StarBody<N>& star(const CheckInputs<N>& in, std::size_t k, const std::string& statement) {
  require(in.stars.size() > k, statement, "missing star body #" + std::to_string(k + 1));
  return in.stars[k];
}

template <int N>
const Quadrature<N>& quad(const CheckInputs<N>& in, const std::string& statement) {
  require(in.quad != nullptr, statement, "a quadrature rule is required");
  return *in.quad;
}

template <int N>
const LinMap<N>& slmap(const CheckInputs<N>& in, const std::string& statement) {
  require(in.map.has_value(), statement, "a linear map is required");
  require(in.map->is_special(), statement, "the map must lie in SL(n)");
  return *in.map;
}

template <int N>
void require_origin(const Polytope<N>& k, const std::string& statement, const char* which) {
  require(k.contains_origin(), statement, std::string(which) + " must contain the origin in its interior");
}

inline std::string format_params(const CheckParams& par) {
  std::ostringstream os;
  os.precision(17);
  os << "p=" << par.p << ";t=" << par.t;
  if (!par.tag.empty()) os << ";" << par.tag;
  return os.str();
}

inline CheckRecord start(StatementInfo si, const char* kind, const CheckParams& par) {
  CheckRecord r;
  r.name = si.name;
  r.anchor = si.anchor;
  r.kind = kind;
  r.seed = par.seed;
  r.case_index = par.case_index;
  r.params = format_params(par);
  return r;
}

/// Ratio oriented so that ratio ≥ 1 reads "holds".
inline void finish_inequality(CheckRecord& r, double lhs, double rhs, bool lhs_is_larger, double tol, double eq_tol,
                              const CheckParams& par, bool exact) {
  r.lhs = lhs;
  r.rhs = rhs;
  r.ratio = lhs_is_larger ? lhs / rhs : rhs / lhs;
  r.tolerance = par.tolerance >= 0.0 ? par.tolerance : tol;
  const double etol = par.equality_tolerance >= 0.0 ? par.equality_tolerance : eq_tol;
  if (!std::isfinite(r.ratio)) {
    r.verdict = Verdict::violated;
    r.note = "non-finite ratio";
  } else if (par.expect_equality) {
    r.tolerance = etol;
    r.verdict = std::abs(r.ratio - 1.0) <= etol ? Verdict::equality_case : Verdict::violated;
    if (r.verdict == Verdict::violated) r.note = "equality expected by construction";
  } else if (r.ratio < 1.0 - r.tolerance) {
    r.verdict = Verdict::violated;
  } else if (exact && std::abs(r.ratio - 1.0) <= 1e-12) {
    r.verdict = Verdict::violated;
    r.note = "equality detected without the equality condition";
  } else {
    r.verdict = Verdict::holds;
  }
}

inline double relative_gap(double a, double b) {
  const double m = std::max(std::abs(a), std::abs(b));
  return m > 0.0 ? std::abs(a - b) / m : 0.0;
}

inline void finish_identity(CheckRecord& r, double lhs, double rhs, double margin, double tol, const CheckParams& par) {
  r.lhs = lhs;
  r.rhs = rhs;
  r.ratio = margin;
  r.tolerance = par.tolerance >= 0.0 ? par.tolerance : tol;
  r.verdict = std::isfinite(margin) && margin <= r.tolerance ? Verdict::holds : Verdict::violated;
}

template <int N>
double quadrature_tolerance(const Quadrature<N>& q, double p) {
  return std::max(3.0 * quadrature_proxy(q, p), 1e-9);
}

template <int N>
double normalized_volume_of_polar_projection(std::span<const Polytope<N>> bodies, const Quadrature<N>& q) {
  return star_volume(polar_body(normalized_mixed_projection_body<N>(bodies)), q).value;
}

/// Worst relative pointwise gap between two support evaluators.
template <int N, class F, class G>
void worst_gap(const std::vector<Vec<N>>& dirs, F&& f, G&& g, double& lhs, double& rhs, double& margin) {
  margin = 0.0;
  lhs = rhs = 0.0;
  for (const auto& u : dirs) {
    const double a = f(u), b = g(u);
    const double gap = relative_gap(a, b);
    if (gap >= margin) margin = gap, lhs = a, rhs = b;
  }
}

template <int N>
double sup_unit_error(const std::vector<Vec<N>>& dirs, const SupportBody<N>& h, double& worst_value) {
  double err = 0.0;
  worst_value = 1.0;
  for (const auto& u : dirs) {
    const double v = h.support(u);
    if (std::abs(v - 1.0) >= err) err = std::abs(v - 1.0), worst_value = v;
  }
  return err;
}

}  // namespace detail

template <int N>
CheckRecord check_inequality(Inequality which, const CheckInputs<N>& in, const CheckParams& par) {
  using namespace detail;
  const StatementInfo si = info(which);
  const std::string name = si.name;
  CheckRecord r = start(si, "inequality", par);
  const double n = N;
  const double omega = unit_ball_volume(N);
  const double p = par.p;
  const double exact_tol = tolerances().exact;
  const double exact_eq = 1e-6, quad_eq = 1e-2;

  switch (which) {
    case Inequality::MFI: {
      const auto& k = body(in, 0, name);
      const auto& l = body(in, 1, name);
      const double v1 = repeated_mixed_volume(k, N - 1, l, 1, k).value;
      finish_inequality(r, std::pow(v1, n), std::pow(k.volume(), n - 1) * l.volume(), true, exact_tol, exact_eq, par,
                        true);
      break;
    }
    case Inequality::LPMI: {
      require(p >= 1.0, name, "p must be >= 1");
      const auto& k = body(in, 0, name);
      const auto& l = body(in, 1, name);
      require_origin(k, name, "K");
      require_origin(l, name, "L");
      const double vp = lp_mixed_volume(k, SupportBody<N>(l), p).value;
      finish_inequality(r, std::pow(vp, n), std::pow(k.volume(), n - p) * std::pow(l.volume(), p), true, exact_tol,
                        exact_eq, par, true);
      break;
    }
    case Inequality::MILPMQ: {
      require(p >= 1.0, name, "p must be >= 1");
      require(par.i >= 0 && par.i <= N - 1, name, "i must lie in [0, n-1]");
      const auto& k = body(in, 0, name);
      const auto& l = body(in, 1, name);
      require_origin(k, name, "K");
      require_origin(l, name, "L");
      const double ni = N - par.i;
      const double w = lp_mixed_quermassintegral(k, SupportBody<N>(l), p, par.i, par.ball_m).value;
      const double wk = quermassintegral(k, par.i, par.ball_m).value;
      const double wl = quermassintegral(l, par.i, par.ball_m).value;
      finish_inequality(r, std::pow(w, ni), std::pow(wk, ni - p) * std::pow(wl, p), true, exact_tol, exact_eq, par,
                        true);
      break;
    }
    case Inequality::MLPMI: {
      require(p >= 1.0, name, "p must be >= 1");
      require(par.t >= 0 && par.t <= N - 1, name, "t must lie in [0, n-1]");
      const auto& k = body(in, 0, name);
      const auto& l = body(in, 1, name);
      const auto& q = body(in, 2, name);
      require_origin(k, name, "K");
      require_origin(l, name, "L");
      const double v = lpt_mixed_volume(k, SupportBody<N>(l), q, p, par.t).value;
      const double rhs = std::pow(k.volume(), par.t + 1 - p) * std::pow(l.volume(), p) *
                         std::pow(q.volume(), N - par.t - 1);
      finish_inequality(r, std::pow(v, n), rhs, true, exact_tol, exact_eq, par, true);
      break;
    }
    case Inequality::AFI: {
      require(par.s >= 1 && par.t >= 1 && par.s + par.t <= N, name, "need s, t >= 1 and s + t <= n");
      const auto& k = body(in, 0, name);
      const auto& l = body(in, 1, name);
      const auto& q = body(in, 2, name);
      const int st = par.s + par.t;
      const double vk = repeated_mixed_volume(k, st, q, 0, q).value;
      const double vl = repeated_mixed_volume(l, st, q, 0, q).value;
      const double vkl = repeated_mixed_volume(k, par.s, l, par.t, q).value;
      finish_inequality(r, std::pow(vk, par.s) * std::pow(vl, par.t), std::pow(vkl, st), false, exact_tol, exact_eq,
                        par, true);
      r.params += ";s=" + std::to_string(par.s);
      break;
    }
    case Inequality::MLI: {
      require(static_cast<int>(in.bodies.size()) == N, name, "needs exactly n bodies");
      double prod = 1.0;
      for (const auto& k : in.bodies) prod *= k.volume();
      finish_inequality(r, std::pow(mixed_volume<N>(in.bodies).value, n), prod, true, exact_tol, exact_eq, par, true);
      break;
    }
    case Inequality::VI: {
      require(p >= 1.0, name, "p must be >= 1");
      const auto& k = star(in, 0, name);
      const auto& l = star(in, 1, name);
      const auto& q = quad(in, name);
      const double vk = star_volume(k, q).value, vl = star_volume(l, q).value;
      finish_inequality(r, dual_mixed_volume(k, l, p, q).value, std::pow(vk, (n + p) / n) * std::pow(vl, -p / n), true,
                        quadrature_tolerance(q, p), quad_eq, par, false);
      break;
    }
    case Inequality::CBI: {
      require(p > 1.0, name, "p must be > 1");
      const auto& k = star(in, 0, name);
      const auto& q = quad(in, name);
      const double vg = support_body_volume(centroid_body(k, p, q), q).value;
      finish_inequality(r, vg, star_volume(k, q).value, true, quadrature_tolerance(q, p), quad_eq, par, false);
      break;
    }
    case Inequality::Petty: {
      const auto& k = body(in, 0, name);
      const auto& q = quad(in, name);
      const std::vector<Polytope<N>> list(N - 1, k);
      const double lhs = std::pow(k.volume(), n - 1) * normalized_volume_of_polar_projection<N>(list, q);
      finish_inequality(r, lhs, std::pow(omega, n), false, quadrature_tolerance(q, 1.0), quad_eq, par, false);
      break;
    }
    case Inequality::MixedPetty: {
      require(static_cast<int>(in.bodies.size()) == N - 1, name, "needs exactly n-1 bodies");
      const auto& q = quad(in, name);
      double prod = 1.0;
      for (const auto& k : in.bodies) prod *= k.volume();
      const double lhs = prod * normalized_volume_of_polar_projection<N>(in.bodies, q);
      finish_inequality(r, lhs, std::pow(omega, n), false, quadrature_tolerance(q, 1.0), quad_eq, par, false);
      break;
    }
    case Inequality::LpPetty: {
      require(p >= 1.0, name, "p must be >= 1");
      const auto& k = body(in, 0, name);
      const auto& q = quad(in, name);
      require_origin(k, name, "K");
      const double vp = star_volume(polar_body(lp_projection_body(k, p)), q).value;
      finish_inequality(r, std::pow(k.volume(), (n - p) / p) * vp, std::pow(omega, n / p), false,
                        quadrature_tolerance(q, p), quad_eq, par, false);
      break;
    }
    case Inequality::VPTI: {
      require(p > 1.0, name, "p must be > 1");
      require(par.t > 0 && par.t < N - 1, name, "t must satisfy 0 < t < n-1");
      const auto& k = body(in, 0, name);
      const auto& qb = body(in, 1, name);
      const auto& q = quad(in, name);
      require_origin(k, name, "K");
      const double vp = star_volume(polar_body(mixed_lp_projection_body(k, qb, p, par.t)), q).value;
      const double lhs =
          std::pow(k.volume(), (par.t + 1 - p) / p) * std::pow(qb.volume(), (n - par.t - 1) / p) * vp;
      finish_inequality(r, lhs, std::pow(omega, n / p), false, quadrature_tolerance(q, p), quad_eq, par, false);
      break;
    }
  }
  return r;
}

template <int N>
CheckRecord check_identity(Identity which, const CheckInputs<N>& in, const CheckParams& par) {
  using namespace detail;
  const StatementInfo si = info(which);
  const std::string name = si.name;
  CheckRecord r = start(si, "identity", par);
  const double p = par.p;
  const int t = par.t;
  const double exact_tol = tolerances().exact;
  const double covariance_tol = 1e-8;
  const double quad_tol = tolerances().quadrature;
  double lhs = 0.0, rhs = 0.0, margin = 0.0, tol = exact_tol;

  const auto need_t = [&](int lo, int hi) {
    require(t >= lo && t <= hi, name, "t must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  };

  switch (which) {
    case Identity::volume_diagonal: {
      const auto& k = body(in, 0, name);
      lhs = mixed_volume<N>(std::vector<Polytope<N>>(N, k)).value;
      rhs = k.volume();
      break;
    }
    case Identity::lpt_diagonal_pair: {
      require(p >= 1.0, name, "p must be >= 1");
      need_t(0, N - 1);
      const auto& k = body(in, 0, name);
      const auto& q = body(in, 1, name);
      require_origin(k, name, "K");
      lhs = lpt_mixed_volume(k, SupportBody<N>(k), q, p, t).value;
      rhs = repeated_mixed_volume(k, t + 1, q, N - t - 1, q).value;
      break;
    }
    case Identity::lpt_diagonal: {
      require(p >= 1.0, name, "p must be >= 1");
      need_t(0, N - 1);
      const auto& k = body(in, 0, name);
      require_origin(k, name, "K");
      lhs = lpt_mixed_volume(k, SupportBody<N>(k), k, p, t).value;
      rhs = k.volume();
      break;
    }
    case Identity::lp_collapse: {
      require(p >= 1.0, name, "p must be >= 1");
      const auto& k = body(in, 0, name);
      const auto& l = body(in, 1, name);
      const auto& q = body(in, 2, name);
      require_origin(k, name, "K");
      require_origin(l, name, "L");
      lhs = lpt_mixed_volume(k, SupportBody<N>(l), q, p, N - 1).value;
      // Facet sum straight from the polytope: (1/n) Σ h_L(v)^p h_K(v)^{1−p} |F_v|.
      for (const auto& f : k.facets()) rhs += std::pow(l.support(f.normal), p) * std::pow(f.offset, 1.0 - p) * f.measure;
      rhs /= N;
      break;
    }
    case Identity::classical_collapse: {
      need_t(0, N - 1);
      const auto& k = body(in, 0, name);
      const auto& l = body(in, 1, name);
      const auto& q = body(in, 2, name);
      require_origin(k, name, "K");
      require_origin(l, name, "L");
      lhs = lpt_mixed_volume(k, SupportBody<N>(l), q, 1.0, t).value;
      rhs = repeated_mixed_volume(k, t, l, 1, q).value;
      break;
    }
    case Identity::dual_diagonal: {
      require(p >= 1.0, name, "p must be >= 1");
      const auto& k = body(in, 0, name);
      require_origin(k, name, "K");
      const StarBody<N> ks(k);
      lhs = dual_mixed_volume(ks, ks, p, quad(in, name)).value;
      rhs = k.volume();
      tol = quad_tol;
      break;
    }
    case Identity::limit_definition: {
      require(p >= 1.0, name, "p must be >= 1");
      need_t(0, N - 1);
      const auto& k = body(in, 0, name);
      const auto& l = body(in, 1, name);
      const auto& q = body(in, 2, name);
      require_origin(k, name, "K");
      require_origin(l, name, "L");
      lhs = lpt_mixed_volume_limit(k, SupportBody<N>(l), q, p, t).value;
      rhs = lpt_mixed_volume(k, SupportBody<N>(l), q, p, t).value;
      tol = 1e-4;
      break;
    }
    case Identity::PTPI: {
      require(p > 1.0, name, "p must be > 1");
      need_t(1, N - 2);
      const auto& k = body(in, 0, name);
      const auto& l = body(in, 1, name);
      const auto& q = body(in, 2, name);
      const auto& phi = slmap(in, name);
      require_origin(k, name, "K");
      require_origin(l, name, "L");
      lhs = lpt_mixed_volume(linear_image(phi, k), SupportBody<N>(l), linear_image(phi, q), p, t).value;
      rhs = lpt_mixed_volume(k, SupportBody<N>(linear_image(phi.inverse(), l)), q, p, t).value;
      tol = covariance_tol;
      break;
    }
    case Identity::LPPK: {
      require(p > 1.0, name, "p must be > 1");
      need_t(1, N - 2);
      const auto& k = body(in, 0, name);
      const auto& q = body(in, 1, name);
      const auto& phi = slmap(in, name);
      require_origin(k, name, "K");
      require(!in.directions.empty(), name, "sample directions are required");
      const auto moved = mixed_lp_projection_body(linear_image(phi, k), linear_image(phi, q), p, t);
      const auto base = mixed_lp_projection_body(k, q, p, t);
      const LinMap<N> inv = phi.inverse();
      worst_gap<N>(in.directions, [&](const Vec<N>& u) { return moved(u); }, [&](const Vec<N>& u) { return base(inv(u)); },
                   lhs, rhs, margin);
      finish_identity(r, lhs, rhs, margin, covariance_tol, par);
      return r;
    }
    case Identity::DPT: {
      require(p > 0.0, name, "p must be > 0");
      need_t(0, N - 1);
      const auto& k = body(in, 0, name);
      const auto& q = body(in, 1, name);
      const auto& phi = slmap(in, name);
      require_origin(k, name, "K");
      const auto moved = lp_mixed_surface_measure(linear_image(phi, k), linear_image(phi, q), p, t);
      const auto pushed = transform_measure_p(lp_mixed_surface_measure(k, q, p, t), phi.transpose(), p);
      margin = atomwise_discrepancy(moved, pushed);
      finish_identity(r, moved.total_mass(), pushed.total_mass(), margin, covariance_tol, par);
      return r;
    }
    case Identity::PHI: {
      require(static_cast<int>(in.bodies.size()) == N, name, "needs exactly n bodies");
      const auto& phi = slmap(in, name);
      std::vector<Polytope<N>> moved;
      for (const auto& k : in.bodies) moved.push_back(linear_image(phi, k));
      const auto integral = [](const std::vector<Polytope<N>>& list) {
        const Polytope<N>& last = list.back();
        const auto mu = mixed_area_measure<N>(std::span<const Polytope<N>>(list.data(), N - 1));
        return integrate([&](const Vec<N>& u) { return last.support(u); }, mu);
      };
      lhs = integral(moved);
      rhs = integral(in.bodies);
      tol = covariance_tol;
      break;
    }
    case Identity::MSA: {
      need_t(0, N - 1);
      const auto& k = body(in, 0, name);
      const auto& q = body(in, 1, name);
      const auto& phi = slmap(in, name);
      const auto moved = repeated_mixed_area_measure(linear_image(phi, k), t, linear_image(phi, q));
      const auto pushed = transform_measure_p(repeated_mixed_area_measure(k, t, q), phi.transpose(), 1.0);
      margin = atomwise_discrepancy(moved, pushed);
      finish_identity(r, moved.total_mass(), pushed.total_mass(), margin, covariance_tol, par);
      return r;
    }
    case Identity::LBDA: {
      require(p >= 1.0, name, "p must be >= 1");
      need_t(0, N - 1);
      require(par.lambda1 > 0.0 && par.lambda2 > 0.0, name, "dilation factors must be positive");
      require(!in.directions.empty(), name, "sample directions are required");
      const auto& k = body(in, 0, name);
      const auto& q = body(in, 1, name);
      require_origin(k, name, "K");
      const auto scaled = mixed_lp_projection_body(k.scaled(par.lambda1), q.scaled(par.lambda2), p, t);
      const auto base = mixed_lp_projection_body(k, q, p, t);
      const double factor = std::pow(par.lambda1, (t + 1 - p) / p) * std::pow(par.lambda2, (N - t - 1) / p);
      worst_gap<N>(in.directions, [&](const Vec<N>& u) { return scaled(u); },
                   [&](const Vec<N>& u) { return factor * base(u); }, lhs, rhs, margin);
      finish_identity(r, lhs, rhs, margin, exact_tol, par);
      r.params += ";lambda1=" + std::to_string(par.lambda1) + ";lambda2=" + std::to_string(par.lambda2);
      return r;
    }
    case Identity::quermass_limit: {
      require(p >= 1.0, name, "p must be >= 1");
      require(par.i >= 0 && par.i <= N - 1, name, "i must lie in [0, n-1]");
      const auto& k = body(in, 0, name);
      const auto& l = body(in, 1, name);
      require_origin(k, name, "K");
      require_origin(l, name, "L");
      const Polytope<N>& ball = cached_ball<N>(par.ball_m).body;
      lhs = lp_mixed_quermassintegral(k, SupportBody<N>(l), p, par.i, par.ball_m).value;
      rhs = lpt_mixed_volume_limit(k, SupportBody<N>(l), par.i == 0 ? k : ball, p, N - par.i - 1).value;
      tol = 1e-4;
      r.params += ";i=" + std::to_string(par.i);
      break;
    }
    case Identity::LPDE: {
      require(p > 1.0, name, "p must be > 1");
      need_t(1, N - 2);
      const auto& k = body(in, 0, name);
      const auto& q = body(in, 1, name);
      const auto& l = star(in, 0, name);
      const auto& rule = quad(in, name);
      require_origin(k, name, "K");
      lhs = lpt_mixed_volume(k, centroid_body(l, p, rule), q, p, t).value;
      const auto polar = polar_body(mixed_lp_projection_body(k, q, p, t));
      rhs = unit_ball_volume(N) / star_volume(l, rule).value * dual_mixed_volume(l, polar, p, rule).value;
      tol = quad_tol;
      break;
    }
    case Identity::polar_centroid: {
      require(p > 1.0, name, "p must be > 1");
      need_t(1, N - 2);
      const auto& k = body(in, 0, name);
      const auto& q = body(in, 1, name);
      const auto& rule = quad(in, name);
      require_origin(k, name, "K");
      const auto polar = polar_body(mixed_lp_projection_body(k, q, p, t));
      lhs = lpt_mixed_volume(k, centroid_body(polar, p, rule), q, p, t).value;
      rhs = unit_ball_volume(N);
      tol = quad_tol;
      break;
    }
    case Identity::lp_projection_ball:
    case Identity::centroid_ball:
    case Identity::mixed_lp_projection_ball: {
      require(p >= 1.0, name, "p must be >= 1");
      require(!in.directions.empty(), name, "sample directions are required");
      std::optional<SupportBody<N>> h;
      if (which == Identity::centroid_ball) {
        h = centroid_body(StarBody<N>::ball(), p, quad(in, name));
      } else {
        const Polytope<N>& ball = in.bodies.empty() ? cached_ball<N>(par.ball_m).body : in.bodies.front();
        if (which == Identity::lp_projection_ball) {
          h = lp_projection_body(ball, p).body;
        } else {
          need_t(0, N - 1);
          h = mixed_lp_projection_body(ball, ball, p, t).body;
        }
      }
      margin = sup_unit_error<N>(in.directions, *h, lhs);
      finish_identity(r, lhs, 1.0, margin, quad_tol, par);
      return r;
    }
    case Identity::brightness: {
      const auto& k = body(in, 0, name);
      require(!in.directions.empty(), name, "sample directions are required");
      worst_gap<N>(in.directions, [&](const Vec<N>& u) { return mixedlp::brightness(k, u); },
                   [&](const Vec<N>& u) { return oracle::projected_volume(k, u); }, lhs, rhs, margin);
      finish_identity(r, lhs, rhs, margin, covariance_tol, par);
      return r;
    }
    case Identity::monte_carlo_volume: {
      const auto& k = body(in, 0, name);
      require(par.samples > 0, name, "sample count must be positive");
      Rng rng(par.seed);
      const auto est = oracle::monte_carlo_volume(k, par.samples, rng);
      lhs = k.volume();
      rhs = est.value;
      margin = relative_gap(lhs, rhs);
      finish_identity(r, lhs, rhs, margin, 3.0 * est.sigma / std::max(lhs, rhs), par);
      r.params += ";samples=" + std::to_string(par.samples);
      return r;
    }
    case Identity::volume_polarization: {
      require(static_cast<int>(in.bodies.size()) == N, name, "needs exactly n bodies");
      lhs = mixed_volume<N>(in.bodies).value;
      rhs = oracle::mixed_volume_by_polarization<N>(in.bodies);
      break;
    }
  }
  finish_identity(r, lhs, rhs, relative_gap(lhs, rhs), tol, par);
  return r;
}

}  // namespace mixedlp::lab
