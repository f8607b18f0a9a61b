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
#include "mixedlp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace mixedlp {

/// One facet: outward unit normal, support value h(normal), (N−1)-volume and
/// the facet's area centroid.
template <int N>
struct Facet {
  Vec<N> normal;
  double offset = 0.0;
  double measure = 0.0;
  Vec<N> centroid;
};

/// A full-dimensional convex polytope in R^N (N = 2, 3), stored both as its
/// vertex set and as its facet list. Values are canonical: vertices and facets
/// are sorted lexicographically so equal polytopes compare equal bitwise.
template <int N>
class Polytope {
 public:
  Polytope(std::vector<Vec<N>> vertices, std::vector<Facet<N>> facets)
      : vertices_(std::move(vertices)), facets_(std::move(facets)) {
    std::sort(vertices_.begin(), vertices_.end(), lex_less<N>);
    std::sort(facets_.begin(), facets_.end(),
              [](const Facet<N>& a, const Facet<N>& b) { return lex_less<N>(a.normal, b.normal); });
  }

  const std::vector<Vec<N>>& vertices() const { return vertices_; }
  const std::vector<Facet<N>>& facets() const { return facets_; }

  double support(const Vec<N>& x) const {
    if (!(x.squaredNorm() > 0.0)) throw std::domain_error("support: direction must be nonzero");
    double h = -std::numeric_limits<double>::infinity();
    for (const auto& v : vertices_) h = std::max(h, x.dot(v));
    return h;
  }

  double radial(const Vec<N>& x) const {
    if (!(x.squaredNorm() > 0.0)) throw std::domain_error("radial: direction must be nonzero");
    if (!contains_origin()) throw MembershipError("radial: origin is not interior to the polytope");
    double r = std::numeric_limits<double>::infinity();
    for (const auto& f : facets_) {
      const double c = f.normal.dot(x);
      if (c > 0.0) r = std::min(r, f.offset / c);
    }
    return r;
  }

  /// (1/N) Σ offset_i · measure_i.
  double volume() const {
    double v = 0.0;
    for (const auto& f : facets_) v += f.offset * f.measure;
    return v / N;
  }

  double surface_area() const {
    double s = 0.0;
    for (const auto& f : facets_) s += f.measure;
    return s;
  }

  /// Σ measure_i · normal_i, which vanishes for a closed boundary.
  Vec<N> closedness_residual() const {
    Vec<N> r = Vec<N>::Zero();
    for (const auto& f : facets_) r += f.measure * f.normal;
    return r;
  }

  bool contains_origin(double margin = 0.0) const {
    return std::all_of(facets_.begin(), facets_.end(), [&](const Facet<N>& f) { return f.offset > margin; });
  }

  Vec<N> centroid() const {
    // Cone decomposition from the origin: cone over facet i has volume
    // offset·measure/N and centroid (N/(N+1))·facet centroid.
    Vec<N> c = Vec<N>::Zero();
    double v = 0.0;
    for (const auto& f : facets_) {
      const double cone = f.offset * f.measure / N;
      c += cone * (static_cast<double>(N) / (N + 1)) * f.centroid;
      v += cone;
    }
    return c / v;
  }

  /// Largest |coordinate| over the vertices.
  double scale() const {
    double s = 0.0;
    for (const auto& v : vertices_) s = std::max(s, v.cwiseAbs().maxCoeff());
    return s;
  }

  Polytope translated(const Vec<N>& t) const {
    std::vector<Vec<N>> vs = vertices_;
    for (auto& v : vs) v += t;
    std::vector<Facet<N>> fs = facets_;
    for (auto& f : fs) {
      f.offset += f.normal.dot(t);
      f.centroid += t;
    }
    return Polytope(std::move(vs), std::move(fs));
  }

  Polytope scaled(double lambda) const {
    if (!(lambda > 0.0)) throw std::domain_error("scaled: factor must be positive");
    std::vector<Vec<N>> vs = vertices_;
    for (auto& v : vs) v *= lambda;
    std::vector<Facet<N>> fs = facets_;
    const double area_factor = std::pow(lambda, N - 1);
    for (auto& f : fs) {
      f.offset *= lambda;
      f.measure *= area_factor;
      f.centroid *= lambda;
    }
    return Polytope(std::move(vs), std::move(fs));
  }

  friend bool operator==(const Polytope& a, const Polytope& b) {
    if (a.vertices_.size() != b.vertices_.size()) return false;
    for (std::size_t i = 0; i < a.vertices_.size(); ++i) {
      if (a.vertices_[i] != b.vertices_[i]) return false;
    }
    return true;
  }

 private:
  std::vector<Vec<N>> vertices_;
  std::vector<Facet<N>> facets_;
};

namespace detail {

template <int N>
double point_scale(std::span<const Vec<N>> pts) {
  double s = 0.0;
  for (const auto& p : pts) {
    if (!p.allFinite()) throw std::domain_error("convex_hull: non-finite coordinate");
    s = std::max(s, p.cwiseAbs().maxCoeff());
  }
  return s;
}

/// Sorted copy with points closer than `eps` collapsed.
template <int N>
std::vector<Vec<N>> dedupe(std::span<const Vec<N>> input, double eps) {
  std::vector<Vec<N>> pts(input.begin(), input.end());
  std::sort(pts.begin(), pts.end(), lex_less<N>);
  std::vector<Vec<N>> out;
  out.reserve(pts.size());
  for (const auto& p : pts) {
    bool dup = false;
    for (auto it = out.rbegin(); it != out.rend() && p[0] - (*it)[0] <= eps; ++it) {
      if ((p - *it).cwiseAbs().maxCoeff() <= eps) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(p);
  }
  return out;
}

inline double cross2(const Vec<2>& o, const Vec<2>& a, const Vec<2>& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

/// Andrew's monotone chain; collinear boundary points are dropped.
inline Polytope<2> hull2(std::span<const Vec<2>> input) {
  const double scale = point_scale<2>(input);
  if (!(scale > 0.0)) throw DegenerateInput("convex_hull: all points at the origin");
  const double eps = tolerances().hull_relative * scale;
  std::vector<Vec<2>> pts = dedupe<2>(input, eps);
  if (pts.size() < 3) throw DegenerateInput("convex_hull: fewer than 3 distinct points");

  const double area_eps = eps * scale;
  std::vector<Vec<2>> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross2(h[k - 2], h[k - 1], p) <= area_eps) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lo = k + 1; i-- > 0;) {
    while (k >= lo && cross2(h[k - 2], h[k - 1], pts[i]) <= area_eps) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  if (h.size() < 3) throw DegenerateInput("convex_hull: points are collinear");

  std::vector<Facet<2>> facets;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const Vec<2>& a = h[i];
    const Vec<2>& b = h[(i + 1) % h.size()];
    const Vec<2> d = b - a;
    const double len = d.norm();
    Facet<2> f;
    f.normal = Vec<2>(d[1], -d[0]) / len;
    f.offset = 0.5 * (f.normal.dot(a) + f.normal.dot(b));
    f.measure = len;
    f.centroid = 0.5 * (a + b);
    facets.push_back(f);
  }
  return Polytope<2>(std::move(h), std::move(facets));
}

/// Incremental 3D hull with epsilon visibility, followed by merging of
/// coplanar triangles into polygonal facets.
inline Polytope<3> hull3(std::span<const Vec<3>> input) {
  const auto& tol = tolerances();
  const double scale = point_scale<3>(input);
  if (!(scale > 0.0)) throw DegenerateInput("convex_hull: all points at the origin");
  const double eps = tol.hull_relative * scale;
  const std::vector<Vec<3>> pts = dedupe<3>(input, eps);
  const int n = static_cast<int>(pts.size());
  if (n < 4) throw DegenerateInput("convex_hull: fewer than 4 distinct points");

  // Initial tetrahedron from extreme points.
  const double degenerate = 1e-10 * scale;
  int i0 = 0, i1 = -1, i2 = -1, i3 = -1;
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = (pts[i] - pts[i0]).norm();
    if (d > best) best = d, i1 = i;
  }
  if (best <= degenerate) throw DegenerateInput("convex_hull: points coincide");
  const Vec<3> axis = (pts[i1] - pts[i0]).normalized();
  best = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vec<3> r = pts[i] - pts[i0];
    const double d = (r - r.dot(axis) * axis).norm();
    if (d > best) best = d, i2 = i;
  }
  if (best <= degenerate) throw DegenerateInput("convex_hull: points are collinear");
  const Vec<3> pn = (pts[i1] - pts[i0]).cross(pts[i2] - pts[i0]).normalized();
  best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = std::abs(pn.dot(pts[i] - pts[i0]));
    if (d > best) best = d, i3 = i;
  }
  if (best <= degenerate) throw DegenerateInput("convex_hull: points are coplanar");

  struct Face {
    int v[3];
    Vec<3> normal;
    double offset;
    bool alive;
    std::vector<int> outside;
  };
  std::vector<Face> faces;
  std::unordered_map<std::uint64_t, int> edges;
  const auto key = [](int a, int b) { return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b); };
  const auto distance = [&](const Face& f, int p) { return f.normal.dot(pts[p]) - f.offset; };

  const Vec<3> interior = 0.25 * (pts[i0] + pts[i1] + pts[i2] + pts[i3]);
  const auto add_face = [&](int a, int b, int c) {
    Face f{{a, b, c}, Vec<3>::Zero(), 0.0, true, {}};
    const Vec<3> cr = (pts[b] - pts[a]).cross(pts[c] - pts[a]);
    const double len = cr.norm();
    if (len > 0.0) f.normal = cr / len;
    f.offset = std::max({f.normal.dot(pts[a]), f.normal.dot(pts[b]), f.normal.dot(pts[c])});
    const int id = static_cast<int>(faces.size());
    faces.push_back(std::move(f));
    edges[key(a, b)] = id;
    edges[key(b, c)] = id;
    edges[key(c, a)] = id;
    return id;
  };
  const auto add_oriented = [&](int a, int b, int c) {
    const Vec<3> cr = (pts[b] - pts[a]).cross(pts[c] - pts[a]);
    if (cr.dot(interior - pts[a]) > 0.0) std::swap(b, c);
    return add_face(a, b, c);
  };
  std::vector<int> created{add_oriented(i0, i1, i2), add_oriented(i0, i1, i3), add_oriented(i0, i2, i3),
                           add_oriented(i1, i2, i3)};

  // Each outside point is owned by the face it is farthest above.
  const auto assign = [&](int p) {
    int owner = -1;
    double far = eps;
    for (int f : created) {
      const double d = distance(faces[f], p);
      if (d > far) far = d, owner = f;
    }
    if (owner >= 0) faces[owner].outside.push_back(p);
  };
  for (int p = 0; p < n; ++p) {
    if (p != i0 && p != i1 && p != i2 && p != i3) assign(p);
  }

  std::vector<int> pending(created.begin(), created.end());
  std::vector<char> visible;
  std::vector<int> vis_list, orphans;
  std::unordered_map<int, int> horizon;
  while (!pending.empty()) {
    const int seed = pending.back();
    pending.pop_back();
    if (!faces[seed].alive || faces[seed].outside.empty()) continue;
    int apex = faces[seed].outside.front();
    for (int q : faces[seed].outside) {
      if (distance(faces[seed], q) > distance(faces[seed], apex)) apex = q;
    }

    visible.assign(faces.size(), 0);
    vis_list.assign(1, seed);
    visible[seed] = 1;
    for (std::size_t i = 0; i < vis_list.size(); ++i) {
      const Face& f = faces[vis_list[i]];
      for (int k = 0; k < 3; ++k) {
        const auto it = edges.find(key(f.v[(k + 1) % 3], f.v[k]));
        if (it == edges.end()) throw std::runtime_error("convex_hull: broken edge adjacency");
        const int g = it->second;
        if (!visible[g] && distance(faces[g], apex) > eps) {
          visible[g] = 1;
          vis_list.push_back(g);
        }
      }
    }
    horizon.clear();
    for (int f : vis_list) {
      for (int k = 0; k < 3; ++k) {
        const int a = faces[f].v[k], b = faces[f].v[(k + 1) % 3];
        if (!visible[edges.at(key(b, a))]) {
          if (!horizon.emplace(a, b).second) throw std::runtime_error("convex_hull: visible region is pinched");
        }
      }
    }
    // The horizon must be one simple cycle.
    {
      int a = horizon.begin()->first;
      std::size_t steps = 0;
      do {
        const auto it = horizon.find(a);
        if (it == horizon.end()) throw std::runtime_error("convex_hull: open horizon");
        a = it->second;
        ++steps;
      } while (a != horizon.begin()->first && steps <= horizon.size());
      if (steps != horizon.size()) throw std::runtime_error("convex_hull: visible region is not a disk");
    }

    orphans.clear();
    for (int f : vis_list) {
      faces[f].alive = false;
      for (int q : faces[f].outside) {
        if (q != apex) orphans.push_back(q);
      }
      faces[f].outside.clear();
      faces[f].outside.shrink_to_fit();
      for (int k = 0; k < 3; ++k) {
        const auto it = edges.find(key(faces[f].v[k], faces[f].v[(k + 1) % 3]));
        if (it != edges.end() && it->second == f) edges.erase(it);
      }
    }
    created.clear();
    const int first = std::min_element(horizon.begin(), horizon.end())->first;
    int a = first;
    do {
      const int b = horizon.at(a);
      created.push_back(add_face(a, b, apex));
      a = b;
    } while (a != first);
    std::sort(orphans.begin(), orphans.end());
    for (int q : orphans) assign(q);
    pending.insert(pending.end(), created.begin(), created.end());
  }

  std::vector<int> live;
  for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
    if (!faces[f].alive) continue;
    live.push_back(f);
    for (int k = 0; k < 3; ++k) {
      if (!edges.count(key(faces[f].v[(k + 1) % 3], faces[f].v[k]))) {
        throw std::runtime_error("convex_hull: result is not a closed surface");
      }
    }
  }

  // Merge coplanar triangles. Large triangles define the planes; a triangle
  // joins a group when its three vertices lie on the group's plane.
  std::vector<Vec<3>> cross(faces.size());
  std::vector<double> area(faces.size());
  for (int f : live) {
    const auto& v = faces[f].v;
    cross[f] = (pts[v[1]] - pts[v[0]]).cross(pts[v[2]] - pts[v[0]]);
    area[f] = 0.5 * cross[f].norm();
  }
  std::stable_sort(live.begin(), live.end(), [&](int a, int b) { return area[a] > area[b]; });

  struct Group {
    Vec<3> normal;
    double offset;
    Vec<3> area_vec;
    Vec<3> moment;
    double area;
    std::vector<int> verts;
  };
  std::vector<Group> groups;
  std::vector<int> group_of(faces.size(), -1);
  const double ctol = tol.coplanar * scale;
  for (int f : live) {
    const auto& v = faces[f].v;
    int target = -1;
    for (int g = 0; g < static_cast<int>(groups.size()) && target < 0; ++g) {
      const Group& G = groups[g];
      if (cross[f].dot(G.normal) < 0.0) continue;
      bool on = true;
      for (int k = 0; k < 3 && on; ++k) on = std::abs(G.normal.dot(pts[v[k]]) - G.offset) <= ctol;
      if (on) target = g;
    }
    if (target < 0) {
      Group G;
      G.normal = area[f] > 0.0 ? Vec<3>(cross[f].normalized()) : faces[f].normal;
      G.offset = G.normal.dot(pts[v[0]]);
      G.area_vec = Vec<3>::Zero();
      G.moment = Vec<3>::Zero();
      G.area = 0.0;
      groups.push_back(G);
      target = static_cast<int>(groups.size()) - 1;
    }
    Group& G = groups[target];
    G.area_vec += cross[f];
    G.moment += area[f] * (pts[v[0]] + pts[v[1]] + pts[v[2]]) / 3.0;
    G.area += area[f];
    G.verts.insert(G.verts.end(), v, v + 3);
    group_of[f] = target;
  }

  std::vector<Facet<3>> facets;
  std::vector<std::vector<int>> vertex_groups(n);
  for (int g = 0; g < static_cast<int>(groups.size()); ++g) {
    Group& G = groups[g];
    std::sort(G.verts.begin(), G.verts.end());
    G.verts.erase(std::unique(G.verts.begin(), G.verts.end()), G.verts.end());
    const double len = G.area_vec.norm();
    if (!(len > 0.0)) continue;
    Facet<3> f;
    f.normal = G.area_vec / len;
    f.measure = 0.5 * len;
    f.offset = -std::numeric_limits<double>::infinity();
    for (int v : G.verts) {
      f.offset = std::max(f.offset, f.normal.dot(pts[v]));
      vertex_groups[v].push_back(g);
    }
    f.centroid = G.area > 0.0 ? Vec<3>(G.moment / G.area) : pts[G.verts.front()];
    facets.push_back(f);
  }

  std::vector<Vec<3>> verts;
  for (int i = 0; i < n; ++i) {
    if (vertex_groups[i].size() >= 3) verts.push_back(pts[i]);
  }
  return Polytope<3>(std::move(verts), std::move(facets));
}

}  // namespace detail

/// Convex hull of a point cloud with outward unit normals and exact facet
/// measures. Throws DegenerateInput for lower-dimensional input.
template <int N>
Polytope<N> convex_hull(std::span<const Vec<N>> points) {
  static_assert(N == 2 || N == 3, "convex_hull supports n = 2, 3");
  if constexpr (N == 2) {
    return detail::hull2(points);
  } else {
    return detail::hull3(points);
  }
}

template <int N>
Polytope<N> convex_hull(const std::vector<Vec<N>>& points) {
  return convex_hull<N>(std::span<const Vec<N>>(points));
}

template <int N>
Polytope<N> minkowski_sum(const Polytope<N>& a, const Polytope<N>& b) {
  std::vector<Vec<N>> sums;
  sums.reserve(a.vertices().size() * b.vertices().size());
  for (const auto& x : a.vertices()) {
    for (const auto& y : b.vertices()) sums.push_back(x + y);
  }
  return convex_hull<N>(sums);
}

template <int N>
Polytope<N> linear_image(const LinMap<N>& phi, const Polytope<N>& p) {
  phi.require_invertible("linear_image");
  std::vector<Vec<N>> vs;
  vs.reserve(p.vertices().size());
  for (const auto& v : p.vertices()) vs.push_back(phi(v));
  return convex_hull<N>(vs);
}

/// P* = conv{normal_i / offset_i}; requires the origin in the interior.
template <int N>
Polytope<N> polar_polytope(const Polytope<N>& p) {
  if (!p.contains_origin()) throw MembershipError("polar_polytope: origin is not interior");
  std::vector<Vec<N>> vs;
  vs.reserve(p.facets().size());
  for (const auto& f : p.facets()) vs.push_back(f.normal / f.offset);
  return convex_hull<N>(vs);
}

template <int N>
double polytope_volume(const Polytope<N>& p) {
  return p.volume();
}

template <int N>
Polytope<N> recentered(const Polytope<N>& p) {
  return p.translated(-p.centroid());
}

/// [−half, half]^N.
template <int N>
Polytope<N> hypercube(double half = 1.0) {
  std::vector<Vec<N>> vs;
  for (int mask = 0; mask < (1 << N); ++mask) {
    Vec<N> v;
    for (int i = 0; i < N; ++i) v[i] = (mask >> i) & 1 ? half : -half;
    vs.push_back(v);
  }
  return convex_hull<N>(vs);
}

/// conv{±r e_i}.
template <int N>
Polytope<N> cross_polytope(double r = 1.0) {
  std::vector<Vec<N>> vs;
  for (int i = 0; i < N; ++i) {
    Vec<N> e = Vec<N>::Zero();
    e[i] = r;
    vs.push_back(e);
    vs.push_back(-e);
  }
  return convex_hull<N>(vs);
}

/// Polytopal stand-in for the unit ball together with the radii of the
/// balls it sits between.
template <int N>
struct BallApprox {
  Polytope<N> body;
  double inner_radius;  // min facet offset
  double outer_radius;  // max vertex norm

  double hausdorff() const { return std::max(outer_radius - 1.0, 1.0 - inner_radius); }
};

/// n = 2: regular m-gon inscribed in the unit circle. n = 3: hull of m
/// Fibonacci points rescaled so its surface area equals that of the unit
/// sphere, which keeps facet offsets within ±0.5% of 1 at m = 320.
template <int N>
BallApprox<N> ball_approx(int m) {
  if (m < N + 1) throw std::invalid_argument("ball_approx: m must be at least n + 1");
  Polytope<N> body = convex_hull<N>(sphere_points<N>(m));
  if constexpr (N == 3) {
    body = body.scaled(std::sqrt(sphere_area(3) / body.surface_area()));
  }
  double inner = std::numeric_limits<double>::infinity(), outer = 0.0;
  for (const auto& f : body.facets()) inner = std::min(inner, f.offset);
  for (const auto& v : body.vertices()) outer = std::max(outer, v.norm());
  return BallApprox<N>{std::move(body), inner, outer};
}

}  // namespace mixedlp
