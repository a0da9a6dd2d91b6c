#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace pmcert {

// Vectors in Minkowski space R^{n-1,1}: the last coordinate is the timelike
// one, so <u,v> = u_1 v_1 + ... + u_{n-1} v_{n-1} - u_n v_n.
template <int N>
struct MVec {
  std::array<double, N> c{};

  double& operator[](int i) { return c[i]; }
  double operator[](int i) const { return c[i]; }

  MVec operator+(const MVec& o) const {
    MVec r;
    for (int i = 0; i < N; ++i) r.c[i] = c[i] + o.c[i];
    return r;
  }
  MVec operator-(const MVec& o) const {
    MVec r;
    for (int i = 0; i < N; ++i) r.c[i] = c[i] - o.c[i];
    return r;
  }
  MVec operator*(double s) const {
    MVec r;
    for (int i = 0; i < N; ++i) r.c[i] = c[i] * s;
    return r;
  }
  MVec operator-() const { return *this * -1.0; }
};

using LorentzVec = MVec<4>;
using H2Point = MVec<3>;

template <int N>
inline double mdot(const MVec<N>& u, const MVec<N>& v) {
  double s = 0;
  for (int i = 0; i + 1 < N; ++i) s += u.c[i] * v.c[i];
  return s - u.c[N - 1] * v.c[N - 1];
}

template <int N>
inline bool is_spacelike(const MVec<N>& v, double tol = 0) {
  return mdot(v, v) > tol;
}

template <int N>
inline bool is_timelike(const MVec<N>& v, double tol = 0) {
  return mdot(v, v) < -tol;
}

// Scales v onto <v,v> = 1. Throws if v is not spacelike.
template <int N>
inline MVec<N> normalize_spacelike(const MVec<N>& v) {
  double q = mdot(v, v);
  if (q <= 0) throw std::domain_error("normalize_spacelike: vector is not spacelike");
  return v * (1.0 / std::sqrt(q));
}

// Scales v onto the upper sheet <v,v> = -1, t > 0. Throws if not timelike.
template <int N>
inline MVec<N> normalize_timelike(const MVec<N>& v) {
  double q = mdot(v, v);
  if (q >= 0) throw std::domain_error("normalize_timelike: vector is not timelike");
  MVec<N> r = v * (1.0 / std::sqrt(-q));
  if (r.c[N - 1] < 0) r = -r;
  return r;
}

// Reflection across the hyperplane <x,n> = 0 for a unit spacelike normal n.
template <int N>
inline MVec<N> reflect(const MVec<N>& v, const MVec<N>& n) {
  return v - n * (2.0 * mdot(v, n));
}

// Distance between points on the upper sheet (<u,u> = <v,v> = -1).
template <int N>
inline double point_distance(const MVec<N>& u, const MVec<N>& v) {
  double c = -mdot(u, v);
  if (c < 1) c = 1;
  return std::acosh(c);
}

// Lorentz cross product in R^{2,1}: the unique (up to scale) vector
// orthogonal to both arguments under the bilinear form.
inline H2Point lorentz_cross(const H2Point& u, const H2Point& v) {
  H2Point w;
  w[0] = u[1] * v[2] - u[2] * v[1];
  w[1] = u[2] * v[0] - u[0] * v[2];
  w[2] = -(u[0] * v[1] - u[1] * v[0]);
  return w;
}

// Unit spacelike normal of the geodesic line through two distinct points.
inline H2Point line_through(const H2Point& p, const H2Point& q) {
  return normalize_spacelike(lorentz_cross(p, q));
}

// Unit tangent at p pointing toward q along the geodesic.
template <int N>
inline MVec<N> tangent_toward(const MVec<N>& p, const MVec<N>& q) {
  MVec<N> t = q + p * mdot(q, p);
  return normalize_spacelike(t);
}

// Interior angle at p of the geodesic wedge q-p-r.
template <int N>
inline double corner_angle(const MVec<N>& p, const MVec<N>& q, const MVec<N>& r) {
  MVec<N> a = tangent_toward(p, q);
  MVec<N> b = tangent_toward(p, r);
  double c = mdot(a, b);
  if (c > 1) c = 1;
  if (c < -1) c = -1;
  return std::acos(c);
}

struct H2Segment {
  H2Point a, b;
};

inline double segment_length(const H2Segment& s) { return point_distance(s.a, s.b); }

namespace detail {

// p lies on the segment iff going a->p->b does not detour.
inline bool on_segment(const H2Point& p, const H2Segment& s, double tol = 1e-9) {
  return point_distance(s.a, p) + point_distance(p, s.b) <=
         point_distance(s.a, s.b) + tol;
}

inline double point_to_segment(const H2Point& p, const H2Segment& s) {
  double best = std::min(point_distance(p, s.a), point_distance(p, s.b));
  H2Point n = line_through(s.a, s.b);
  H2Point foot = p - n * mdot(p, n);
  if (is_timelike(foot)) {
    foot = normalize_timelike(foot);
    if (on_segment(foot, s)) {
      double d = std::asinh(std::abs(mdot(p, n)));
      best = std::min(best, d);
    }
  }
  return best;
}

}  // namespace detail

// Distance between two geodesic segments on the hyperboloid. Intersecting
// segments give 0. Throws on degenerate (zero-length) segments.
inline double segment_distance_h2(const H2Segment& s, const H2Segment& t) {
  if (point_distance(s.a, s.b) < 1e-12 || point_distance(t.a, t.b) < 1e-12)
    throw std::invalid_argument("segment_distance_h2: degenerate segment");
  H2Point ns = line_through(s.a, s.b);
  H2Point nt = line_through(t.a, t.b);
  double g = mdot(ns, nt);

  if (std::abs(g) < 1) {
    H2Point x = lorentz_cross(ns, nt);
    if (is_timelike(x)) {
      x = normalize_timelike(x);
      if (detail::on_segment(x, s) && detail::on_segment(x, t)) return 0;
    }
  }

  double best = std::min(std::min(detail::point_to_segment(s.a, t),
                                  detail::point_to_segment(s.b, t)),
                         std::min(detail::point_to_segment(t.a, s),
                                  detail::point_to_segment(t.b, s)));

  if (std::abs(g) > 1) {
    // Ultraparallel lines: feet of the common perpendicular.
    H2Point f1 = nt - ns * g;
    H2Point f2 = ns - nt * g;
    if (is_timelike(f1) && is_timelike(f2)) {
      f1 = normalize_timelike(f1);
      f2 = normalize_timelike(f2);
      if (detail::on_segment(f1, s) && detail::on_segment(f2, t))
        best = std::min(best, std::acosh(std::abs(g)));
    }
  }
  return best;
}

// Hyperbolic polygon area via the angle defect.
inline double polygon_area(const std::vector<H2Point>& verts) {
  int n = static_cast<int>(verts.size());
  if (n < 3) throw std::invalid_argument("polygon_area: need at least 3 vertices");
  double sum = 0;
  for (int i = 0; i < n; ++i) {
    sum += corner_angle(verts[i], verts[(i + n - 1) % n], verts[(i + 1) % n]);
  }
  return (n - 2) * 3.14159265358979323846 - sum;
}

// Same area computed by fanning into triangles, each by its own angle defect.
inline double polygon_area_triangulated(const std::vector<H2Point>& verts) {
  int n = static_cast<int>(verts.size());
  if (n < 3) throw std::invalid_argument("polygon_area_triangulated: need at least 3 vertices");
  double total = 0;
  for (int i = 1; i + 1 < n; ++i) {
    const H2Point& a = verts[0];
    const H2Point& b = verts[i];
    const H2Point& c = verts[i + 1];
    double defect = 3.14159265358979323846 - corner_angle(a, b, c) -
                    corner_angle(b, c, a) - corner_angle(c, a, b);
    total += defect;
  }
  return total;
}

}  // namespace pmcert
