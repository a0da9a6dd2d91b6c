#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "pmcert/lorentz.hpp"
#include "pmcert/realize.hpp"

namespace pmcert {

inline constexpr double kPi = 3.14159265358979323846;

struct FacePolygon {
  int face = -1;
  std::vector<H2Point> verts;   // cyclic order
  std::vector<int> vertex_ids;  // indices into poly.vertices()

  int size() const { return static_cast<int>(verts.size()); }
  double corner(int i) const {
    int n = size();
    return corner_angle(verts[i], verts[(i + n - 1) % n], verts[(i + 1) % n]);
  }
  H2Segment edge(int i) const { return {verts[i], verts[(i + 1) % size()]}; }
  double area() const { return polygon_area(verts); }
};

// Intrinsic polygon of a face: its vertices expressed in an orthonormal
// frame of the face plane. Corner angles are validated against the spherical
// link prediction from the prescribed dihedral angles.
inline FacePolygon face_polygon(const RealizedPolyhedron& rp, int face) {
  const AngledPolyhedron& p = rp.poly;
  std::vector<int> cycle = p.face_vertex_cycle(face);
  const LorentzVec& e = rp.normals[face];

  auto project = [&](LorentzVec w, const LorentzVec& bt, bool have_bt,
                     const LorentzVec& b1, bool have_b1) {
    w = w - e * mdot(w, e);
    if (have_bt) w = w + bt * mdot(w, bt);
    if (have_b1) w = w - b1 * mdot(w, b1);
    return w;
  };

  LorentzVec centroid{};
  for (int v : cycle) centroid = centroid + rp.vertex_pos[v];
  LorentzVec bt = normalize_timelike(project(centroid, {}, false, {}, false));
  LorentzVec b1{}, b2{};
  bool have_b1 = false, have_b2 = false;
  for (int v : cycle) {
    LorentzVec w = project(rp.vertex_pos[v], bt, true, b1, have_b1);
    if (mdot(w, w) < 1e-18) continue;
    if (!have_b1) {
      b1 = normalize_spacelike(w);
      have_b1 = true;
    } else {
      b2 = normalize_spacelike(w);
      have_b2 = true;
      break;
    }
  }
  if (!have_b2) throw std::runtime_error("face_polygon: degenerate face frame");

  FacePolygon poly;
  poly.face = face;
  for (int v : cycle) {
    const LorentzVec& x = rp.vertex_pos[v];
    poly.verts.push_back(H2Point{{mdot(x, b1), mdot(x, b2), -mdot(x, bt)}});
    poly.vertex_ids.push_back(v);
  }

  // Spherical link check: the 2D corner equals the side of the link triangle
  // opposite the edge not on this face.
  int n = poly.size();
  for (int i = 0; i < n; ++i) {
    const auto& t = p.vertices()[poly.vertex_ids[i]];
    int a = -1, b = -1;
    for (int f : t)
      if (f != face) (a < 0 ? a : b) = f;
    double tfa = p.dihedral(face, a);
    double tfb = p.dihedral(face, b);
    double tab = p.dihedral(a, b);
    double expected = std::acos(
        (std::cos(tab) + std::cos(tfa) * std::cos(tfb)) / (std::sin(tfa) * std::sin(tfb)));
    if (std::abs(poly.corner(i) - expected) > 1e-9) {
      std::ostringstream os;
      os << "face_polygon: corner " << i << " of face " << p.face_names()[face]
         << " is " << poly.corner(i) << ", link predicts " << expected;
      throw std::runtime_error(os.str());
    }
  }
  if (poly.area() <= 0) throw std::runtime_error("face_polygon: nonpositive area");
  return poly;
}

struct Developed3kGon {
  int k = 0;
  int copies = 0;             // number of boundary-face copies the gon carries
  double interior_len = 0;    // length of each interior edge
  double mirror_len = 0;      // length of each mirror edge
  double area = 0;
  std::vector<H2Point> verts;              // 3k vertices in boundary order
  std::vector<H2Segment> interior_edges;   // k
  std::vector<H2Segment> mirror_edges;     // 2k
};

namespace detail {

inline Eigen::Matrix3d h2_translation_x(double d) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
  m(0, 0) = std::cosh(d);
  m(0, 2) = std::sinh(d);
  m(2, 0) = std::sinh(d);
  m(2, 2) = std::cosh(d);
  return m;
}

inline Eigen::Matrix3d h2_rotation(double phi) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
  m(0, 0) = std::cos(phi);
  m(0, 1) = -std::sin(phi);
  m(1, 0) = std::sin(phi);
  m(1, 1) = std::cos(phi);
  return m;
}

// Boundary walk of one period [interior a, mirror m, mirror m] of a
// right-angled polygon, as an isometry of the hyperboloid model.
inline Eigen::Matrix3d period_transform(double a, double m) {
  Eigen::Matrix3d turn = h2_rotation(kPi / 2);
  return h2_translation_x(a) * turn * h2_translation_x(m) * turn *
         h2_translation_x(m) * turn;
}

inline H2Point to_h2(const Eigen::Vector3d& v) { return H2Point{{v[0], v[1], v[2]}}; }

}  // namespace detail

// Builds the closed right-angled 3k-gon whose boundary repeats the pattern
// [interior edge, mirror edge, mirror edge] k times. Two reflected copies of
// the boundary face tile one period: the pi/k corners of all 2k copies meet
// at the center, the mirror edges are the copies' (pi/4, pi/2) edges, and the
// interior edges are doubled (pi/2, pi/2) edges. The interior edge length is
// solved from the closure condition (the period walk must be an elliptic
// rotation by 2 pi / k) and cross-checked against that doubling.
inline Developed3kGon develop_3kgon(const FacePolygon& fb, int k) {
  if (k < 7) throw std::invalid_argument("develop_3kgon: k must be at least 7");
  if (fb.size() != 4)
    throw std::invalid_argument("develop_3kgon: boundary face polygon must be a quadrilateral");

  // Identify the corner pattern {pi/k, pi/4, pi/2, pi/2}; the mirror edge
  // joins the pi/4 corner to a right-angled corner, the half-interior edge
  // joins the two right-angled corners.
  int idx_k = -1, idx_4 = -1;
  std::vector<int> right;
  for (int i = 0; i < 4; ++i) {
    double c = fb.corner(i);
    if (std::abs(c - kPi / k) < 1e-6)
      idx_k = i;
    else if (std::abs(c - kPi / 4) < 1e-6)
      idx_4 = i;
    else if (std::abs(c - kPi / 2) < 1e-6)
      right.push_back(i);
  }
  if (idx_k < 0 || idx_4 < 0 || right.size() != 2)
    throw std::runtime_error("develop_3kgon: unexpected corner pattern on the boundary face");
  int mirror_i = -1, half_i = -1;
  for (int i = 0; i < 4; ++i) {
    int j = (i + 1) % 4;
    auto is_right = [&](int c) { return c == right[0] || c == right[1]; };
    if ((i == idx_4 && is_right(j)) || (j == idx_4 && is_right(i))) mirror_i = i;
    if (is_right(i) && is_right(j)) half_i = i;
  }
  if (mirror_i < 0 || half_i < 0)
    throw std::runtime_error("develop_3kgon: boundary face corners are not in tiling order");
  double m = segment_length(fb.edge(mirror_i));
  double a_expect = 2.0 * segment_length(fb.edge(half_i));

  double target = 1.0 + 2.0 * std::cos(2.0 * kPi / k);
  auto g = [&](double a) { return detail::period_transform(a, m).trace() - target; };

  // Bracket and bisect every sign change; exactly one root may verify.
  std::vector<double> roots;
  double prev_a = 1e-4, prev_g = g(prev_a);
  for (double a = prev_a + 0.01; a <= 20.0; a += 0.01) {
    double ga = g(a);
    if (prev_g == 0 || (prev_g < 0) != (ga < 0)) {
      double lo = prev_a, hi = a;
      for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if ((g(lo) < 0) != (g(mid) < 0))
          hi = mid;
        else
          lo = mid;
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_a = a;
    prev_g = ga;
  }

  Developed3kGon out;
  bool found = false;
  for (double a : roots) {
    Eigen::Matrix3d t = detail::period_transform(a, m);

    // Center of the elliptic period rotation, used to recenter the polygon.
    Eigen::FullPivLU<Eigen::Matrix3d> lu(t - Eigen::Matrix3d::Identity());
    lu.setThreshold(1e-6);
    if (lu.dimensionOfKernel() != 1) continue;
    Eigen::Vector3d center = lu.kernel().col(0);
    double q = center[0] * center[0] + center[1] * center[1] - center[2] * center[2];
    if (q >= 0) continue;
    center /= std::sqrt(-q);
    if (center[2] < 0) center = -center;
    double dist = std::acosh(std::max(1.0, center[2]));
    double phi = std::atan2(center[1], center[0]);
    Eigen::Matrix3d recenter = detail::h2_rotation(phi) * detail::h2_translation_x(-dist) *
                               detail::h2_rotation(-phi);

    // Walk the period once to get its three vertices, then rotate around.
    Eigen::Vector3d o(0, 0, 1);
    std::vector<Eigen::Vector3d> period_verts;
    Eigen::Matrix3d pose = Eigen::Matrix3d::Identity();
    period_verts.push_back(recenter * o);
    pose = pose * detail::h2_translation_x(a) * detail::h2_rotation(kPi / 2);
    period_verts.push_back(recenter * (pose * o));
    pose = pose * detail::h2_translation_x(m) * detail::h2_rotation(kPi / 2);
    period_verts.push_back(recenter * (pose * o));

    // In the recentered frame the period map is a rotation about the origin
    // by 2 pi / k; fix its sign from where it sends the period start, then
    // lay out the k periods by exact rotations so no error accumulates.
    Eigen::Vector3d step = recenter * (t * o);
    double sign = 1.0;
    {
      Eigen::Vector3d plus = detail::h2_rotation(2 * kPi / k) * period_verts[0];
      Eigen::Vector3d minus = detail::h2_rotation(-2 * kPi / k) * period_verts[0];
      double dp = (plus - step).norm(), dm = (minus - step).norm();
      if (std::min(dp, dm) > 1e-6 * std::max(1.0, step.norm())) continue;
      sign = dp <= dm ? 1.0 : -1.0;
    }

    Developed3kGon cand;
    cand.k = k;
    cand.copies = 2 * k;
    cand.interior_len = a;
    cand.mirror_len = m;
    for (int j = 0; j < k; ++j) {
      Eigen::Matrix3d rotj = detail::h2_rotation(sign * 2 * kPi * j / k);
      for (const Eigen::Vector3d& w : period_verts)
        cand.verts.push_back(detail::to_h2(rotj * w));
    }

    int n = 3 * k;
    bool valid = true;
    for (int i = 0; i < n && valid; ++i) {
      double c = corner_angle(cand.verts[i], cand.verts[(i + n - 1) % n],
                              cand.verts[(i + 1) % n]);
      if (std::abs(c - kPi / 2) > 1e-8) valid = false;
    }
    for (int j = 0; j < k && valid; ++j) {
      H2Segment in{cand.verts[3 * j], cand.verts[3 * j + 1]};
      H2Segment m1{cand.verts[3 * j + 1], cand.verts[3 * j + 2]};
      H2Segment m2{cand.verts[3 * j + 2], cand.verts[(3 * j + 3) % n]};
      if (std::abs(segment_length(in) - a) > 1e-9 ||
          std::abs(segment_length(m1) - m) > 1e-9 ||
          std::abs(segment_length(m2) - m) > 1e-9)
        valid = false;
      cand.interior_edges.push_back(in);
      cand.mirror_edges.push_back(m1);
      cand.mirror_edges.push_back(m2);
    }
    if (!valid) continue;
    if (std::abs(a - a_expect) > 1e-7 * std::max(1.0, a_expect)) continue;
    cand.area = polygon_area(cand.verts);
    if (std::abs(cand.area - (3 * k - 4) * kPi / 2) > 1e-8) continue;
    if (std::abs(cand.area - cand.copies * fb.area()) > 1e-8) continue;

    if (found) throw std::runtime_error("develop_3kgon: closure condition has two solutions");
    out = cand;
    found = true;
  }
  if (!found)
    throw std::runtime_error("develop_3kgon: no closed right-angled polygon for this mirror length");
  return out;
}

struct GeometricConstants {
  double C = 0;   // minimal distance between interior edges of the 3k-gon
  double L = 0;   // mirror length (twice the bold edge)
  double mu = 0;  // distance from the boundary face to its disjoint faces
  double D = 0;   // minimal distance between non-adjacent mirror segments
  double b = 0;
  double R = 0;
  double c = 0;
  int girth_target = 0;
  double A_threshold = 0;
  double b_fraction = 0;
  double R_margin = 0;
};

inline GeometricConstants compute_constants(const RealizedPolyhedron& rp,
                                            int boundary_face, int bold_edge, int k) {
  GeometricConstants gc;
  gc.L = 2.0 * edge_length(rp, bold_edge);

  std::vector<int> disjoint;
  for (int i = 0; i < rp.poly.num_faces(); ++i)
    if (i != boundary_face && !rp.poly.adjacent(boundary_face, i)) disjoint.push_back(i);
  if (disjoint.size() != 2)
    throw std::runtime_error("compute_constants: boundary face must have exactly two disjoint faces");
  gc.mu = std::min(face_distance(rp, boundary_face, disjoint[0]),
                   face_distance(rp, boundary_face, disjoint[1]));

  FacePolygon fb = face_polygon(rp, boundary_face);
  Developed3kGon gon = develop_3kgon(fb, k);
  if (std::abs(gon.mirror_len - gc.L / 2.0) > 1e-9)
    throw std::runtime_error(
        "compute_constants: bold edge does not match the mirror edge of the boundary face");

  gc.C = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < gon.interior_edges.size(); ++i)
    for (size_t j = i + 1; j < gon.interior_edges.size(); ++j)
      gc.C = std::min(gc.C, segment_distance_h2(gon.interior_edges[i], gon.interior_edges[j]));

  // Two-tile neighborhood: the gon plus its reflection across one interior
  // edge; D is the minimal distance between non-adjacent mirror segments.
  H2Point mirror_line = line_through(gon.interior_edges[0].a, gon.interior_edges[0].b);
  std::vector<H2Segment> mirrors = gon.mirror_edges;
  for (const H2Segment& s : gon.mirror_edges)
    mirrors.push_back({reflect(s.a, mirror_line), reflect(s.b, mirror_line)});
  // Endpoint comparison in coordinates: hyperbolic distance between nearly
  // identical far-out points loses half its digits to cancellation.
  auto same_point = [](const H2Point& u, const H2Point& v) {
    double scale = std::max({1.0, std::abs(u[2]), std::abs(v[2])});
    return std::max({std::abs(u[0] - v[0]), std::abs(u[1] - v[1]),
                     std::abs(u[2] - v[2])}) < 1e-9 * scale;
  };
  auto touches = [&](const H2Segment& s, const H2Segment& t) {
    return same_point(s.a, t.a) || same_point(s.a, t.b) ||
           same_point(s.b, t.a) || same_point(s.b, t.b);
  };
  gc.D = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < mirrors.size(); ++i)
    for (size_t j = i + 1; j < mirrors.size(); ++j) {
      if (touches(mirrors[i], mirrors[j])) continue;
      gc.D = std::min(gc.D, segment_distance_h2(mirrors[i], mirrors[j]));
    }
  return gc;
}

// Fixes the buffer width b and the relator scale R from the raw constants.
inline GeometricConstants choose_b_R(GeometricConstants gc, double b_fraction = 0.9,
                                     double R_margin = 1.01) {
  if (!(b_fraction > 0 && b_fraction < 1))
    throw std::invalid_argument("choose_b_R: b_fraction must lie in (0,1)");
  if (!(R_margin > 1)) throw std::invalid_argument("choose_b_R: R_margin must exceed 1");
  if (!(gc.C > 0 && gc.L > 0 && gc.mu > 0 && gc.D > 0))
    throw std::invalid_argument("choose_b_R: constants must be positive");
  gc.b_fraction = b_fraction;
  gc.R_margin = R_margin;
  gc.b = b_fraction * gc.mu;
  gc.R = R_margin * 2.0 * kPi / std::sinh(gc.b);
  gc.c = 0.5 * (kPi / std::sinh(gc.b) + gc.R / 2.0);
  gc.girth_target = std::max(6, static_cast<int>(std::ceil((gc.R + gc.L) / gc.C)));
  gc.A_threshold = 3.0 * gc.R / gc.D + 3.0;

  if (!(gc.b < gc.mu)) throw std::logic_error("choose_b_R: b must be below mu");
  if (!(gc.R > 2.0 * kPi / std::sinh(gc.b)))
    throw std::logic_error("choose_b_R: R must exceed 2 pi / sinh b");
  if (!(gc.c > kPi / std::sinh(gc.b) && gc.c < gc.R / 2.0))
    throw std::logic_error("choose_b_R: c must lie strictly inside its window");
  if (gc.girth_target < 6) throw std::logic_error("choose_b_R: girth target below 6");
  if (!(gc.A_threshold > 3)) throw std::logic_error("choose_b_R: area threshold too small");
  return gc;
}

// Distance from the marked sigma face to the boundary face, compared with b.
struct SigmaMargin {
  double distance = 0;
  double b = 0;
  bool exceeds_b = false;
};

inline SigmaMargin sigma_margin(const RealizedPolyhedron& rp, int sigma_face,
                                int boundary_face, const GeometricConstants& gc) {
  SigmaMargin sm;
  sm.distance = face_distance(rp, sigma_face, boundary_face);
  sm.b = gc.b;
  sm.exceeds_b = sm.distance > gc.b;
  return sm;
}

}  // namespace pmcert
