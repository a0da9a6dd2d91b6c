#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmcert/lorentz.hpp"
#include "pmcert/polyhedron.hpp"

namespace pmcert {

struct RealizedPolyhedron {
  AngledPolyhedron poly;
  std::vector<LorentzVec> normals;     // unit spacelike outward normals
  std::vector<LorentzVec> vertex_pos;  // unit timelike, aligned with poly.vertices()
  Eigen::MatrixXd gram;
  double residual_inf = 0;
  int restarts_used = 0;
};

namespace detail {

struct NewtonSystem {
  const AngledPolyhedron& p;
  int nf;
  std::array<int, 3> gauge;  // faces pinned to successively smaller subspaces

  explicit NewtonSystem(const AngledPolyhedron& poly) : p(poly), nf(poly.num_faces()) {
    gauge = p.vertices()[0];
  }

  int rows() const { return nf + p.num_edges() + 6; }

  Eigen::VectorXd residual(const Eigen::VectorXd& x) const {
    Eigen::VectorXd r(rows());
    int row = 0;
    auto dot = [&](int i, int j) {
      return x[4 * i] * x[4 * j] + x[4 * i + 1] * x[4 * j + 1] +
             x[4 * i + 2] * x[4 * j + 2] - x[4 * i + 3] * x[4 * j + 3];
    };
    for (int i = 0; i < nf; ++i) r[row++] = dot(i, i) - 1.0;
    for (const PolyEdge& e : p.edges())
      r[row++] = dot(e.f1, e.f2) + std::cos(3.14159265358979323846 / e.angle_sub);
    r[row++] = x[4 * gauge[0] + 1];
    r[row++] = x[4 * gauge[0] + 2];
    r[row++] = x[4 * gauge[0] + 3];
    r[row++] = x[4 * gauge[1] + 2];
    r[row++] = x[4 * gauge[1] + 3];
    r[row++] = x[4 * gauge[2] + 3];
    return r;
  }

  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(rows(), 4 * nf);
    int row = 0;
    auto put = [&](int r, int f, const double* v, double s) {
      j(r, 4 * f) += s * v[0];
      j(r, 4 * f + 1) += s * v[1];
      j(r, 4 * f + 2) += s * v[2];
      j(r, 4 * f + 3) -= s * v[3];
    };
    for (int i = 0; i < nf; ++i) {
      put(row, i, &x[4 * i], 2.0);
      ++row;
    }
    for (const PolyEdge& e : p.edges()) {
      put(row, e.f1, &x[4 * e.f2], 1.0);
      put(row, e.f2, &x[4 * e.f1], 1.0);
      ++row;
    }
    j(row++, 4 * gauge[0] + 1) = 1.0;
    j(row++, 4 * gauge[0] + 2) = 1.0;
    j(row++, 4 * gauge[0] + 3) = 1.0;
    j(row++, 4 * gauge[1] + 2) = 1.0;
    j(row++, 4 * gauge[1] + 3) = 1.0;
    j(row++, 4 * gauge[2] + 3) = 1.0;
    return j;
  }
};

// Unit directions from a spectral layout of the face adjacency graph, rotated
// so the three gauge faces sit in canonical position.
inline std::vector<Eigen::Vector3d> spectral_directions(const AngledPolyhedron& p,
                                                        const std::array<int, 3>& gauge) {
  int n = p.num_faces();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const PolyEdge& e : p.edges()) {
    lap(e.f1, e.f2) -= 1;
    lap(e.f2, e.f1) -= 1;
    lap(e.f1, e.f1) += 1;
    lap(e.f2, e.f2) += 1;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
  std::vector<Eigen::Vector3d> dirs(n);
  for (int i = 0; i < n; ++i) {
    Eigen::Vector3d v(es.eigenvectors()(i, 1), es.eigenvectors()(i, 2),
                      es.eigenvectors()(i, 3));
    if (v.norm() < 1e-9) v = Eigen::Vector3d(1, 0, 0);
    dirs[i] = v.normalized();
  }
  Eigen::Vector3d u1 = dirs[gauge[0]];
  Eigen::Vector3d u2 = dirs[gauge[1]] - dirs[gauge[1]].dot(u1) * u1;
  if (u2.norm() < 1e-9) u2 = u1.unitOrthogonal();
  u2.normalize();
  Eigen::Vector3d u3 = u1.cross(u2);
  if (dirs[gauge[2]].dot(u3) < 0) u3 = -u3;
  for (Eigen::Vector3d& d : dirs) d = Eigen::Vector3d(u1.dot(d), u2.dot(d), u3.dot(d));
  return dirs;
}

inline LorentzVec apply_diag_flip(const LorentzVec& v, int coord) {
  LorentzVec r = v;
  r[coord] = -r[coord];
  return r;
}

}  // namespace detail

// Solves for outward unit spacelike face normals realizing the prescribed
// dihedral angles, via damped Newton iteration with seeded restarts. The
// gauge (first vertex's faces pinned to canonical position) makes the result
// bit-reproducible for a fixed seed.
inline RealizedPolyhedron realize_polyhedron(const AngledPolyhedron& p,
                                             std::uint64_t seed = 20240501,
                                             int max_restarts = 64) {
  p.andreev_precheck();
  detail::NewtonSystem sys(p);
  int nf = p.num_faces();
  int nv = p.num_vertices();
  std::mt19937_64 rng(seed);
  std::vector<Eigen::Vector3d> dirs = detail::spectral_directions(p, sys.gauge);

  double best_residual = std::numeric_limits<double>::infinity();
  std::string last_reject = "no Newton run converged";

  for (int restart = 0; restart < max_restarts; ++restart) {
    double amp = 0.02 * (1 + restart % 8);
    std::uniform_real_distribution<double> noise(-amp, amp);
    double r0 = 0.6 + 0.15 * (restart / 8);
    Eigen::VectorXd x(4 * nf);
    for (int i = 0; i < nf; ++i) {
      double ri = r0 + noise(rng);
      x[4 * i] = std::cosh(ri) * (dirs[i].x() + noise(rng));
      x[4 * i + 1] = std::cosh(ri) * (dirs[i].y() + noise(rng));
      x[4 * i + 2] = std::cosh(ri) * (dirs[i].z() + noise(rng));
      x[4 * i + 3] = std::sinh(ri);
    }

    bool converged = false;
    Eigen::VectorXd f = sys.residual(x);
    for (int iter = 0; iter < 200; ++iter) {
      if (f.lpNorm<Eigen::Infinity>() < 1e-14) {
        converged = true;
        break;
      }
      Eigen::MatrixXd j = sys.jacobian(x);
      Eigen::VectorXd delta = Eigen::FullPivLU<Eigen::MatrixXd>(j).solve(-f);
      if (!delta.allFinite()) break;
      double f0 = f.squaredNorm();
      double alpha = 1.0;
      bool stepped = false;
      while (alpha > 1e-9) {
        Eigen::VectorXd xn = x + alpha * delta;
        Eigen::VectorXd fn = sys.residual(xn);
        if (fn.squaredNorm() < f0 * (1.0 - 1e-4 * alpha)) {
          x = xn;
          f = fn;
          stepped = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!stepped) break;
    }
    double res = f.lpNorm<Eigen::Infinity>();
    best_residual = std::min(best_residual, res);
    if (!converged) continue;

    RealizedPolyhedron rp{p, {}, {}, Eigen::MatrixXd(), res, restart + 1};
    rp.normals.resize(nf);
    for (int i = 0; i < nf; ++i)
      rp.normals[i] = LorentzVec{{x[4 * i], x[4 * i + 1], x[4 * i + 2], x[4 * i + 3]}};

    // Canonical gauge signs (diagonal form-preserving flips).
    if (rp.normals[sys.gauge[0]][0] < 0)
      for (auto& e : rp.normals) e = detail::apply_diag_flip(e, 0);
    if (rp.normals[sys.gauge[1]][1] < 0)
      for (auto& e : rp.normals) e = detail::apply_diag_flip(e, 1);
    if (rp.normals[sys.gauge[2]][2] < 0)
      for (auto& e : rp.normals) e = detail::apply_diag_flip(e, 2);

    // Vertices as intersections of their three face planes.
    bool bad = false;
    rp.vertex_pos.resize(nv);
    for (int v = 0; v < nv && !bad; ++v) {
      const auto& t = p.vertices()[v];
      Eigen::Matrix<double, 3, 4> m;
      for (int r = 0; r < 3; ++r) {
        const LorentzVec& e = rp.normals[t[r]];
        m(r, 0) = e[0];
        m(r, 1) = e[1];
        m(r, 2) = e[2];
        m(r, 3) = -e[3];
      }
      Eigen::FullPivLU<Eigen::Matrix<double, 3, 4>> lu(m);
      if (lu.dimensionOfKernel() != 1) {
        bad = true;
        break;
      }
      Eigen::Vector4d kv = lu.kernel().col(0);
      LorentzVec w{{kv[0], kv[1], kv[2], kv[3]}};
      if (!is_timelike(w, 1e-12 * kv.squaredNorm())) {
        bad = true;
        break;
      }
      rp.vertex_pos[v] = normalize_timelike(w);
    }
    if (bad) {
      last_reject = "degenerate or non-timelike vertex";
      continue;
    }

    // Outward orientation: polyhedron points satisfy <v, e> <= 0.
    int pos = 0, neg = 0;
    for (int v = 0; v < nv; ++v) {
      const auto& t = p.vertices()[v];
      for (int i = 0; i < nf; ++i) {
        if (i == t[0] || i == t[1] || i == t[2]) continue;
        double s = mdot(rp.vertex_pos[v], rp.normals[i]);
        if (s > 1e-9) ++pos;
        if (s < -1e-9) ++neg;
      }
    }
    if (pos > 0 && neg > 0) {
      last_reject = "vertices not on a consistent side of all faces";
      continue;
    }
    if (pos > 0)
      for (auto& e : rp.normals) e = -e;

    rp.gram.resize(nf, nf);
    for (int i = 0; i < nf; ++i)
      for (int j = 0; j < nf; ++j) rp.gram(i, j) = mdot(rp.normals[i], rp.normals[j]);

    // Strict margins: solutions on the boundary of the angle conditions
    // (faces tangent at infinity, edges collapsed to points) are not compact.
    bool separated = true;
    for (int i = 0; i < nf && separated; ++i)
      for (int j = i + 1; j < nf; ++j)
        if (!p.adjacent(i, j) && rp.gram(i, j) >= -1.0 - 1e-10) {
          separated = false;
          break;
        }
    if (!separated) {
      last_reject = "non-adjacent faces are not ultraparallel";
      continue;
    }
    bool collapsed = false;
    for (int e = 0; e < p.num_edges() && !collapsed; ++e) {
      auto ends = p.edge_endpoints(e);
      if (-mdot(rp.vertex_pos[ends[0]], rp.vertex_pos[ends[1]]) - 1.0 < 1e-10)
        collapsed = true;
    }
    if (collapsed) {
      last_reject = "an edge has collapsed to a point";
      continue;
    }

    double res2 = 0;
    for (int i = 0; i < nf; ++i) res2 = std::max(res2, std::abs(rp.gram(i, i) - 1.0));
    for (const PolyEdge& e : p.edges())
      res2 = std::max(res2, std::abs(rp.gram(e.f1, e.f2) +
                                     std::cos(3.14159265358979323846 / e.angle_sub)));
    rp.residual_inf = res2;
    return rp;
  }

  std::ostringstream os;
  os << "realization failed after " << max_restarts
     << " restarts (best residual " << best_residual << "; " << last_reject << ")";
  throw realization_failure(os.str());
}

struct RealizationReport {
  double max_unit_err = 0;
  double max_angle_err = 0;
  double min_nonadjacent_gap = 0;  // min over non-adjacent pairs of (-gram - 1)
  double max_vertex_side = 0;      // max over (vertex, non-incident face) of <v, e>
  int positive_eigs = 0;
  int negative_eigs = 0;
  double near_zero_eig_max = 0;    // largest |eig| outside the top four
};

inline RealizationReport validate_realization(const RealizedPolyhedron& rp) {
  const AngledPolyhedron& p = rp.poly;
  int nf = p.num_faces();
  RealizationReport rep;
  for (int i = 0; i < nf; ++i)
    rep.max_unit_err = std::max(rep.max_unit_err, std::abs(rp.gram(i, i) - 1.0));
  for (const PolyEdge& e : p.edges())
    rep.max_angle_err =
        std::max(rep.max_angle_err, std::abs(rp.gram(e.f1, e.f2) +
                                             std::cos(3.14159265358979323846 / e.angle_sub)));
  rep.min_nonadjacent_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < nf; ++i)
    for (int j = i + 1; j < nf; ++j)
      if (!p.adjacent(i, j))
        rep.min_nonadjacent_gap = std::min(rep.min_nonadjacent_gap, -rp.gram(i, j) - 1.0);

  rep.max_vertex_side = -std::numeric_limits<double>::infinity();
  for (int v = 0; v < p.num_vertices(); ++v) {
    const auto& t = p.vertices()[v];
    for (int i = 0; i < nf; ++i) {
      if (i == t[0] || i == t[1] || i == t[2]) continue;
      rep.max_vertex_side =
          std::max(rep.max_vertex_side, mdot(rp.vertex_pos[v], rp.normals[i]));
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rp.gram);
  std::vector<double> eigs(es.eigenvalues().data(), es.eigenvalues().data() + nf);
  std::sort(eigs.begin(), eigs.end(),
            [](double a, double b) { return std::abs(a) > std::abs(b); });
  for (int i = 0; i < 4 && i < nf; ++i) {
    if (eigs[i] > 0) ++rep.positive_eigs;
    if (eigs[i] < 0) ++rep.negative_eigs;
  }
  for (int i = 4; i < nf; ++i)
    rep.near_zero_eig_max = std::max(rep.near_zero_eig_max, std::abs(eigs[i]));
  return rep;
}

// Distance between the (ultraparallel) planes of two non-adjacent faces.
inline double face_distance(const RealizedPolyhedron& rp, int i, int j) {
  if (i == j) throw std::domain_error("face_distance: identical faces");
  if (rp.poly.adjacent(i, j))
    throw std::domain_error("face_distance: faces are adjacent");
  double g = rp.gram(i, j);
  if (g >= -1.0) throw std::domain_error("face_distance: faces are not ultraparallel");
  return std::acosh(-g);
}

inline double edge_length(const RealizedPolyhedron& rp, int edge) {
  if (edge < 0 || edge >= rp.poly.num_edges())
    throw std::invalid_argument("edge_length: edge index out of range");
  auto ends = rp.poly.edge_endpoints(edge);
  double c = -mdot(rp.vertex_pos[ends[0]], rp.vertex_pos[ends[1]]);
  if (c < 1) c = 1;
  return std::acosh(c);
}

// Applies a Lorentz transformation (given as a 4x4 matrix preserving the
// form) to all normals and vertices; used to test isometry invariance.
inline RealizedPolyhedron transform_realization(const RealizedPolyhedron& rp,
                                                const Eigen::Matrix4d& m) {
  RealizedPolyhedron out = rp;
  auto apply = [&](const LorentzVec& v) {
    Eigen::Vector4d w = m * Eigen::Vector4d(v[0], v[1], v[2], v[3]);
    return LorentzVec{{w[0], w[1], w[2], w[3]}};
  };
  for (auto& e : out.normals) e = apply(e);
  for (auto& v : out.vertex_pos) {
    v = apply(v);
    if (v[3] < 0) v = -v;
  }
  for (int i = 0; i < rp.poly.num_faces(); ++i)
    for (int j = 0; j < rp.poly.num_faces(); ++j)
      out.gram(i, j) = mdot(out.normals[i], out.normals[j]);
  return out;
}

}  // namespace pmcert
