#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "pmcert/graph.hpp"

namespace pmcert {

// Multigraph adjacency: parallel edges add multiplicity, a loop adds 2 to the
// diagonal, matching the degree convention.
inline Eigen::MatrixXd adjacency_matrix(const Multigraph& g) {
  int n = g.num_vertices();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) {
      a(e.u, e.u) += 2;
    } else {
      a(e.u, e.v) += 1;
      a(e.v, e.u) += 1;
    }
  }
  return a;
}

inline Eigen::MatrixXd normalized_laplacian(const Multigraph& g) {
  int n = g.num_vertices();
  Eigen::MatrixXd a = adjacency_matrix(g);
  Eigen::VectorXd dinv = Eigen::VectorXd::Zero(n);
  for (int v = 0; v < n; ++v) {
    if (g.degree(v) == 0)
      throw std::invalid_argument("normalized laplacian undefined with isolated vertex");
    dinv(v) = 1.0 / std::sqrt(static_cast<double>(g.degree(v)));
  }
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) l(i, j) = -a(i, j) * dinv(i) * dinv(j);
    l(i, i) += (g.degree(i) > 0) ? 1.0 : 0.0;
  }
  return l;
}

inline std::vector<double> symmetric_spectrum(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  std::vector<double> out(es.eigenvalues().data(),
                          es.eigenvalues().data() + es.eigenvalues().size());
  return out;  // ascending
}

inline std::vector<double> normalized_laplacian_eigs(const Multigraph& g) {
  return symmetric_spectrum(normalized_laplacian(g));
}

inline std::vector<double> adjacency_spectrum(const Multigraph& g) {
  return symmetric_spectrum(adjacency_matrix(g));
}

// Second-smallest eigenvalue of the normalized Laplacian.
inline double lambda1(const Multigraph& g) {
  auto s = normalized_laplacian_eigs(g);
  if (s.size() < 2) throw std::invalid_argument("graph too small for lambda1");
  return s[1];
}

// Strict spectral-gap test used by the certification ledger.
inline bool zuk_gap_check(const Multigraph& g) { return lambda1(g) > 0.5; }

}  // namespace pmcert
