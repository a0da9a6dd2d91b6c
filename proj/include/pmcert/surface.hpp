#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmcert/complex2.hpp"
#include "pmcert/complex_cover.hpp"
#include "pmcert/voltage.hpp"

namespace pmcert {

// The k-holed sphere assembled from two right-angled 3k-gons. Hole j is a
// circle of four mirror arcs meeting at right angles at the two green
// corners cA_j and cB_j; between holes the polygons share the straight
// interior edges I_j. Corner/straight markings record which vertices carry
// polygon angle pi/2 and which are flat.
//
// vertices: p_j, q_j (straight), cA_j, cB_j (corners), j mod k
// interior: I_j = p_j -> q_j
// circle j: q_j -> cA_j -> p_{j+1} -> cB_j -> q_j
inline Complex2 boundary_surface(int k) {
  if (k < 2) throw std::invalid_argument("boundary_surface needs k >= 2");
  Complex2 c;
  Multigraph& g = c.skeleton;
  std::vector<int> p(k), q(k), cA(k), cB(k);
  for (int j = 0; j < k; ++j) p[j] = g.add_vertex("p" + std::to_string(j));
  for (int j = 0; j < k; ++j) q[j] = g.add_vertex("q" + std::to_string(j));
  for (int j = 0; j < k; ++j) cA[j] = g.add_vertex("cA" + std::to_string(j));
  for (int j = 0; j < k; ++j) cB[j] = g.add_vertex("cB" + std::to_string(j));

  std::vector<int> I(k), mA1(k), mA2(k), mB1(k), mB2(k);
  for (int j = 0; j < k; ++j) I[j] = g.add_edge(p[j], q[j], "I" + std::to_string(j));
  for (int j = 0; j < k; ++j) {
    mA1[j] = g.add_edge(q[j], cA[j], "mA1_" + std::to_string(j));
    mA2[j] = g.add_edge(cA[j], p[(j + 1) % k], "mA2_" + std::to_string(j));
    mB1[j] = g.add_edge(p[(j + 1) % k], cB[j], "mB1_" + std::to_string(j));
    mB2[j] = g.add_edge(cB[j], q[j], "mB2_" + std::to_string(j));
  }

  std::vector<EdgeRef> faceA;
  for (int j = 0; j < k; ++j) {
    faceA.push_back(EdgeRef{I[j], false});
    faceA.push_back(EdgeRef{mA1[j], false});
    faceA.push_back(EdgeRef{mA2[j], false});
  }
  c.add_face(std::move(faceA));

  std::vector<EdgeRef> faceB;
  for (int j = k - 1; j >= 0; --j) {
    faceB.push_back(EdgeRef{I[j], true});
    int jm = (j + k - 1) % k;
    faceB.push_back(EdgeRef{mB1[jm], false});
    faceB.push_back(EdgeRef{mB2[jm], false});
  }
  c.add_face(std::move(faceB));

  for (int j = 0; j < k; ++j) {
    c.boundaries["circle" + std::to_string(j)] = {mA1[j], mA2[j], mB1[j], mB2[j]};
    c.interior_edges.insert(I[j]);
    c.mirror_edges.insert({mA1[j], mA2[j], mB1[j], mB2[j]});
    c.corner_vertices.insert(cA[j]);
    c.corner_vertices.insert(cB[j]);
    c.straight_vertices.insert(p[j]);
    c.straight_vertices.insert(q[j]);
  }
  validate_complex(c);
  return c;
}

// One dual vertex per face, one dual edge per interior edge. Every interior
// edge must appear on exactly two face sides (counting multiplicity).
inline Multigraph surface_dual_graph(const Complex2& c) {
  Multigraph dual;
  for (const Face& f : c.faces) dual.add_vertex("face" + std::to_string(f.id));
  for (int e : c.interior_edges) {
    std::vector<int> touching;
    for (const Face& f : c.faces)
      for (const EdgeRef& r : f.boundary)
        if (r.edge == e) touching.push_back(f.id);
    if (touching.size() != 2)
      throw std::invalid_argument("interior edge not shared by exactly two face sides");
    dual.add_edge(touching[0], touching[1], c.skeleton.edge(e).label);
  }
  return dual;
}

// Pullback of theta-graph voltages to the k-holed sphere: interior edge j
// carries nu_j, the first mirror arc behind it carries nu_j^{-1}, the arc
// into the next interior edge carries nu_{j+1}, and the remaining arcs are
// trivial. Both polygon holonomies then cancel period by period, so the
// assignment always admits a derived cover.
inline ComplexVoltage surface_pullback_voltages(const VoltageAssignment& nu) {
  int k = nu.base.num_edges();
  if (k < 2 || nu.base.num_vertices() != 2)
    throw std::invalid_argument("surface pullback expects voltages on a theta graph");
  ComplexVoltage cv;
  cv.base = boundary_surface(k);
  cv.group = nu.group;
  const FiniteGroup& g = *nu.group;
  for (int j = 0; j < k; ++j) {
    int w = nu.voltage_of(j);
    int wn = nu.voltage_of((j + 1) % k);
    cv.voltage[j] = w;                      // I_j
    cv.voltage[k + 4 * j + 0] = g.inv(w);   // mA1_j
    cv.voltage[k + 4 * j + 1] = g.identity();
    cv.voltage[k + 4 * j + 2] = wn;         // mB1_j
    cv.voltage[k + 4 * j + 3] = g.identity();
  }
  return cv;
}

// Derived cover of the k-holed sphere along the pulled-back voltages. Its
// dual graph is the theta-graph cover of nu, and its circles lift to the
// boundary elevations.
inline ComplexCover theta_cover_surface(const VoltageAssignment& nu) {
  return cover_complex(surface_pullback_voltages(nu));
}

}  // namespace pmcert
