#pragma once

#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "pmcert/complex2.hpp"
#include "pmcert/groups.hpp"
#include "pmcert/voltage.hpp"

namespace pmcert {

// Voltage assignment on the edges of a 2-complex. Edges without an explicit
// voltage carry the identity.
struct ComplexVoltage {
  Complex2 base;
  GroupPtr group;
  std::map<int, int> voltage;

  int voltage_of(int edge) const {
    auto it = voltage.find(edge);
    return it == voltage.end() ? group->identity() : it->second;
  }
};

// Product of the voltages along the boundary walk of a face, inverting
// reversed sides.
inline int face_holonomy(const ComplexVoltage& cv, const Face& f) {
  int h = cv.group->identity();
  for (const EdgeRef& r : f.boundary) {
    int w = cv.voltage_of(r.edge);
    h = cv.group->mul(h, r.rev ? cv.group->inv(w) : w);
  }
  return h;
}

// The two-coordinate assignment on a truncated turnover built from one
// voltage list: band j of P1 carries (phi_j, 1), band j of P2 carries
// (1, phi_j), band j of P3 carries (phi_j^{-1}, phi_j^{-1}), where
// phi_j = nu_j * nu_last^{-1}. Spine edges carry the identity, and every
// hexagon then has trivial holonomy by construction.
inline ComplexVoltage phi_voltages(const VoltageAssignment& nu) {
  int k = nu.base.num_edges();
  if (k < 2 || nu.base.num_vertices() != 2)
    throw std::invalid_argument("phi_voltages expects voltages on a theta graph");
  const FiniteGroup& q = *nu.group;
  auto prod = std::make_shared<ProductGroup>(nu.group, nu.group);

  ComplexVoltage cv;
  cv.base = truncated_turnover(k);
  cv.group = prod;
  int last_inv = q.inv(nu.voltage_of(k - 1));
  for (int j = 0; j < k; ++j) {
    int phi = q.mul(nu.voltage_of(j), last_inv);
    int phi_inv = q.inv(phi);
    cv.voltage[cv.base.boundaries.at("P1")[j]] = prod->pack(phi, q.identity());
    cv.voltage[cv.base.boundaries.at("P2")[j]] = prod->pack(q.identity(), phi);
    cv.voltage[cv.base.boundaries.at("P3")[j]] = prod->pack(phi_inv, phi_inv);
  }
  return cv;
}

struct ComplexCover {
  Complex2 total;
  CoveringMap skeleton;         // total skeleton -> base skeleton
  std::vector<int> face_map;    // total face -> base face
  std::vector<int> sheets;      // sheet index -> group element
};

// Derived cover of a complex along its voltages. Sheets are indexed by the
// subgroup generated by the voltages; every face must have trivial holonomy
// so that its lifts close up sheet by sheet. Labeled boundaries split into
// elevations labeled "<label>@<n>", one per connected component of the
// lifted subgraph.
inline ComplexCover cover_complex(const ComplexVoltage& cv) {
  validate_complex(cv.base);
  for (const Face& f : cv.base.faces)
    if (face_holonomy(cv, f) != cv.group->identity())
      throw std::invalid_argument("face holonomy is nontrivial; cover would not close");

  std::vector<int> gens;
  for (const auto& [e, w] : cv.voltage) gens.push_back(w);
  ComplexCover out;
  out.sheets = subgroup_closure(*cv.group, gens);
  int ns = static_cast<int>(out.sheets.size());
  std::unordered_map<int, int> sheet_of;  // group element -> sheet index
  for (int s = 0; s < ns; ++s) sheet_of.emplace(out.sheets[s], s);

  const Multigraph& bg = cv.base.skeleton;
  Multigraph& tg = out.total.skeleton;
  out.skeleton.base = bg;
  for (int v = 0; v < bg.num_vertices(); ++v)
    for (int s = 0; s < ns; ++s) {
      tg.add_vertex(bg.vertex_name(v) + "@" + std::to_string(s));
      out.skeleton.vertex_map.push_back(v);
    }
  auto lifted_vertex = [&](int v, int s) { return v * ns + s; };
  // edge lift ids are edge * ns + sheet of the tail
  for (const Edge& e : bg.edges())
    for (int s = 0; s < ns; ++s) {
      int w = cv.voltage_of(e.id);
      int to = sheet_of.at(cv.group->mul(out.sheets[s], w));
      tg.add_edge(lifted_vertex(e.u, s), lifted_vertex(e.v, to),
                  e.label + "@" + std::to_string(s));
      out.skeleton.edge_map.push_back(e.id);
    }
  auto lifted_edge = [&](int e, int s) { return e * ns + s; };

  // lift each face once per sheet, tracking the running sheet along the walk
  for (const Face& f : cv.base.faces) {
    for (int s0 = 0; s0 < ns; ++s0) {
      std::vector<EdgeRef> walk;
      int s = s0;
      for (const EdgeRef& r : f.boundary) {
        int w = cv.voltage_of(r.edge);
        if (!r.rev) {
          walk.push_back(EdgeRef{lifted_edge(r.edge, s), false});
          s = sheet_of.at(cv.group->mul(out.sheets[s], w));
        } else {
          int back = sheet_of.at(cv.group->mul(out.sheets[s], cv.group->inv(w)));
          walk.push_back(EdgeRef{lifted_edge(r.edge, back), true});
          s = back;
        }
      }
      out.total.add_face(std::move(walk));
      out.face_map.push_back(f.id);
    }
  }

  // cone points lift fiberwise
  for (int v : cv.base.cone_vertices)
    for (int s = 0; s < ns; ++s) out.total.cone_vertices.insert(lifted_vertex(v, s));
  for (int e : cv.base.interior_edges)
    for (int s = 0; s < ns; ++s) out.total.interior_edges.insert(lifted_edge(e, s));
  for (int e : cv.base.mirror_edges)
    for (int s = 0; s < ns; ++s) out.total.mirror_edges.insert(lifted_edge(e, s));
  for (int v : cv.base.corner_vertices)
    for (int s = 0; s < ns; ++s) out.total.corner_vertices.insert(lifted_vertex(v, s));
  for (int v : cv.base.straight_vertices)
    for (int s = 0; s < ns; ++s) out.total.straight_vertices.insert(lifted_vertex(v, s));

  // split each boundary label into elevations (components of the lift)
  for (const auto& [label, edges] : cv.base.boundaries) {
    // union-find over lifted vertices touched by this label
    std::map<int, int> parent;
    std::function<int(int)> find = [&](int x) {
      int r = x;
      while (parent[r] != r) r = parent[r];
      while (parent[x] != r) {
        int nx = parent[x];
        parent[x] = r;
        x = nx;
      }
      return r;
    };
    auto ensure = [&](int x) {
      if (!parent.count(x)) parent[x] = x;
    };
    std::vector<int> lifted;
    for (int e : edges)
      for (int s = 0; s < ns; ++s) {
        int le = lifted_edge(e, s);
        lifted.push_back(le);
        const Edge& ed = tg.edge(le);
        ensure(ed.u);
        ensure(ed.v);
        parent[find(ed.u)] = find(ed.v);
      }
    std::map<int, int> comp_index;  // root vertex -> elevation number
    for (int le : lifted) {
      int root = find(tg.edge(le).u);
      auto [it, fresh] = comp_index.emplace(root, static_cast<int>(comp_index.size()));
      out.total.boundaries[label + "@" + std::to_string(it->second)].push_back(le);
    }
  }

  out.skeleton.total = out.total.skeleton;
  validate_complex(out.total);
  return out;
}

}  // namespace pmcert
