#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmcert/graph.hpp"
#include "pmcert/groups.hpp"

namespace pmcert {

// A voltage on each base edge, read in the edge's stored orientation (u -> v).
// Traversing an edge against its orientation applies the inverse voltage.
struct VoltageAssignment {
  Multigraph base;
  GroupPtr group;
  std::map<int, int> voltage;  // edge id -> group element index

  int voltage_of(int edge_id) const {
    auto it = voltage.find(edge_id);
    if (it == voltage.end()) throw std::out_of_range("edge missing a voltage");
    return it->second;
  }
};

// A graph covering p : total -> base, with explicit vertex and edge maps.
struct CoveringMap {
  Multigraph total;
  Multigraph base;
  std::vector<int> vertex_map;  // per total vertex
  std::vector<int> edge_map;    // per total edge
};

// Checks the local-bijectivity property: the two ends of every total edge map
// onto the two ends of its image, and each total vertex's incident edge-ends
// biject with the ends at its image (loops counted once per end).
inline bool check_covering(const CoveringMap& c) {
  if (static_cast<int>(c.vertex_map.size()) != c.total.num_vertices()) return false;
  if (static_cast<int>(c.edge_map.size()) != c.total.num_edges()) return false;
  for (const Edge& e : c.total.edges()) {
    int b = c.edge_map[e.id];
    if (b < 0 || b >= c.base.num_edges()) return false;
    const Edge& be = c.base.edge(b);
    int pu = c.vertex_map[e.u], pv = c.vertex_map[e.v];
    bool straight = (pu == be.u && pv == be.v);
    bool flipped = (pu == be.v && pv == be.u);
    if (!straight && !flipped) return false;
  }
  for (int t = 0; t < c.total.num_vertices(); ++t) {
    std::map<int, int> ends;
    for (const auto& inc : c.total.incident(t)) ++ends[c.edge_map[inc.edge]];
    std::map<int, int> base_ends;
    for (const auto& inc : c.base.incident(c.vertex_map[t])) ++base_ends[inc.edge];
    if (ends != base_ends) return false;
  }
  return true;
}

// Derived cover of a voltage assignment. Fiber over v is {v} x G; the lift of
// edge u->v with voltage w at sheet x joins (u,x) to (v, x*w). Vertex ids are
// v*|G| + x and edge ids follow base edge order, so layouts are deterministic.
inline CoveringMap voltage_cover(const VoltageAssignment& va) {
  const FiniteGroup& g = *va.group;
  int n = g.size();
  CoveringMap c;
  c.base = va.base;
  for (int v = 0; v < va.base.num_vertices(); ++v)
    for (int x = 0; x < n; ++x)
      c.total.add_vertex(va.base.vertex_name(v) + "@" + std::to_string(x));
  for (const Edge& e : va.base.edges()) {
    int w = va.voltage_of(e.id);
    for (int x = 0; x < n; ++x) {
      c.total.add_edge(e.u * n + x, e.v * n + g.mul(x, w), e.label);
      c.edge_map.push_back(e.id);
    }
  }
  c.vertex_map.resize(c.total.num_vertices());
  for (int v = 0; v < va.base.num_vertices(); ++v)
    for (int x = 0; x < n; ++x) c.vertex_map[v * n + x] = v;
  return c;
}

inline bool voltages_generate(const VoltageAssignment& va) {
  std::vector<int> gens;
  for (const auto& [e, w] : va.voltage) gens.push_back(w);
  return static_cast<int>(subgroup_closure(*va.group, gens).size()) ==
         va.group->size();
}

}  // namespace pmcert
