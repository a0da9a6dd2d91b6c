#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmcert/graph.hpp"

namespace pmcert {

// Side of an edge inside a face walk: forward means tail -> head in the
// orientation the edge was inserted with.
struct EdgeRef {
  int edge = -1;
  bool rev = false;
};

struct Face {
  int id = -1;
  std::vector<EdgeRef> boundary;  // closed walk in the skeleton
};

// A 2-complex whose faces are closed edge walks. Vertex/edge subsets carry
// the decorations used downstream: labeled boundary subgraphs, cone points,
// and the mirror structure of reflection surfaces.
struct Complex2 {
  Multigraph skeleton;
  std::vector<Face> faces;
  std::set<int> cone_vertices;
  std::map<std::string, std::vector<int>> boundaries;  // label -> edge ids
  std::set<int> interior_edges;
  std::set<int> mirror_edges;
  std::set<int> corner_vertices;
  std::set<int> straight_vertices;

  int add_face(std::vector<EdgeRef> walk) {
    int id = static_cast<int>(faces.size());
    faces.push_back(Face{id, std::move(walk)});
    return id;
  }
};

inline int ref_tail(const Complex2& c, const EdgeRef& r) {
  const Edge& e = c.skeleton.edge(r.edge);
  return r.rev ? e.v : e.u;
}

inline int ref_head(const Complex2& c, const EdgeRef& r) {
  const Edge& e = c.skeleton.edge(r.edge);
  return r.rev ? e.u : e.v;
}

// Structural sanity: every face is a nonempty closed walk, and every
// decoration refers to existing cells.
inline void validate_complex(const Complex2& c) {
  int nv = c.skeleton.num_vertices();
  int ne = c.skeleton.num_edges();
  for (const Face& f : c.faces) {
    if (f.boundary.empty()) throw std::invalid_argument("face with empty boundary");
    for (size_t t = 0; t < f.boundary.size(); ++t) {
      const EdgeRef& r = f.boundary[t];
      if (r.edge < 0 || r.edge >= ne) throw std::invalid_argument("face references missing edge");
      const EdgeRef& s = f.boundary[(t + 1) % f.boundary.size()];
      if (ref_head(c, r) != ref_tail(c, s))
        throw std::invalid_argument("face walk is not closed");
    }
  }
  auto check_edge_set = [&](const std::set<int>& s) {
    for (int e : s)
      if (e < 0 || e >= ne) throw std::invalid_argument("decoration references missing edge");
  };
  auto check_vertex_set = [&](const std::set<int>& s) {
    for (int v : s)
      if (v < 0 || v >= nv) throw std::invalid_argument("decoration references missing vertex");
  };
  for (const auto& [label, edges] : c.boundaries) {
    if (label.empty()) throw std::invalid_argument("empty boundary label");
    for (int e : edges)
      if (e < 0 || e >= ne) throw std::invalid_argument("boundary references missing edge");
  }
  check_edge_set(c.interior_edges);
  check_edge_set(c.mirror_edges);
  check_vertex_set(c.cone_vertices);
  check_vertex_set(c.corner_vertices);
  check_vertex_set(c.straight_vertices);
}

inline int euler_characteristic(const Complex2& c) {
  return c.skeleton.num_vertices() - c.skeleton.num_edges() +
         static_cast<int>(c.faces.size());
}

// Extracted labeled subgraph, keeping the correspondence with the ambient
// skeleton so covers and cones can refer back to it.
struct SubgraphView {
  Multigraph graph;
  std::vector<int> vertex_ids;  // subgraph vertex -> skeleton vertex
  std::vector<int> edge_ids;    // subgraph edge -> skeleton edge
};

inline SubgraphView boundary_subgraph(const Complex2& c, const std::string& label) {
  auto it = c.boundaries.find(label);
  if (it == c.boundaries.end()) throw std::invalid_argument("no boundary named " + label);
  SubgraphView view;
  std::map<int, int> vmap;
  auto local = [&](int v) {
    auto f = vmap.find(v);
    if (f != vmap.end()) return f->second;
    int idx = view.graph.add_vertex(c.skeleton.vertex_name(v));
    vmap.emplace(v, idx);
    view.vertex_ids.push_back(v);
    return idx;
  };
  for (int e : it->second) {
    const Edge& ed = c.skeleton.edge(e);
    view.graph.add_edge(local(ed.u), local(ed.v), ed.label);
    view.edge_ids.push_back(e);
  }
  return view;
}

// Link of a vertex: one link vertex per edge-end incident to v, one link edge
// per face corner at v. Loops at v contribute both of their ends.
inline Multigraph vertex_link(const Complex2& c, int v) {
  Multigraph link;
  std::map<std::pair<int, int>, int> end_index;  // (edge, end 0=tail 1=head)
  for (const Edge& e : c.skeleton.edges()) {
    if (e.u == v) {
      end_index[{e.id, 0}] =
          link.add_vertex(c.skeleton.edge(e.id).label + ":tail");
    }
    if (e.v == v) {
      end_index[{e.id, 1}] =
          link.add_vertex(c.skeleton.edge(e.id).label + ":head");
    }
  }
  for (const Face& f : c.faces) {
    size_t n = f.boundary.size();
    for (size_t t = 0; t < n; ++t) {
      const EdgeRef& in = f.boundary[t];
      const EdgeRef& out = f.boundary[(t + 1) % n];
      if (ref_head(c, in) != v) continue;
      // the incoming side arrives at v on its head end unless reversed
      int in_end = in.rev ? 0 : 1;
      int out_end = out.rev ? 1 : 0;
      link.add_edge(end_index.at({in.edge, in_end}), end_index.at({out.edge, out_end}));
    }
  }
  return link;
}

// Links of all cone vertices at once: one pass over edges and faces instead
// of a scan per vertex. Agrees with vertex_link on every cone vertex.
inline std::map<int, Multigraph> cone_links(const Complex2& c) {
  std::map<int, Multigraph> out;
  for (int v : c.cone_vertices) out.emplace(v, Multigraph{});
  std::map<std::pair<int, int>, int> end_index;  // (edge, end 0=tail 1=head)
  for (const Edge& e : c.skeleton.edges()) {
    if (auto it = out.find(e.u); it != out.end())
      end_index[{e.id, 0}] = it->second.add_vertex(e.label + ":tail");
    if (auto it = out.find(e.v); it != out.end())
      end_index[{e.id, 1}] = it->second.add_vertex(e.label + ":head");
  }
  for (const Face& f : c.faces) {
    size_t n = f.boundary.size();
    for (size_t t = 0; t < n; ++t) {
      const EdgeRef& in = f.boundary[t];
      int v = ref_head(c, in);
      auto it = out.find(v);
      if (it == out.end()) continue;
      const EdgeRef& next = f.boundary[(t + 1) % n];
      int in_end = in.rev ? 0 : 1;
      int out_end = next.rev ? 1 : 0;
      it->second.add_edge(end_index.at({in.edge, in_end}),
                          end_index.at({next.edge, out_end}));
    }
  }
  return out;
}

// Cones off every labeled boundary: one new apex per label, an edge from the
// apex to each subgraph vertex, and a triangle per subgraph edge. Labels must
// use pairwise disjoint vertex sets, else the cones would interact.
inline Complex2 cone_off(const Complex2& c) {
  validate_complex(c);
  {
    std::set<int> used_vertices;
    std::set<int> used_edges;
    for (const auto& [label, edges] : c.boundaries) {
      std::set<int> mine;
      for (int e : edges) {
        if (!used_edges.insert(e).second)
          throw std::invalid_argument("boundary edge in two labels");
        mine.insert(c.skeleton.edge(e).u);
        mine.insert(c.skeleton.edge(e).v);
      }
      for (int v : mine)
        if (!used_vertices.insert(v).second)
          throw std::invalid_argument("boundaries are not disjoint");
    }
  }
  Complex2 out = c;
  for (const auto& [label, edges] : c.boundaries) {
    int apex = out.skeleton.add_vertex("apex:" + label);
    out.cone_vertices.insert(apex);
    std::map<int, int> spoke;  // skeleton vertex -> apex edge
    std::set<int> verts;
    for (int e : edges) {
      verts.insert(c.skeleton.edge(e).u);
      verts.insert(c.skeleton.edge(e).v);
    }
    for (int v : verts)
      spoke[v] = out.skeleton.add_edge(apex, v, "cone:" + label + ":" + c.skeleton.vertex_name(v));
    for (int e : edges) {
      const Edge& ed = c.skeleton.edge(e);
      out.add_face({EdgeRef{spoke[ed.u], false}, EdgeRef{e, false}, EdgeRef{spoke[ed.v], true}});
    }
  }
  return out;
}

// Truncated building block: three spine edges a, b, c alternating with three
// k-edge bands, and k hexagonal faces running through all six in order. The
// three bands are the labeled boundaries P1, P2, P3.
inline Complex2 truncated_turnover(int k) {
  if (k < 2) throw std::invalid_argument("truncated_turnover needs k >= 2");
  Complex2 c;
  Multigraph& g = c.skeleton;
  int aB = g.add_vertex("aB"), aC = g.add_vertex("aC");
  int bC = g.add_vertex("bC"), bA = g.add_vertex("bA");
  int cA = g.add_vertex("cA"), cB = g.add_vertex("cB");

  int ea = g.add_edge(aB, aC, "a");
  std::vector<int> tC(k), tA(k), tB(k);
  for (int i = 0; i < k; ++i) tC[i] = g.add_edge(aC, bC, "tC" + std::to_string(i));
  int eb = g.add_edge(bC, bA, "b");
  for (int i = 0; i < k; ++i) tA[i] = g.add_edge(bA, cA, "tA" + std::to_string(i));
  int ec = g.add_edge(cA, cB, "c");
  for (int i = 0; i < k; ++i) tB[i] = g.add_edge(cB, aB, "tB" + std::to_string(i));

  for (int i = 0; i < k; ++i)
    c.add_face({EdgeRef{ea, false}, EdgeRef{tC[i], false}, EdgeRef{eb, false},
                EdgeRef{tA[i], false}, EdgeRef{ec, false}, EdgeRef{tB[i], false}});

  c.boundaries["P1"] = tB;
  c.boundaries["P2"] = tC;
  c.boundaries["P3"] = tA;
  c.interior_edges = {ea, eb, ec};
  validate_complex(c);
  return c;
}

// Coning all three bands of the truncated block yields the closed complex
// with three cone points.
inline Complex2 turnover(int k) { return cone_off(truncated_turnover(k)); }

// Homotopy model of the truncated block: the complete bipartite graph on the
// three spine edges versus the k bands.
inline Multigraph spine_graph(int k) { return complete_bipartite(3, k); }

}  // namespace pmcert
