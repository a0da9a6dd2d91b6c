#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace pmcert {

struct andreev_violation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct realization_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PolyEdge {
  int f1 = -1, f2 = -1;
  // Dihedral angle pi/angle_sub; unlabeled edges carry angle_sub = 2.
  int angle_sub = 2;
};

// A combinatorial polyhedron with dihedral angles prescribed on its edges.
// Vertices are trivalent and derived from the face adjacency structure.
class AngledPolyhedron {
 public:
  AngledPolyhedron(std::vector<std::string> face_names, std::vector<PolyEdge> edges)
      : names_(std::move(face_names)), edges_(std::move(edges)) {
    validate_structure();
    derive_vertices();
  }

  int num_faces() const { return static_cast<int>(names_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  const std::vector<std::string>& face_names() const { return names_; }
  const std::vector<PolyEdge>& edges() const { return edges_; }
  // Each vertex is the sorted triple of the faces meeting there.
  const std::vector<std::array<int, 3>>& vertices() const { return vertices_; }

  bool adjacent(int i, int j) const {
    return edge_index(i, j) >= 0;
  }

  int edge_index(int i, int j) const {
    auto it = edge_lookup_.find(key(i, j));
    return it == edge_lookup_.end() ? -1 : it->second;
  }

  double dihedral(int i, int j) const {
    int e = edge_index(i, j);
    if (e < 0) throw std::invalid_argument("dihedral: faces are not adjacent");
    return 3.14159265358979323846 / edges_[e].angle_sub;
  }

  int face_id(const std::string& name) const {
    for (int i = 0; i < num_faces(); ++i)
      if (names_[i] == name) return i;
    throw std::invalid_argument("unknown face name: " + name);
  }

  // The two vertices at the ends of an edge, in vertex-list indices.
  std::array<int, 2> edge_endpoints(int e) const {
    std::array<int, 2> out{-1, -1};
    int found = 0;
    for (int v = 0; v < num_vertices(); ++v) {
      const auto& t = vertices_[v];
      bool has1 = t[0] == edges_[e].f1 || t[1] == edges_[e].f1 || t[2] == edges_[e].f1;
      bool has2 = t[0] == edges_[e].f2 || t[1] == edges_[e].f2 || t[2] == edges_[e].f2;
      if (has1 && has2) {
        if (found == 2) throw std::logic_error("edge lies on more than two vertices");
        out[found++] = v;
      }
    }
    if (found != 2) throw std::logic_error("edge does not lie on exactly two vertices");
    return out;
  }

  // Vertex angle sums and prismatic 3-circuit tests. Throws andreev_violation
  // naming the offending vertex or circuit.
  void andreev_precheck() const {
    const double pi = 3.14159265358979323846;
    for (const auto& t : vertices_) {
      double s = dihedral(t[0], t[1]) + dihedral(t[0], t[2]) + dihedral(t[1], t[2]);
      if (!(s > pi + 1e-12)) {
        std::ostringstream os;
        os << "vertex (" << names_[t[0]] << ", " << names_[t[1]] << ", " << names_[t[2]]
           << ") has angle sum " << s << " which is not greater than pi";
        throw andreev_violation(os.str());
      }
    }
    for (const auto& t : prismatic_3circuits()) {
      double s = dihedral(t[0], t[1]) + dihedral(t[0], t[2]) + dihedral(t[1], t[2]);
      if (!(s < pi - 1e-12)) {
        std::ostringstream os;
        os << "prismatic 3-circuit (" << names_[t[0]] << ", " << names_[t[1]] << ", "
           << names_[t[2]] << ") has angle sum " << s << " which is not less than pi";
        throw andreev_violation(os.str());
      }
    }
  }

  // Mutually adjacent face triples that do not bound a vertex.
  std::vector<std::array<int, 3>> prismatic_3circuits() const {
    std::vector<std::array<int, 3>> out;
    for (const auto& t : cliques_)
      if (!std::binary_search(vertices_.begin(), vertices_.end(), t)) out.push_back(t);
    return out;
  }

  // Cyclic order of the vertices around face f (consecutive ones share an
  // edge of f).
  std::vector<int> face_vertex_cycle(int f) const {
    std::vector<int> vs;
    for (int v = 0; v < num_vertices(); ++v) {
      const auto& t = vertices_[v];
      if (t[0] == f || t[1] == f || t[2] == f) vs.push_back(v);
    }
    if (vs.size() < 3) throw std::logic_error("face has fewer than 3 vertices");
    auto shares_face_edge = [&](int a, int b) {
      int common = 0;
      for (int x : vertices_[a])
        for (int y : vertices_[b])
          if (x == y && x != f) ++common;
      return common == 1;
    };
    std::vector<int> cycle{vs[0]};
    std::set<int> used{vs[0]};
    while (cycle.size() < vs.size()) {
      bool advanced = false;
      for (int cand : vs) {
        if (used.count(cand)) continue;
        if (shares_face_edge(cycle.back(), cand)) {
          cycle.push_back(cand);
          used.insert(cand);
          advanced = true;
          break;
        }
      }
      if (!advanced) throw std::logic_error("face boundary is not a single cycle");
    }
    if (!shares_face_edge(cycle.back(), cycle.front()))
      throw std::logic_error("face boundary is not a single cycle");
    return cycle;
  }

 private:
  static long long key(int i, int j) {
    if (i > j) std::swap(i, j);
    return static_cast<long long>(i) * 1000000 + j;
  }

  void validate_structure() {
    int f = num_faces();
    if (f < 4) throw std::invalid_argument("polyhedron needs at least 4 faces");
    std::set<std::string> seen_names(names_.begin(), names_.end());
    if (static_cast<int>(seen_names.size()) != f)
      throw std::invalid_argument("duplicate face names");
    for (const PolyEdge& e : edges_) {
      if (e.f1 < 0 || e.f1 >= f || e.f2 < 0 || e.f2 >= f || e.f1 == e.f2)
        throw std::invalid_argument("edge endpoints out of range");
      if (e.angle_sub < 2) throw std::invalid_argument("angle submultiple must be at least 2");
      if (edge_lookup_.count(key(e.f1, e.f2)))
        throw std::invalid_argument("duplicate edge");
      edge_lookup_[key(e.f1, e.f2)] =
          static_cast<int>(&e - edges_.data());
    }
    std::vector<int> deg(f, 0);
    for (const PolyEdge& e : edges_) {
      ++deg[e.f1];
      ++deg[e.f2];
    }
    for (int i = 0; i < f; ++i)
      if (deg[i] < 3)
        throw std::invalid_argument("face " + names_[i] + " has fewer than 3 neighbors");
  }

  // Vertices are the face triples of the unique selection of 3-cliques that
  // covers every edge exactly twice (each polyhedron edge has two ends).
  void derive_vertices() {
    int f = num_faces();
    cliques_.clear();
    for (int a = 0; a < f; ++a)
      for (int b = a + 1; b < f; ++b) {
        if (!adjacent(a, b)) continue;
        for (int c = b + 1; c < f; ++c)
          if (adjacent(a, c) && adjacent(b, c)) cliques_.push_back({a, b, c});
      }
    std::sort(cliques_.begin(), cliques_.end());

    int target = 2 - f + num_edges();
    if (target < 4) throw std::invalid_argument("edge/face counts violate Euler's formula");

    int ne = num_edges();
    std::vector<std::vector<int>> cliques_of_edge(ne);
    for (int ci = 0; ci < static_cast<int>(cliques_.size()); ++ci) {
      const auto& t = cliques_[ci];
      cliques_of_edge[edge_index(t[0], t[1])].push_back(ci);
      cliques_of_edge[edge_index(t[0], t[2])].push_back(ci);
      cliques_of_edge[edge_index(t[1], t[2])].push_back(ci);
    }

    std::vector<int> count(ne, 0);
    std::vector<char> chosen(cliques_.size(), 0);
    std::set<std::vector<int>> solutions;

    auto edges_of = [&](int ci) {
      const auto& t = cliques_[ci];
      return std::array<int, 3>{edge_index(t[0], t[1]), edge_index(t[0], t[2]),
                                edge_index(t[1], t[2])};
    };

    // Branches are ordered by clique index per edge so each selection is
    // enumerated once; distinct solutions still get collected.
    std::function<void(int, int)> rec = [&](int e, int min_clique) {
      if (solutions.size() > 1) return;
      while (e < ne && count[e] == 2) {
        ++e;
        min_clique = 0;
      }
      if (e == ne) {
        std::vector<int> sol;
        for (int ci = 0; ci < static_cast<int>(cliques_.size()); ++ci)
          if (chosen[ci]) sol.push_back(ci);
        if (static_cast<int>(sol.size()) == target) solutions.insert(sol);
        return;
      }
      for (int ci : cliques_of_edge[e]) {
        if (ci < min_clique || chosen[ci]) continue;
        auto es = edges_of(ci);
        bool ok = true;
        for (int x : es)
          if (count[x] == 2) ok = false;
        if (!ok) continue;
        chosen[ci] = 1;
        for (int x : es) ++count[x];
        rec(e, ci + 1);
        chosen[ci] = 0;
        for (int x : es) --count[x];
      }
    };
    rec(0, 0);

    if (solutions.empty())
      throw std::invalid_argument("face adjacency does not define a trivalent polyhedron");
    if (solutions.size() > 1)
      throw std::invalid_argument("ambiguous vertex structure");
    vertices_.clear();
    for (int ci : *solutions.begin()) vertices_.push_back(cliques_[ci]);
    std::sort(vertices_.begin(), vertices_.end());
  }

  std::vector<std::string> names_;
  std::vector<PolyEdge> edges_;
  std::map<long long, int> edge_lookup_;
  std::vector<std::array<int, 3>> cliques_;
  std::vector<std::array<int, 3>> vertices_;
};

// An AngledPolyhedron together with the distinguished data used downstream.
struct MarkedPolyhedron {
  AngledPolyhedron poly;
  int boundary_face = -1;  // F_B: the unmirrored face
  int sigma_face = -1;     // F_Sigma: the face carrying the surface relator
  int bold_edge = -1;      // edge of F_B whose lifts run along the boundary circles
};

inline MarkedPolyhedron polyhedron_from_json(const nlohmann::json& j, int k) {
  if (k < 3) throw std::invalid_argument("angle substitution needs k >= 3");
  std::vector<std::string> names;
  std::map<std::string, int> id_of;
  for (const auto& fj : j.at("faces")) {
    std::string name = fj.at("name").get<std::string>();
    id_of[name] = static_cast<int>(names.size());
    names.push_back(name);
  }
  std::vector<PolyEdge> edges;
  for (const auto& ej : j.at("edges")) {
    PolyEdge e;
    e.f1 = id_of.at(ej.at("f1").get<std::string>());
    e.f2 = id_of.at(ej.at("f2").get<std::string>());
    if (ej.contains("angle_sub")) {
      const auto& a = ej.at("angle_sub");
      if (a.is_string()) {
        if (a.get<std::string>() != "k")
          throw std::invalid_argument("angle_sub string must be \"k\"");
        e.angle_sub = k;
      } else {
        e.angle_sub = a.get<int>();
      }
    }
    edges.push_back(e);
  }
  MarkedPolyhedron mp{AngledPolyhedron(names, edges), -1, -1, -1};
  if (j.contains("boundary_face"))
    mp.boundary_face = mp.poly.face_id(j.at("boundary_face").get<std::string>());
  if (j.contains("sigma_face"))
    mp.sigma_face = mp.poly.face_id(j.at("sigma_face").get<std::string>());
  if (j.contains("bold_edge")) {
    int a = mp.poly.face_id(j.at("bold_edge").at(0).get<std::string>());
    int b = mp.poly.face_id(j.at("bold_edge").at(1).get<std::string>());
    mp.bold_edge = mp.poly.edge_index(a, b);
    if (mp.bold_edge < 0) throw std::invalid_argument("bold_edge is not an edge");
  }
  return mp;
}

// The angled pentagonal prism B underlying the construction: dihedral angle
// placement is read from the bundled data file, with "k" substituted.
inline MarkedPolyhedron prism_combinatorics(int k) {
  if (k < 7) throw std::invalid_argument("prism_combinatorics needs k >= 7");
  static const std::string path = std::string(PMCERT_DATA_DIR) + "/prism_b.json";
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  MarkedPolyhedron mp = polyhedron_from_json(j, k);
  if (mp.boundary_face < 0 || mp.sigma_face < 0 || mp.bold_edge < 0)
    throw std::runtime_error("prism data file is missing marked faces or bold edge");
  return mp;
}

}  // namespace pmcert
