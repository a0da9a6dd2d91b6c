#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace pmcert {

struct Edge {
  int id = -1;
  int u = -1;
  int v = -1;
  std::string label;
};

// Undirected multigraph. Loops and parallel edges are allowed; vertices are
// 0..n-1 and edge ids equal insertion order. Orientation of an edge (u before
// v) is remembered so that voltage assignments can refer to it.
class Multigraph {
 public:
  struct Inc {
    int edge;
    int to;
  };

  Multigraph() = default;
  explicit Multigraph(int n) {
    for (int i = 0; i < n; ++i) add_vertex();
  }

  int add_vertex(std::string name = "") {
    int v = static_cast<int>(names_.size());
    if (name.empty()) name = "v" + std::to_string(v);
    names_.push_back(std::move(name));
    adj_.emplace_back();
    return v;
  }

  int add_edge(int u, int v, std::string label = "") {
    check_vertex(u);
    check_vertex(v);
    int id = static_cast<int>(edges_.size());
    edges_.push_back(Edge{id, u, v, std::move(label)});
    adj_[u].push_back(Inc{id, v});
    adj_[v].push_back(Inc{id, u});  // a loop is listed twice at its vertex
    return id;
  }

  int num_vertices() const { return static_cast<int>(names_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int id) const { return edges_.at(id); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& vertex_name(int v) const { return names_.at(v); }
  void set_vertex_name(int v, std::string name) { names_.at(v) = std::move(name); }
  const std::vector<Inc>& incident(int v) const { return adj_.at(v); }

  // Loops contribute 2, matching the usual multigraph convention.
  int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }

  bool is_regular() const {
    if (num_vertices() == 0) return true;
    int d = degree(0);
    for (int v = 1; v < num_vertices(); ++v)
      if (degree(v) != d) return false;
    return true;
  }

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= num_vertices()) throw std::out_of_range("bad vertex id");
  }

  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Inc>> adj_;
};

inline int num_components(const Multigraph& g) {
  int n = g.num_vertices();
  std::vector<char> seen(n, 0);
  int comps = 0;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++comps;
    std::queue<int> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (const auto& inc : g.incident(x))
        if (!seen[inc.to]) {
          seen[inc.to] = 1;
          q.push(inc.to);
        }
    }
  }
  return comps;
}

inline bool is_connected(const Multigraph& g) {
  return g.num_vertices() == 0 || num_components(g) == 1;
}

inline bool is_bipartite(const Multigraph& g) {
  int n = g.num_vertices();
  std::vector<int> color(n, -1);
  for (int s = 0; s < n; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (const auto& inc : g.incident(x)) {
        if (inc.to == x) return false;  // loop
        if (color[inc.to] == -1) {
          color[inc.to] = color[x] ^ 1;
          q.push(inc.to);
        } else if (color[inc.to] == color[x]) {
          return false;
        }
      }
    }
  }
  return true;
}

// Length of a shortest cycle, or nullopt for a forest. BFS from every root;
// the tree edge used to enter a vertex is excluded by id, so parallel edges
// (length-2 cycles) and loops (length 1) are found without special cases.
inline std::optional<int> girth(const Multigraph& g) {
  int n = g.num_vertices();
  int best = std::numeric_limits<int>::max();
  std::vector<int> dist(n), via(n);
  for (int root = 0; root < n && best > 1; ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(via.begin(), via.end(), -1);
    std::queue<int> q;
    dist[root] = 0;
    q.push(root);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      if (2 * dist[x] + 1 >= best) continue;  // cannot improve from here
      for (const auto& inc : g.incident(x)) {
        if (inc.edge == via[x]) continue;
        int y = inc.to;
        if (dist[y] == -1) {
          dist[y] = dist[x] + 1;
          via[y] = inc.edge;
          q.push(y);
        } else {
          best = std::min(best, dist[x] + dist[y] + 1);
        }
      }
    }
  }
  if (best == std::numeric_limits<int>::max()) return std::nullopt;
  return best;
}

inline Multigraph theta_graph(int k) {
  if (k < 2) throw std::invalid_argument("theta_graph needs k >= 2");
  Multigraph g;
  g.add_vertex("a");
  g.add_vertex("b");
  for (int i = 0; i < k; ++i) g.add_edge(0, 1, "e" + std::to_string(i));
  return g;
}

inline Multigraph cycle_graph(int n) {
  if (n < 1) throw std::invalid_argument("cycle_graph needs n >= 1");
  Multigraph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

inline Multigraph complete_graph(int n) {
  Multigraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

inline Multigraph complete_bipartite(int m, int n) {
  Multigraph g(m + n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) g.add_edge(i, m + j);
  return g;
}

}  // namespace pmcert
