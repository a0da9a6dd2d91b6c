#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pmcert/graph.hpp"
#include "pmcert/spectra.hpp"

namespace pmcert {
namespace detail {

// Multiplicity matrix with loops counted once on the diagonal.
inline std::vector<std::vector<int>> multiplicity_matrix(const Multigraph& g) {
  int n = g.num_vertices();
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  for (const Edge& e : g.edges()) {
    if (e.u == e.v)
      m[e.u][e.u] += 1;
    else {
      m[e.u][e.v] += 1;
      m[e.v][e.u] += 1;
    }
  }
  return m;
}

inline std::vector<long long> rounded_spectrum(const Multigraph& g) {
  std::vector<long long> out;
  for (double x : adjacency_spectrum(g))
    out.push_back(static_cast<long long>(llround(x * 1e6)));
  return out;
}

// One pass of color refinement: the new color of a vertex is its old color
// together with the multiset of (neighbor color, multiplicity) pairs. Colors
// are renumbered 0..c-1 in a canonical (sorted-signature) order so the two
// graphs stay comparable. Individualized vertices keep distinct colors via
// the pinned list.
struct Refiner {
  using Signature = std::pair<int, std::vector<std::pair<int, int>>>;

  // returns false if the color histograms of the two graphs diverge
  static bool refine(const Multigraph& a, const Multigraph& b,
                     std::vector<int>& ca, std::vector<int>& cb) {
    int n = a.num_vertices();
    for (int round = 0; round < n + 1; ++round) {
      std::vector<Signature> sa = signatures(a, ca);
      std::vector<Signature> sb = signatures(b, cb);
      std::map<Signature, int> palette;
      for (const auto& s : sa) palette.emplace(s, 0);
      for (const auto& s : sb) palette.emplace(s, 0);
      int next = 0;
      for (auto& [sig, idx] : palette) idx = next++;
      std::vector<int> na(n), nb(n);
      for (int v = 0; v < n; ++v) na[v] = palette.at(sa[v]);
      for (int v = 0; v < n; ++v) nb[v] = palette.at(sb[v]);
      std::vector<int> ha(next, 0), hb(next, 0);
      for (int v = 0; v < n; ++v) ++ha[na[v]];
      for (int v = 0; v < n; ++v) ++hb[nb[v]];
      if (ha != hb) return false;
      bool stable = (na == ca && nb == cb);
      ca.swap(na);
      cb.swap(nb);
      if (stable) return true;
    }
    return true;
  }

 private:
  static std::vector<Signature> signatures(const Multigraph& g,
                                           const std::vector<int>& col) {
    int n = g.num_vertices();
    std::vector<Signature> out(n);
    for (int v = 0; v < n; ++v) {
      std::map<int, int> counts;
      for (const auto& inc : g.incident(v)) ++counts[col[inc.to]];
      out[v].first = col[v];
      out[v].second.assign(counts.begin(), counts.end());
    }
    return out;
  }
};

}  // namespace detail

// Isomorphism witness between two multigraphs, or nullopt. Color refinement
// with individualization; the witness is verified against the multiplicity
// matrices before returning, so a positive answer is always sound. Throws if
// the search budget is exhausted (never a silent false negative).
inline std::optional<std::vector<int>> graph_isomorphism(const Multigraph& a,
                                                         const Multigraph& b,
                                                         long long node_budget = 200000) {
  if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges())
    return std::nullopt;
  int n = a.num_vertices();
  if (n == 0) return std::vector<int>{};

  // cheap invariants first
  auto degree_profile = [](const Multigraph& g) {
    std::vector<std::pair<int, int>> prof;  // (degree, loops)
    std::vector<int> loops(g.num_vertices(), 0);
    for (const Edge& e : g.edges())
      if (e.u == e.v) ++loops[e.u];
    for (int v = 0; v < g.num_vertices(); ++v) prof.push_back({g.degree(v), loops[v]});
    std::sort(prof.begin(), prof.end());
    return prof;
  };
  if (degree_profile(a) != degree_profile(b)) return std::nullopt;
  if (girth(a) != girth(b)) return std::nullopt;
  if (n <= 256 && detail::rounded_spectrum(a) != detail::rounded_spectrum(b))
    return std::nullopt;

  auto ma = detail::multiplicity_matrix(a);
  auto mb = detail::multiplicity_matrix(b);

  auto verify = [&](const std::vector<int>& map) {
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (ma[u][v] != mb[map[u]][map[v]]) return false;
    return true;
  };

  long long nodes = 0;
  int fresh_color = n;  // colors above this are individualization marks

  std::function<std::optional<std::vector<int>>(std::vector<int>, std::vector<int>)>
      search = [&](std::vector<int> ca, std::vector<int> cb)
      -> std::optional<std::vector<int>> {
    if (++nodes > node_budget)
      throw std::runtime_error("graph_isomorphism: node budget exceeded");
    if (!detail::Refiner::refine(a, b, ca, cb)) return std::nullopt;

    // locate a color class with more than one vertex
    std::map<int, std::vector<int>> class_a, class_b;
    for (int v = 0; v < n; ++v) class_a[ca[v]].push_back(v);
    for (int v = 0; v < n; ++v) class_b[cb[v]].push_back(v);

    int split = -1;
    size_t split_size = SIZE_MAX;
    for (const auto& [c, verts] : class_a) {
      if (verts.size() > 1 && verts.size() < split_size) {
        split = c;
        split_size = verts.size();
      }
    }
    if (split == -1) {
      // discrete coloring: match classes directly
      std::vector<int> map(n);
      for (const auto& [c, verts] : class_a) map[verts[0]] = class_b.at(c)[0];
      if (verify(map)) return map;
      return std::nullopt;
    }

    int pivot = class_a.at(split)[0];
    for (int candidate : class_b.at(split)) {
      std::vector<int> na = ca, nb = cb;
      na[pivot] = fresh_color;
      nb[candidate] = fresh_color;
      ++fresh_color;
      auto sub = search(std::move(na), std::move(nb));
      if (sub) return sub;
    }
    return std::nullopt;
  };

  std::vector<int> ca(n, 0), cb(n, 0);
  return search(std::move(ca), std::move(cb));
}

inline bool graphs_isomorphic(const Multigraph& a, const Multigraph& b,
                              long long node_budget = 200000) {
  return graph_isomorphism(a, b, node_budget).has_value();
}

}  // namespace pmcert
