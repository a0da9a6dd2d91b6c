#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmcert/graph.hpp"

namespace pmcert {

using CoxWord = std::vector<int>;

// Right-angled Coxeter group on at most 64 generators, described by its
// commutation graph. Generator i stores the set of generators it commutes
// with as a bitmask (never including itself).
struct RACG {
  int generators = 0;
  std::vector<uint64_t> commute;

  RACG() = default;
  RACG(int p, const std::vector<std::pair<int, int>>& commuting_pairs) : generators(p) {
    if (p < 1 || p > 64) throw std::invalid_argument("generator count must be in 1..64");
    commute.assign(p, 0);
    for (auto [i, j] : commuting_pairs) {
      if (i < 0 || j < 0 || i >= p || j >= p)
        throw std::invalid_argument("commuting pair out of range");
      if (i == j) throw std::invalid_argument("a generator always commutes with itself");
      commute[i] |= uint64_t(1) << j;
      commute[j] |= uint64_t(1) << i;
    }
  }

  bool commutes(int i, int j) const { return (commute[i] >> j) & 1; }

  void check_word(const CoxWord& w) const {
    for (int t : w)
      if (t < 0 || t >= generators) throw std::invalid_argument("letter out of range");
  }
};

// Mirrors-to-group translation: vertices of the adjacency graph become
// generators, edges become commuting pairs.
inline RACG racg_from_mirrors(const Multigraph& mirror_adjacency) {
  std::vector<std::pair<int, int>> pairs;
  for (const Edge& e : mirror_adjacency.edges()) {
    if (e.u == e.v) throw std::invalid_argument("mirror adjacency must be loopless");
    pairs.push_back({e.u, e.v});
  }
  return RACG(mirror_adjacency.num_vertices(), pairs);
}

namespace detail {

// Appends letter t to the reduced word in buf (length len), cancelling
// against the rightmost copy of t that can slide next to it. Returns the new
// length. This left fold is exactly the deletion condition for right-angled
// groups, so folding a whole word yields a geodesic for the same element.
inline int cox_insert(const RACG& g, int* buf, int len, int t) {
  for (int i = len - 1; i >= 0; --i) {
    if (buf[i] == t) {
      for (int j = i; j + 1 < len; ++j) buf[j] = buf[j + 1];
      return len - 1;
    }
    if (!g.commutes(buf[i], t)) break;
  }
  buf[len] = t;
  return len + 1;
}

inline int reduce_span(const RACG& g, const int* w, int n, int* out) {
  int len = 0;
  for (int i = 0; i < n; ++i) len = cox_insert(g, out, len, w[i]);
  return len;
}

// Rewrites a reduced word into the lexicographically smallest geodesic:
// repeatedly extract the smallest letter whose left neighbours all commute
// with it.
inline void normal_form_span(const RACG& g, int* w, int n) {
  for (int start = 0; start < n; ++start) {
    int best = -1;
    for (int i = start; i < n; ++i) {
      bool front = true;
      for (int j = start; j < i; ++j)
        if (!g.commutes(w[j], w[i])) {
          front = false;
          break;
        }
      if (front && (best == -1 || w[i] < w[best])) best = i;
    }
    int letter = w[best];
    for (int j = best; j > start; --j) w[j] = w[j - 1];
    w[start] = letter;
  }
}

}  // namespace detail

// Geodesic representative of the same element (not canonical).
inline CoxWord reduce(const RACG& g, const CoxWord& w) {
  g.check_word(w);
  CoxWord out(w.size() + 1);
  int len = detail::reduce_span(g, w.data(), static_cast<int>(w.size()), out.data());
  out.resize(len);
  return out;
}

inline bool is_reduced(const RACG& g, const CoxWord& w) {
  return reduce(g, w).size() == w.size();
}

// Canonical form: the lexicographically smallest geodesic of the element.
inline CoxWord normal_form(const RACG& g, const CoxWord& w) {
  CoxWord r = reduce(g, w);
  detail::normal_form_span(g, r.data(), static_cast<int>(r.size()));
  return r;
}

// All group elements of length <= radius, as sorted normal forms. Throws when
// the ball exceeds the guard, since most of these groups are infinite.
inline std::vector<CoxWord> ball(const RACG& g, int radius, size_t guard = 1000000) {
  std::set<CoxWord> seen;
  std::vector<CoxWord> frontier(1);
  seen.insert(CoxWord{});
  for (int len = 1; len <= radius; ++len) {
    std::vector<CoxWord> next;
    for (const CoxWord& w : frontier) {
      for (int t = 0; t < g.generators; ++t) {
        CoxWord cand = w;
        cand.push_back(t);
        CoxWord nf = normal_form(g, cand);
        if (nf.size() != w.size() + 1) continue;  // shortened: already seen
        if (seen.insert(nf).second) {
          next.push_back(nf);
          if (seen.size() > guard) throw std::runtime_error("ball exceeds guard");
        }
      }
    }
    frontier.swap(next);
  }
  std::vector<CoxWord> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const CoxWord& a, const CoxWord& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

// Flattens a wall-crossing itinerary into a word. Each step lists the walls
// crossed at once, which must pairwise commute; they are emitted in index
// order.
inline CoxWord coxeter_word_of_path(const RACG& g,
                                    const std::vector<std::vector<int>>& crossings) {
  CoxWord out;
  for (const auto& step : crossings) {
    std::vector<int> sorted = step;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("a wall cannot be crossed twice in one step");
    for (size_t x = 0; x < sorted.size(); ++x)
      for (size_t y = x + 1; y < sorted.size(); ++y)
        if (!g.commutes(sorted[x], sorted[y]))
          throw std::invalid_argument("simultaneous crossings must pairwise commute");
    for (int t : sorted) {
      if (t < 0 || t >= g.generators) throw std::invalid_argument("wall out of range");
      out.push_back(t);
    }
  }
  return out;
}

// Elementary displacement bound used by the certification ledger. A word
// that fails to be geodesic as written witnesses a closed mirror path, so the
// bound falls back to systole - L; a geodesic word of syllable length >= 3
// crosses floor(|w|/3) separated wall triples, each contributing D.
inline double lemma_bounds(const RACG& g, const CoxWord& w, double wall_separation,
                           double systole_lower_bound, double mirror_length) {
  CoxWord r = reduce(g, w);
  if (r.size() != w.size()) return systole_lower_bound - mirror_length;
  if (w.size() >= 3) return std::floor(w.size() / 3.0) * wall_separation;
  return 0.0;
}

}  // namespace pmcert
