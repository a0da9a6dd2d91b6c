#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pmcert/graph.hpp"
#include "pmcert/groups.hpp"
#include "pmcert/voltage.hpp"

namespace pmcert {

inline bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Euler criterion; q an odd prime, a a unit mod q.
inline bool is_quadratic_residue(long long a, long long q) {
  if (!is_prime(q) || q == 2) throw std::invalid_argument("q must be an odd prime");
  if (mod_reduce(a, q) == 0) throw std::invalid_argument("a is not a unit mod q");
  return mod_pow(a, (q - 1) / 2, q) == 1;
}

// Cayley-graph target of the classical construction: PSL when p is a square
// mod q, PGL otherwise.
inline std::string lps_cayley_target(long long p, long long q) {
  return is_quadratic_residue(p, q) ? "PSL" : "PGL";
}

struct Quaternion {
  long long a, b, c, d;  // a + bi + cj + dk
};

// The p+1 integer solutions of a^2+b^2+c^2+d^2 = p with a > 0 odd and b, c, d
// even, in lexicographic (a, b, c, d) order. Requires p prime, p = 1 mod 4.
inline std::vector<Quaternion> quaternion_solutions(long long p) {
  if (!is_prime(p) || p % 4 != 1)
    throw std::invalid_argument("p must be a prime congruent to 1 mod 4");
  std::vector<Quaternion> out;
  long long s = static_cast<long long>(std::sqrt(static_cast<double>(p))) + 1;
  long long e = s - (s % 2 != 0 ? 1 : 0);  // largest even bound
  for (long long a = 1; a * a <= p; a += 2)
    for (long long b = -e; b <= e; b += 2)
      for (long long c = -e; c <= e; c += 2)
        for (long long d = -e; d <= e; d += 2)
          if (a * a + b * b + c * c + d * d == p) out.push_back({a, b, c, d});
  return out;
}

// x with x^2 = -1 mod q^n: brute root mod q, then Hensel lifting. Exists iff
// q = 1 mod 4.
inline long long sqrt_minus_one(long long q, int n) {
  if (!is_prime(q) || q % 4 != 1)
    throw std::domain_error("sqrt(-1) requires a prime q with q = 1 mod 4");
  long long x = 0;
  for (long long t = 2; t < q; ++t)
    if (t * t % q == q - 1) {
      x = t;
      break;
    }
  long long m = q;
  for (int e = 1; e < n; ++e) {
    m *= q;
    // Newton step for f(x) = x^2 + 1; f'(x) = 2x is a unit mod q.
    long long fx = mod_reduce((__int128)x * x % m + 1, m);
    x = mod_reduce(x - (__int128)fx * mod_inv(2 * x, m) % m, m);
  }
  return x;
}

// The p+1 quaternion generators as 2x2 matrices mod q^n:
//   [[a+bi, c+di], [-c+di, a-bi]]  with i = sqrt(-1) mod q^n.
inline std::vector<Mat2> lps_generator_matrices(long long p, long long q, int n) {
  long long m = 1;
  for (int e = 0; e < n; ++e) m *= q;
  long long i = sqrt_minus_one(q, n);
  std::vector<Mat2> out;
  for (const Quaternion& s : quaternion_solutions(p))
    out.push_back(Mat2{mod_reduce(s.a + s.b * i, m), mod_reduce(s.c + s.d * i, m),
                       mod_reduce(-s.c + s.d * i, m), mod_reduce(s.a - s.b * i, m)});
  return out;
}

// Splits a prime power into (q, n); throws if the argument is not one.
inline std::pair<long long, int> prime_power_split(long long modulus) {
  if (modulus < 2) throw std::invalid_argument("modulus must be a prime power >= 2");
  long long q = modulus;
  for (long long d = 2; d * d <= modulus; ++d)
    if (modulus % d == 0) {
      q = d;
      break;
    }
  int n = 0;
  long long m = modulus;
  while (m % q == 0) {
    m /= q;
    ++n;
  }
  if (m != 1) throw std::invalid_argument("modulus must be a prime power");
  return {q, n};
}

// Voltage assignment on the (p+1)-banded theta graph over PSL(2, modulus),
// modulus = q^n: edge j carries s_j * s_last^{-1}, so the last edge carries
// the identity. Each voltage has square determinant (p^2), hence lies in PSL.
// The classical non-bipartiteness dichotomy requires p to be a non-square
// mod q; the square case is rejected rather than silently producing the
// wrong quotient.
inline VoltageAssignment lps_voltages(long long p, long long modulus) {
  auto [q, n] = prime_power_split(modulus);
  if (p == q) throw std::invalid_argument("p and q must be distinct primes");
  if (is_quadratic_residue(p, q))
    throw std::invalid_argument("p is a quadratic residue mod q; PSL voltages need the non-split case");
  std::vector<Mat2> gens = lps_generator_matrices(p, q, n);
  auto group = MatrixGroup::psl(modulus);
  VoltageAssignment va;
  va.base = theta_graph(static_cast<int>(gens.size()));
  va.group = group;
  Mat2 last_inv = mat_adj(gens.back(), modulus);
  for (int j = 0; j < static_cast<int>(gens.size()); ++j)
    va.voltage[j] = group->element_of(mat_mul(gens[j], last_inv, modulus));
  return va;
}

struct TowerProjection {
  VoltageAssignment below;     // same base graph, voltages reduced mod q^{n-1}
  std::vector<int> group_map;  // element index upstairs -> index downstairs
  CoveringMap covers;          // cover at level n -> cover at level n-1
};

// Reduces a level-n assignment (PSL(2, q^n) or Z/q^n) to level n-1 and builds
// the induced covering between the two derived covers. Entrywise reduction of
// a projective class is well defined because units stay units.
inline TowerProjection tower_projection(const VoltageAssignment& upper, long long q) {
  TowerProjection t;
  std::vector<int> group_map;
  GroupPtr glow;
  if (auto gn = std::dynamic_pointer_cast<const MatrixGroup>(upper.group)) {
    long long m = gn->modulus();
    if (m % q != 0 || m == q)
      throw std::invalid_argument("group modulus is not q^n with n >= 2");
    long long m_low = m / q;
    auto low = MatrixGroup::psl(m_low);
    group_map.resize(gn->size());
    for (int x = 0; x < gn->size(); ++x) {
      Mat2 mm = gn->matrix_of(x);
      for (auto& v : mm) v = mod_reduce(v, m_low);
      group_map[x] = low->element_of(mm);
    }
    glow = low;
  } else if (auto gz = std::dynamic_pointer_cast<const CyclicGroup>(upper.group)) {
    long long m = gz->size();
    if (m % q != 0 || m == q)
      throw std::invalid_argument("group modulus is not q^n with n >= 2");
    long long m_low = m / q;
    glow = std::make_shared<CyclicGroup>(m_low);
    group_map.resize(gz->size());
    for (int x = 0; x < gz->size(); ++x) group_map[x] = static_cast<int>(x % m_low);
  } else {
    throw std::invalid_argument("tower_projection needs a matrix or cyclic group");
  }
  t.group_map = group_map;

  t.below.base = upper.base;
  t.below.group = glow;
  for (const auto& [e, w] : upper.voltage) t.below.voltage[e] = group_map[w];

  CoveringMap up = voltage_cover(upper);
  CoveringMap down = voltage_cover(t.below);
  int n_up = upper.group->size(), n_down = glow->size();
  t.covers.total = up.total;
  t.covers.base = down.total;
  t.covers.vertex_map.resize(up.total.num_vertices());
  for (int v = 0; v < upper.base.num_vertices(); ++v)
    for (int x = 0; x < n_up; ++x)
      t.covers.vertex_map[v * n_up + x] = v * n_down + group_map[x];
  t.covers.edge_map.resize(up.total.num_edges());
  for (const Edge& e : upper.base.edges())
    for (int x = 0; x < n_up; ++x)
      t.covers.edge_map[e.id * n_up + x] = e.id * n_down + group_map[x];
  return t;
}

// Smallest tower level whose girth lower bound 4n*log_p(q) - log_p(4) reaches
// the target.
inline int required_level(long long p, long long q, double target_girth) {
  long double r = (target_girth * std::log((long double)p) + std::log(4.0L)) /
                  (4.0L * std::log((long double)q));
  int n = static_cast<int>(std::ceil(r - 1e-12L));
  return std::max(1, n);
}

}  // namespace pmcert
