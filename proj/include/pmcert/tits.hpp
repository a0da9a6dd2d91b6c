#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pmcert/coxeter.hpp"

namespace pmcert {

using BigInt = boost::multiprecision::cpp_int;

// Dense square matrix with exact integer entries, sized by the generator
// count of the group it represents.
struct TitsMatrix {
  int n = 0;
  std::vector<BigInt> a;

  explicit TitsMatrix(int dim) : n(dim), a(size_t(dim) * dim, 0) {}
  BigInt& at(int r, int c) { return a[size_t(r) * n + c]; }
  const BigInt& at(int r, int c) const { return a[size_t(r) * n + c]; }

  static TitsMatrix identity(int dim) {
    TitsMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
    return m;
  }

  bool is_identity() const {
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (at(r, c) != (r == c ? 1 : 0)) return false;
    return true;
  }

  friend bool operator==(const TitsMatrix& x, const TitsMatrix& y) {
    return x.n == y.n && x.a == y.a;
  }
};

// Reflection representation over Z: generator i acts as the identity with
// row i replaced by -1 on the diagonal and +2 under every generator it does
// not commute with. Commuting pairs give commuting involutions and
// non-commuting pairs generate an infinite dihedral group, so the assignment
// extends to the whole group.
inline TitsMatrix tits_generator(const RACG& g, int i) {
  if (i < 0 || i >= g.generators) throw std::invalid_argument("generator out of range");
  TitsMatrix m = TitsMatrix::identity(g.generators);
  m.at(i, i) = -1;
  for (int j = 0; j < g.generators; ++j)
    if (j != i && !g.commutes(i, j)) m.at(i, j) = 2;
  return m;
}

inline TitsMatrix tits_mul(const TitsMatrix& x, const TitsMatrix& y) {
  if (x.n != y.n) throw std::invalid_argument("dimension mismatch");
  TitsMatrix out(x.n);
  for (int r = 0; r < x.n; ++r)
    for (int k = 0; k < x.n; ++k) {
      const BigInt& xv = x.at(r, k);
      if (xv == 0) continue;
      for (int c = 0; c < x.n; ++c) out.at(r, c) += xv * y.at(k, c);
    }
  return out;
}

inline TitsMatrix tits_matrix(const RACG& g, const CoxWord& w) {
  g.check_word(w);
  TitsMatrix m = TitsMatrix::identity(g.generators);
  for (int t : w) m = tits_mul(m, tits_generator(g, t));
  return m;
}

// Same representation with entries reduced mod m, kept in [0, m). Suitable
// for long scans: one generator multiply touches a single row combination.
struct ModMatrix {
  int n = 0;
  long long mod = 0;
  std::vector<long long> a;

  ModMatrix(int dim, long long m) : n(dim), mod(m), a(size_t(dim) * dim, 0) {
    if (m < 2) throw std::invalid_argument("modulus must be at least 2");
    for (int i = 0; i < dim; ++i) at(i, i) = 1 % m;
  }
  long long& at(int r, int c) { return a[size_t(r) * n + c]; }
  long long at(int r, int c) const { return a[size_t(r) * n + c]; }

  bool is_identity() const {
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (at(r, c) != ((r == c ? 1 : 0) % mod)) return false;
    return true;
  }

  // Right-multiplies by the image of generator t: column t flips sign and
  // feeds 2 * (column t) into every column that does not commute with t.
  void apply_generator(const RACG& g, int t) {
    for (int r = 0; r < n; ++r) {
      long long colt = at(r, t);
      for (int j = 0; j < n; ++j)
        if (j != t && !g.commutes(t, j)) at(r, j) = (at(r, j) + 2 * colt) % mod;
      at(r, t) = (mod - colt) % mod;
    }
  }
};

inline ModMatrix tits_matrix_mod(const RACG& g, const CoxWord& w, long long m) {
  g.check_word(w);
  ModMatrix out(g.generators, m);
  for (int t : w) out.apply_generator(g, t);
  return out;
}

// A witness pins down one entry where the matrix of the word differs from
// the identity mod the chosen modulus.
struct SeparationWitness {
  CoxWord word;
  int row = 0, col = 0;
  long long entry = 0;     // matrix entry mod m
  long long expected = 0;  // identity entry mod m
};

struct SeparationRecord {
  long long modulus = 0;
  std::vector<SeparationWitness> witnesses;
};

// Smallest modulus whose reduction keeps every listed element away from the
// identity, together with one differing entry per element. Small moduli can
// genuinely fail: mod 2 every generator image is the identity.
inline SeparationRecord separating_modulus(const RACG& g,
                                           const std::vector<CoxWord>& elements,
                                           long long max_modulus = 10000) {
  for (const CoxWord& w : elements)
    if (reduce(g, w).empty())
      throw std::invalid_argument("cannot separate the identity from itself");
  for (long long m = 2; m <= max_modulus; ++m) {
    SeparationRecord rec;
    rec.modulus = m;
    bool ok = true;
    for (const CoxWord& w : elements) {
      ModMatrix mm = tits_matrix_mod(g, w, m);
      SeparationWitness wit;
      wit.word = w;
      bool found = false;
      for (int r = 0; r < mm.n && !found; ++r)
        for (int c = 0; c < mm.n && !found; ++c) {
          long long want = (r == c ? 1 : 0) % m;
          if (mm.at(r, c) != want) {
            wit.row = r;
            wit.col = c;
            wit.entry = mm.at(r, c);
            wit.expected = want;
            found = true;
          }
        }
      if (!found) {
        ok = false;
        break;
      }
      rec.witnesses.push_back(wit);
    }
    if (ok) return rec;
  }
  throw std::runtime_error("no separating modulus up to the search bound");
}

}  // namespace pmcert
