#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace pmcert {

inline long long mod_reduce(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

inline long long mod_pow(long long b, long long e, long long m) {
  long long r = 1 % m;
  b = mod_reduce(b, m);
  while (e > 0) {
    if (e & 1) r = (__int128)r * b % m;
    b = (__int128)b * b % m;
    e >>= 1;
  }
  return r;
}

inline bool is_unit_mod(long long a, long long m) {
  a = mod_reduce(a, m);
  long long b = m;
  while (b != 0) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a == 1;
}

inline long long mod_inv(long long a, long long m) {
  long long t = 0, nt = 1, r = m, nr = mod_reduce(a, m);
  while (nr != 0) {
    long long q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  if (r != 1) throw std::invalid_argument("mod_inv: not a unit");
  return mod_reduce(t, m);
}

// Abstract finite group with elements addressed by dense indices 0..size-1.
class FiniteGroup {
 public:
  virtual ~FiniteGroup() = default;
  virtual int size() const = 0;
  virtual int identity() const = 0;
  virtual int mul(int a, int b) const = 0;
  virtual int inv(int a) const = 0;
  virtual std::string name(int a) const = 0;
  virtual std::string kind() const = 0;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

class CyclicGroup final : public FiniteGroup {
 public:
  explicit CyclicGroup(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("CyclicGroup needs n >= 1");
  }
  int size() const override { return n_; }
  int identity() const override { return 0; }
  int mul(int a, int b) const override { return (a + b) % n_; }
  int inv(int a) const override { return (n_ - a) % n_; }
  std::string name(int a) const override { return std::to_string(a); }
  std::string kind() const override { return "Z"; }

 private:
  int n_;
};

// Row-major 2x2 matrix [[a,b],[c,d]] with entries reduced mod some modulus.
using Mat2 = std::array<long long, 4>;

inline Mat2 mat_mul(const Mat2& x, const Mat2& y, long long m) {
  return Mat2{mod_reduce(x[0] * y[0] + x[1] * y[2], m),
              mod_reduce(x[0] * y[1] + x[1] * y[3], m),
              mod_reduce(x[2] * y[0] + x[3] * y[2], m),
              mod_reduce(x[2] * y[1] + x[3] * y[3], m)};
}

// Projective adjugate: adj(M) * M = det(M) * I, a scalar matrix, so adj(M)
// represents the inverse class without needing det^{-1}.
inline Mat2 mat_adj(const Mat2& x, long long m) {
  return Mat2{x[3], mod_reduce(-x[1], m), mod_reduce(-x[2], m), x[0]};
}

// Canonical representative of the projective class of an invertible matrix:
// scale by the inverse of the first entry (row-major) that is a unit. For a
// prime modulus this is the first nonzero entry; for prime powers nonzero
// non-units exist and must be skipped. An invertible matrix always has a unit
// entry, else its determinant would be a non-unit.
inline Mat2 proj_canonical(Mat2 x, long long m) {
  for (int i = 0; i < 4; ++i) x[i] = mod_reduce(x[i], m);
  for (int i = 0; i < 4; ++i) {
    if (is_unit_mod(x[i], m)) {
      long long s = mod_inv(x[i], m);
      Mat2 r;
      for (int j = 0; j < 4; ++j) r[j] = mod_reduce(x[j] * s, m);
      return r;
    }
  }
  throw std::domain_error("proj_canonical: matrix has no unit entry");
}

// PSL(2, Z/m) or PGL(2, Z/m) as a concrete enumerated group. Elements are
// projective canonical forms, discovered by closure from the generators.
class MatrixGroup final : public FiniteGroup {
 public:
  // Generated by the elementary matrices; equals PSL(2, Z/m) for odd m.
  static std::shared_ptr<const MatrixGroup> psl(long long m) {
    return std::shared_ptr<const MatrixGroup>(
        new MatrixGroup(m, {Mat2{1, 1, 0, 1}, Mat2{1, 0, 1, 1}}, "PSL"));
  }

  // Adds diag(r, 1) for a quadratic non-residue unit r, doubling PSL.
  static std::shared_ptr<const MatrixGroup> pgl(long long q) {
    long long r = 2;
    while (r < q && mod_pow(r, (q - 1) / 2, q) == 1) ++r;
    if (r >= q) throw std::invalid_argument("pgl: no non-residue found (q prime?)");
    return std::shared_ptr<const MatrixGroup>(new MatrixGroup(
        q, {Mat2{1, 1, 0, 1}, Mat2{1, 0, 1, 1}, Mat2{r, 0, 0, 1}}, "PGL"));
  }

  int size() const override { return static_cast<int>(mats_.size()); }
  int identity() const override { return id_; }
  int mul(int a, int b) const override {
    return lookup(proj_canonical(mat_mul(mats_.at(a), mats_.at(b), m_), m_));
  }
  int inv(int a) const override {
    return lookup(proj_canonical(mat_adj(mats_.at(a), m_), m_));
  }
  std::string name(int a) const override {
    const Mat2& x = mats_.at(a);
    return "[[" + std::to_string(x[0]) + "," + std::to_string(x[1]) + "],[" +
           std::to_string(x[2]) + "," + std::to_string(x[3]) + "]]";
  }
  std::string kind() const override { return kind_; }

  long long modulus() const { return m_; }
  const Mat2& matrix_of(int a) const { return mats_.at(a); }
  int element_of(const Mat2& x) const { return lookup(proj_canonical(x, m_)); }

 private:
  MatrixGroup(long long m, std::vector<Mat2> gens, std::string kind)
      : m_(m), kind_(std::move(kind)) {
    if (m < 2 || m > 65535) throw std::invalid_argument("modulus out of range");
    auto push = [&](const Mat2& c) -> bool {
      uint64_t k = key(c);
      if (index_.count(k)) return false;
      index_.emplace(k, static_cast<int>(mats_.size()));
      mats_.push_back(c);
      return true;
    };
    Mat2 ident{1, 0, 0, 1};
    push(proj_canonical(ident, m_));
    id_ = 0;
    for (auto& g : gens) g = proj_canonical(g, m_);
    std::queue<int> frontier;
    frontier.push(0);
    while (!frontier.empty()) {
      int x = frontier.front();
      frontier.pop();
      for (const auto& g : gens) {
        Mat2 c = proj_canonical(mat_mul(mats_[x], g, m_), m_);
        if (push(c)) frontier.push(static_cast<int>(mats_.size()) - 1);
        if (mats_.size() > 40'000'000) throw std::runtime_error("group too large");
      }
    }
  }

  uint64_t key(const Mat2& x) const {
    return (((uint64_t)x[0] * 65536 + (uint64_t)x[1]) * 65536 + (uint64_t)x[2]) *
               65536 +
           (uint64_t)x[3];
  }

  int lookup(const Mat2& c) const {
    auto it = index_.find(key(c));
    if (it == index_.end()) throw std::domain_error("matrix not in group");
    return it->second;
  }

  long long m_;
  std::string kind_;
  std::vector<Mat2> mats_;
  std::unordered_map<uint64_t, int> index_;
  int id_ = 0;
};

class ProductGroup final : public FiniteGroup {
 public:
  ProductGroup(GroupPtr a, GroupPtr b) : a_(std::move(a)), b_(std::move(b)) {}
  int size() const override { return a_->size() * b_->size(); }
  int identity() const override { return pack(a_->identity(), b_->identity()); }
  int mul(int x, int y) const override {
    return pack(a_->mul(x / b_->size(), y / b_->size()),
                b_->mul(x % b_->size(), y % b_->size()));
  }
  int inv(int x) const override {
    return pack(a_->inv(x / b_->size()), b_->inv(x % b_->size()));
  }
  std::string name(int x) const override {
    return "(" + a_->name(x / b_->size()) + "," + b_->name(x % b_->size()) + ")";
  }
  std::string kind() const override { return "product"; }

  int pack(int xa, int xb) const { return xa * b_->size() + xb; }
  int first(int x) const { return x / b_->size(); }
  int second(int x) const { return x % b_->size(); }
  const GroupPtr& factor_a() const { return a_; }
  const GroupPtr& factor_b() const { return b_; }

 private:
  GroupPtr a_, b_;
};

// Indices of the subgroup generated by `gens`, in discovery order.
inline std::vector<int> subgroup_closure(const FiniteGroup& g,
                                         const std::vector<int>& gens) {
  std::vector<int> out;
  std::vector<char> seen(g.size(), 0);
  std::queue<int> q;
  q.push(g.identity());
  seen[g.identity()] = 1;
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    out.push_back(x);
    for (int s : gens) {
      int y = g.mul(x, s);
      if (!seen[y]) {
        seen[y] = 1;
        q.push(y);
      }
    }
  }
  return out;
}

}  // namespace pmcert
