#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace pclass2 {

/// One residue in [0, p). All moduli are odd primes <= 251 so a residue
/// always fits in a byte.
using Fp = std::uint8_t;
using Vec = std::vector<Fp>;

inline constexpr int kMaxPrime = 251;

bool is_odd_prime(int p);
void require_odd_prime(int p);

int fp_reduce(long long a, int p);
int fp_inverse(int a, int p);
int fp_pow(int a, long long e, int p);

Vec reduce_vec(const std::vector<int>& v, int p);
bool is_zero_vec(const Vec& v);
Vec add_vec(const Vec& a, const Vec& b, int p);
Vec scale_vec(const Vec& v, int c, int p);
Vec negate_vec(const Vec& v, int p);
std::string vec_to_string(const Vec& v);

/// Dense matrix over GF(p). Entries are stored reduced into [0, p);
/// construction rejects p = 2 and composite moduli.
class FpMatrix {
public:
  FpMatrix(int p, int rows, int cols);  // zero-filled
  static FpMatrix identity(int p, int n);
  static FpMatrix from_rows(int p, const std::vector<std::vector<int>>& rows);

  int p() const { return p_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  int at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }
  void set(int i, int j, long long value);

  Vec row(int i) const;
  FpMatrix transpose() const;
  FpMatrix mul(const FpMatrix& rhs) const;
  FpMatrix add(const FpMatrix& rhs) const;
  FpMatrix scaled(int c) const;
  FpMatrix negated() const;

  Vec apply(const Vec& v) const;             // M v
  Vec apply_transposed(const Vec& v) const;  // row vector v M

  bool is_zero() const;
  bool is_antisymmetric() const;

  bool operator==(const FpMatrix&) const = default;

  std::string to_string() const;

private:
  int p_, rows_, cols_;
  std::vector<Fp> e_;
};

/// Row rank by Gaussian elimination.
int rank(const FpMatrix& m);

/// A subspace of GF(p)^ambient in canonical form: the stored basis is the
/// reduced row-echelon form of any spanning set, so equal subspaces compare
/// equal entry-wise.
class Subspace {
public:
  static Subspace zero(int p, int ambient);
  static Subspace full(int p, int ambient);
  static Subspace from_spanning(int p, int ambient, const std::vector<Vec>& vectors);

  int p() const { return p_; }
  int ambient_dim() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<Vec>& basis() const { return basis_; }
  bool is_zero() const { return basis_.empty(); }
  bool contains(const Vec& v) const;

  bool operator==(const Subspace&) const = default;

private:
  Subspace(int p, int ambient) : p_(p), ambient_(ambient) {}
  int p_, ambient_;
  std::vector<Vec> basis_;
};

/// Right null space of m; dim(kernel) + rank = cols.
Subspace kernel(const FpMatrix& m);

std::optional<FpMatrix> try_invert(const FpMatrix& m);
FpMatrix invert(const FpMatrix& m);  // throws SingularMatrix

/// In-place reduced row echelon form. Pivots use the smallest free column
/// index and are normalized to 1; zero rows are dropped. Returns the rank.
int rref_in_place(int p, std::vector<Vec>& rows, std::vector<int>* pivot_cols = nullptr);

/// Extends independent rows to a basis of GF(p)^ambient; the returned d x d
/// invertible matrix has `rows` as its leading rows.
FpMatrix complete_to_basis(int p, int ambient, const std::vector<Vec>& rows);

/// |GL(d, p)| = prod_{i<d} (p^d - p^i); throws ValueError on overflow.
std::uint64_t gl_order(int d, int p);

/// A generating set of GL(d, p) of size at most 3: a primitive scalar in the
/// first slot, a cyclic coordinate shift, and one transvection.
std::vector<FpMatrix> gl_generators(int d, int p);

/// Yields every invertible d x d matrix over GF(p) exactly once, backtracking
/// over linearly independent column choices. Throws BudgetExceeded up front
/// when |GL(d, p)| > max_count.
void enumerate_gl(int d, int p, std::uint64_t max_count,
                  const std::function<void(const FpMatrix&)>& yield);

/// Number of k-dimensional subspaces of GF(p)^n.
std::uint64_t gauss_binomial(int n, int k, int p);

}  // namespace pclass2
