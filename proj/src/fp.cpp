#include "fp.hpp"

#include <algorithm>
#include <sstream>

namespace pclass2 {

bool is_odd_prime(int p) {
  if (p < 3 || p > kMaxPrime || p % 2 == 0) return false;
  for (int q = 3; q * q <= p; q += 2)
    if (p % q == 0) return false;
  return true;
}

void require_odd_prime(int p) {
  if (p == 2) throw ValueError("modulus 2 is not supported (odd primes only)");
  if (!is_odd_prime(p))
    throw ValueError("modulus " + std::to_string(p) + " is not an odd prime <= " +
                     std::to_string(kMaxPrime));
}

int fp_reduce(long long a, int p) {
  long long r = a % p;
  if (r < 0) r += p;
  return static_cast<int>(r);
}

int fp_pow(int a, long long e, int p) {
  long long base = fp_reduce(a, p), acc = 1;
  while (e > 0) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<int>(acc);
}

int fp_inverse(int a, int p) {
  int r = fp_reduce(a, p);
  if (r == 0) throw ValueError("no inverse of 0 mod " + std::to_string(p));
  return fp_pow(r, p - 2, p);
}

Vec reduce_vec(const std::vector<int>& v, int p) {
  Vec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = static_cast<Fp>(fp_reduce(v[i], p));
  return out;
}

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Fp x) { return x == 0; });
}

Vec add_vec(const Vec& a, const Vec& b, int p) {
  Vec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = static_cast<Fp>((a[i] + b[i]) % p);
  return out;
}

Vec scale_vec(const Vec& v, int c, int p) {
  int cc = fp_reduce(c, p);
  Vec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = static_cast<Fp>(v[i] * cc % p);
  return out;
}

Vec negate_vec(const Vec& v, int p) { return scale_vec(v, p - 1, p); }

std::string vec_to_string(const Vec& v) {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << static_cast<int>(v[i]);
  }
  os << ')';
  return os.str();
}

FpMatrix::FpMatrix(int p, int rows, int cols) : p_(p), rows_(rows), cols_(cols) {
  require_odd_prime(p);
  if (rows < 0 || cols < 0) throw ValueError("negative matrix dimension");
  e_.assign(static_cast<size_t>(rows) * cols, 0);
}

FpMatrix FpMatrix::identity(int p, int n) {
  FpMatrix m(p, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

FpMatrix FpMatrix::from_rows(int p, const std::vector<std::vector<int>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  FpMatrix m(p, r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw ValueError("ragged matrix rows");
    for (int j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

void FpMatrix::set(int i, int j, long long value) {
  e_[static_cast<size_t>(i) * cols_ + j] = static_cast<Fp>(fp_reduce(value, p_));
}

Vec FpMatrix::row(int i) const {
  return Vec(e_.begin() + static_cast<size_t>(i) * cols_,
             e_.begin() + static_cast<size_t>(i + 1) * cols_);
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix t(p_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.set(j, i, at(i, j));
  return t;
}

FpMatrix FpMatrix::mul(const FpMatrix& rhs) const {
  if (p_ != rhs.p_ || cols_ != rhs.rows_) throw ValueError("matrix product shape mismatch");
  FpMatrix out(p_, rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < rhs.cols_; ++j) {
      long long acc = 0;
      for (int k = 0; k < cols_; ++k) acc += at(i, k) * rhs.at(k, j);
      out.set(i, j, acc);
    }
  return out;
}

FpMatrix FpMatrix::add(const FpMatrix& rhs) const {
  if (p_ != rhs.p_ || rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw ValueError("matrix sum shape mismatch");
  FpMatrix out(p_, rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i)
    out.e_[i] = static_cast<Fp>((e_[i] + rhs.e_[i]) % p_);
  return out;
}

FpMatrix FpMatrix::scaled(int c) const {
  int cc = fp_reduce(c, p_);
  FpMatrix out(p_, rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) out.e_[i] = static_cast<Fp>(e_[i] * cc % p_);
  return out;
}

FpMatrix FpMatrix::negated() const { return scaled(p_ - 1); }

Vec FpMatrix::apply(const Vec& v) const {
  if (static_cast<int>(v.size()) != cols_) throw ValueError("matrix-vector shape mismatch");
  Vec out(rows_);
  for (int i = 0; i < rows_; ++i) {
    long long acc = 0;
    for (int j = 0; j < cols_; ++j) acc += at(i, j) * v[j];
    out[i] = static_cast<Fp>(acc % p_);
  }
  return out;
}

Vec FpMatrix::apply_transposed(const Vec& v) const {
  if (static_cast<int>(v.size()) != rows_) throw ValueError("vector-matrix shape mismatch");
  Vec out(cols_);
  for (int j = 0; j < cols_; ++j) {
    long long acc = 0;
    for (int i = 0; i < rows_; ++i) acc += v[i] * at(i, j);
    out[j] = static_cast<Fp>(acc % p_);
  }
  return out;
}

bool FpMatrix::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](Fp x) { return x == 0; });
}

bool FpMatrix::is_antisymmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i) {
    if (at(i, i) != 0) return false;
    for (int j = i + 1; j < cols_; ++j)
      if ((at(i, j) + at(j, i)) % p_ != 0) return false;
  }
  return true;
}

std::string FpMatrix::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i) {
    os << (i == 0 ? "[" : " ");
    for (int j = 0; j < cols_; ++j) os << (j ? " " : "[") << at(i, j);
    os << "]" << (i + 1 == rows_ ? "]" : "\n");
  }
  if (rows_ == 0) os << "[]";
  return os.str();
}

int rref_in_place(int p, std::vector<Vec>& rows, std::vector<int>* pivot_cols) {
  if (pivot_cols) pivot_cols->clear();
  size_t n_cols = rows.empty() ? 0 : rows[0].size();
  size_t pivot_row = 0;
  for (size_t col = 0; col < n_cols && pivot_row < rows.size(); ++col) {
    size_t sel = pivot_row;
    while (sel < rows.size() && rows[sel][col] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[pivot_row], rows[sel]);
    int inv = fp_inverse(rows[pivot_row][col], p);
    for (size_t j = col; j < n_cols; ++j)
      rows[pivot_row][j] = static_cast<Fp>(rows[pivot_row][j] * inv % p);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == pivot_row || rows[i][col] == 0) continue;
      int f = p - rows[i][col];
      for (size_t j = col; j < n_cols; ++j)
        rows[i][j] = static_cast<Fp>((rows[i][j] + f * rows[pivot_row][j]) % p);
    }
    if (pivot_cols) pivot_cols->push_back(static_cast<int>(col));
    ++pivot_row;
  }
  rows.resize(pivot_row);
  return static_cast<int>(pivot_row);
}

int rank(const FpMatrix& m) {
  std::vector<Vec> rows;
  rows.reserve(m.rows());
  for (int i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  return rref_in_place(m.p(), rows);
}

Subspace Subspace::zero(int p, int ambient) {
  require_odd_prime(p);
  return Subspace(p, ambient);
}

Subspace Subspace::full(int p, int ambient) {
  Subspace s = zero(p, ambient);
  for (int i = 0; i < ambient; ++i) {
    Vec e(ambient, 0);
    e[i] = 1;
    s.basis_.push_back(std::move(e));
  }
  return s;
}

Subspace Subspace::from_spanning(int p, int ambient, const std::vector<Vec>& vectors) {
  Subspace s = zero(p, ambient);
  std::vector<Vec> rows;
  for (const Vec& v : vectors) {
    if (static_cast<int>(v.size()) != ambient)
      throw ValueError("spanning vector has wrong dimension");
    rows.push_back(v);
  }
  rref_in_place(p, rows);
  s.basis_ = std::move(rows);
  return s;
}

bool Subspace::contains(const Vec& v) const {
  if (static_cast<int>(v.size()) != ambient_) return false;
  Vec w = v;
  for (const Vec& b : basis_) {
    size_t lead = 0;
    while (lead < b.size() && b[lead] == 0) ++lead;
    if (lead == b.size()) continue;
    int f = w[lead];  // pivot of b is 1
    if (f == 0) continue;
    for (size_t j = lead; j < w.size(); ++j)
      w[j] = static_cast<Fp>((w[j] + (p_ - f) * b[j]) % p_);
  }
  return is_zero_vec(w);
}

Subspace kernel(const FpMatrix& m) {
  int p = m.p();
  std::vector<Vec> rows;
  rows.reserve(m.rows());
  for (int i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  std::vector<int> pivots;
  rref_in_place(p, rows, &pivots);

  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (int free_col = 0; free_col < m.cols(); ++free_col) {
    if (is_pivot[free_col]) continue;
    Vec v(m.cols(), 0);
    v[free_col] = 1;
    for (size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = static_cast<Fp>(fp_reduce(-rows[i][free_col], p));
    basis.push_back(std::move(v));
  }
  return Subspace::from_spanning(p, m.cols(), basis);
}

std::optional<FpMatrix> try_invert(const FpMatrix& m) {
  if (m.rows() != m.cols()) throw ValueError("inverse of a non-square matrix");
  int n = m.rows(), p = m.p();
  std::vector<Vec> rows;
  for (int i = 0; i < n; ++i) {
    Vec r = m.row(i);
    r.resize(2 * n, 0);
    r[n + i] = 1;
    rows.push_back(std::move(r));
  }
  std::vector<int> pivots;
  rref_in_place(p, rows, &pivots);
  if (static_cast<int>(pivots.size()) != n || (n > 0 && pivots.back() != n - 1))
    return std::nullopt;
  FpMatrix inv(p, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.set(i, j, rows[i][n + j]);
  return inv;
}

FpMatrix invert(const FpMatrix& m) {
  auto inv = try_invert(m);
  if (!inv) throw SingularMatrix("matrix is singular over GF(" + std::to_string(m.p()) + ")");
  return *inv;
}

FpMatrix complete_to_basis(int p, int ambient, const std::vector<Vec>& rows) {
  std::vector<Vec> work = rows;
  int base_rank = rref_in_place(p, work);
  if (base_rank != static_cast<int>(rows.size()))
    throw ValueError("complete_to_basis requires independent rows");
  std::vector<Vec> result = rows;
  for (int i = 0; i < ambient && static_cast<int>(result.size()) < ambient; ++i) {
    Vec e(ambient, 0);
    e[i] = 1;
    std::vector<Vec> probe = work;
    probe.push_back(e);
    if (rref_in_place(p, probe) > static_cast<int>(work.size())) {
      work = std::move(probe);
      result.push_back(std::move(e));
    }
  }
  FpMatrix out(p, ambient, ambient);
  for (int i = 0; i < ambient; ++i)
    for (int j = 0; j < ambient; ++j) out.set(i, j, result[i][j]);
  return out;
}

std::uint64_t gl_order(int d, int p) {
  // prod_{i<d} (p^d - p^i)
  long double estimate = 1.0L;
  std::uint64_t pd = 1;
  for (int i = 0; i < d; ++i) {
    pd *= static_cast<std::uint64_t>(p);
    if (pd > (std::uint64_t{1} << 62)) throw ValueError("gl_order overflow");
  }
  std::uint64_t order = 1, pi = 1;
  for (int i = 0; i < d; ++i) {
    std::uint64_t term = pd - pi;
    estimate *= static_cast<long double>(term);
    if (estimate > 1.8e19L) throw ValueError("gl_order overflow");
    order *= term;
    pi *= static_cast<std::uint64_t>(p);
  }
  return order;
}

namespace {

int least_primitive_root(int p) {
  std::vector<int> prime_factors;
  int m = p - 1;
  for (int q = 2; q * q <= m; ++q) {
    if (m % q != 0) continue;
    prime_factors.push_back(q);
    while (m % q == 0) m /= q;
  }
  if (m > 1) prime_factors.push_back(m);
  // g generates GF(p)* iff g^((p-1)/q) != 1 for every prime q | p-1
  for (int g = 2; g < p; ++g) {
    bool primitive = true;
    for (int q : prime_factors) {
      if (fp_pow(g, (p - 1) / q, p) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) return g;
  }
  throw ValueError("no primitive root found");  // unreachable for prime p
}

}  // namespace

std::vector<FpMatrix> gl_generators(int d, int p) {
  require_odd_prime(p);
  if (d < 1) throw ValueError("gl_generators requires d >= 1");
  int g = least_primitive_root(p);
  FpMatrix scalar = FpMatrix::identity(p, d);
  scalar.set(0, 0, g);
  if (d == 1) return {scalar};

  FpMatrix cycle(p, d, d);  // e_i -> e_{i+1 mod d} as a column permutation
  for (int i = 0; i < d; ++i) cycle.set((i + 1) % d, i, 1);

  FpMatrix transvection = FpMatrix::identity(p, d);
  transvection.set(0, 1, 1);

  return {scalar, cycle, transvection};
}

namespace {

struct GlEnumerator {
  int d, p;
  const std::function<void(const FpMatrix&)>& yield;
  std::vector<Vec> columns;   // chosen columns
  std::vector<Vec> echelon;   // row-reduced copies for the span test

  bool independent(const Vec& v, Vec& residue) const {
    residue = v;
    for (const Vec& b : echelon) {
      size_t lead = 0;
      while (lead < b.size() && b[lead] == 0) ++lead;
      if (residue[lead] == 0) continue;
      int f = p - residue[lead];  // b normalized with pivot 1
      for (size_t j = lead; j < b.size(); ++j)
        residue[j] = static_cast<Fp>((residue[j] + f * b[j]) % p);
    }
    return !is_zero_vec(residue);
  }

  void run(int level) {
    if (level == d) {
      FpMatrix m(p, d, d);
      for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) m.set(i, j, columns[j][i]);
      yield(m);
      return;
    }
    Vec v(d, 0), residue;
    // odometer over all p^d vectors, most significant coordinate first
    for (;;) {
      int k = d - 1;
      while (k >= 0) {
        if (++v[k] < p) break;
        v[k] = 0;
        --k;
      }
      if (k < 0) break;
      if (!independent(v, residue)) continue;
      int lead = 0;
      while (residue[lead] == 0) ++lead;
      int inv = fp_inverse(residue[lead], p);
      for (size_t j = 0; j < residue.size(); ++j)
        residue[j] = static_cast<Fp>(residue[j] * inv % p);
      columns.push_back(v);
      echelon.push_back(residue);
      run(level + 1);
      columns.pop_back();
      echelon.pop_back();
    }
  }
};

}  // namespace

void enumerate_gl(int d, int p, std::uint64_t max_count,
                  const std::function<void(const FpMatrix&)>& yield) {
  require_odd_prime(p);
  if (d < 1) throw ValueError("enumerate_gl requires d >= 1");
  std::uint64_t total = gl_order(d, p);
  if (total > max_count)
    throw BudgetExceeded("|GL(" + std::to_string(d) + "," + std::to_string(p) + ")| = " +
                         std::to_string(total) + " exceeds the cap " + std::to_string(max_count));
  GlEnumerator e{d, p, yield, {}, {}};
  e.run(0);
}

std::uint64_t gauss_binomial(int n, int k, int p) {
  if (k < 0 || k > n) return 0;
  // prod_{i=0}^{k-1} (p^{n-i} - 1) / (p^{k-i} - 1), computed iteratively in
  // a 128-bit accumulator to dodge intermediate overflow
  unsigned __int128 acc = 1;
  auto pow_u = [&](int e) {
    unsigned __int128 r = 1;
    for (int i = 0; i < e; ++i) r *= static_cast<unsigned>(p);
    return r;
  };
  for (int i = 0; i < k; ++i) acc *= pow_u(n - i) - 1;
  for (int i = 0; i < k; ++i) acc /= pow_u(k - i) - 1;
  if (acc > static_cast<unsigned __int128>(UINT64_MAX))
    throw ValueError("gauss_binomial overflow");
  return static_cast<std::uint64_t>(acc);
}

}  // namespace pclass2
