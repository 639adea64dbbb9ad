#pragma once

// Shared helpers for the test suites: deterministic random generators and
// brute-force oracles kept independent of the library's linear algebra.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "fdg.hpp"
#include "fp.hpp"
#include "structure.hpp"

namespace testutil {

using pclass2::CommutatorStructure;
using pclass2::FlowDigraph;
using pclass2::FpMatrix;
using pclass2::Vec;

using Rng = std::mt19937_64;

inline int rand_int(Rng& rng, int lo, int hi) {  // inclusive bounds
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline FpMatrix random_matrix(Rng& rng, int p, int rows, int cols) {
  FpMatrix m(p, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.set(i, j, rand_int(rng, 0, p - 1));
  return m;
}

inline FpMatrix random_antisymmetric(Rng& rng, int p, int d) {
  FpMatrix m(p, d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      int v = rand_int(rng, 0, p - 1);
      m.set(i, j, v);
      m.set(j, i, -v);
    }
  return m;
}

inline FpMatrix random_invertible(Rng& rng, int p, int d) {
  for (;;) {
    FpMatrix m = random_matrix(rng, p, d, d);
    if (d == 0 || pclass2::try_invert(m)) return m;
  }
}

inline CommutatorStructure random_structure(Rng& rng, int p, int d, int r) {
  std::vector<FpMatrix> mats;
  for (int k = 0; k < r; ++k) mats.push_back(random_antisymmetric(rng, p, d));
  return CommutatorStructure(p, d, r, std::move(mats));
}

inline FlowDigraph random_digraph(Rng& rng, int p, int r, int d) {
  std::vector<std::tuple<int, int, std::vector<int>>> edges;
  for (int i = 1; i <= d; ++i)
    for (int j = i + 1; j <= d; ++j) {
      if (rand_int(rng, 0, 2) != 0) continue;  // sparse
      std::vector<int> flow(r);
      bool nonzero = false;
      for (int k = 0; k < r; ++k) {
        flow[k] = rand_int(rng, 0, p - 1);
        nonzero = nonzero || flow[k] != 0;
      }
      if (!nonzero) flow[rand_int(rng, 0, r - 1)] = rand_int(rng, 1, p - 1);
      edges.emplace_back(i, j, std::move(flow));
    }
  return pclass2::make_digraph("R", p, r, d, edges);
}

/// Rank via the row span: enumerates all p^rows row combinations and counts
/// the distinct vectors, so it shares no code path with Gaussian elimination.
inline int brute_rank(const FpMatrix& m) {
  int p = m.p();
  std::set<std::vector<int>> span;
  std::vector<int> coeff(m.rows(), 0);
  for (;;) {
    std::vector<int> combo(m.cols(), 0);
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) combo[j] = (combo[j] + coeff[i] * m.at(i, j)) % p;
    span.insert(combo);
    int k = static_cast<int>(coeff.size()) - 1;
    while (k >= 0 && ++coeff[k] == p) coeff[k--] = 0;
    if (k < 0) break;
  }
  int rank = 0;
  std::uint64_t count = span.size();
  while (count > 1) {
    count /= static_cast<std::uint64_t>(p);
    ++rank;
  }
  return rank;
}

/// Kernel dimension by direct enumeration of all p^cols vectors.
inline int brute_kernel_dim(const FpMatrix& m) {
  int p = m.p();
  std::uint64_t solutions = 0;
  std::vector<int> v(m.cols(), 0);
  for (;;) {
    bool zero = true;
    for (int i = 0; i < m.rows() && zero; ++i) {
      int acc = 0;
      for (int j = 0; j < m.cols(); ++j) acc = (acc + m.at(i, j) * v[j]) % p;
      zero = acc == 0;
    }
    if (zero) ++solutions;
    int k = static_cast<int>(v.size()) - 1;
    while (k >= 0 && ++v[k] == p) v[k--] = 0;
    if (k < 0) break;
  }
  int dim = 0;
  while (solutions > 1) {
    solutions /= static_cast<std::uint64_t>(p);
    ++dim;
  }
  return dim;
}

}  // namespace testutil
