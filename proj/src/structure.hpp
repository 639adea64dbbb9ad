#pragma once

#include <string>
#include <vector>

#include "fdg.hpp"
#include "fp.hpp"

namespace pclass2 {

/// Two m x n matrices (A, B) over GF(p) presenting a group generated by two
/// elementary abelian halves X = <x_1..x_m, z1, z2> and Y = <y_1..y_n, z1, z2>
/// with [x_i, y_j] = z1^A(i,j) z2^B(i,j).
struct ScharlauPair {
  ScharlauPair(FpMatrix a, FpMatrix b);

  int p() const { return A.p(); }
  int m() const { return A.rows(); }
  int n() const { return A.cols(); }
  /// The normalized shape used in the literature has |m - n| <= 1.
  bool normalized_shape() const;

  FpMatrix A;
  FpMatrix B;
};

/// A group of odd prime exponent p and nilpotency class <= 2, presented by
/// structure constants: d generators spanning V = G/G', derived rank r, and
/// r antisymmetric d x d matrices with [x_i, x_j] = prod_k z_k^{mats[k](i,j)}.
///
/// Values are immutable after construction and compare entry-wise; whether
/// two structures present isomorphic groups is a separate question (see
/// is_isomorphic).
class CommutatorStructure {
public:
  CommutatorStructure(int p, int d, int r, std::vector<FpMatrix> mats);
  static CommutatorStructure zero(int p, int d, int r);

  int p() const { return p_; }
  int d() const { return d_; }
  int r() const { return r_; }
  const FpMatrix& mat(int k) const { return mats_[k]; }
  const std::vector<FpMatrix>& mats() const { return mats_; }

  bool operator==(const CommutatorStructure&) const = default;

private:
  int p_, d_, r_;
  std::vector<FpMatrix> mats_;
};

/// Block structure on m + n generators, x-block first: matrix k has the
/// off-diagonal blocks M, -M^T with M = A for k = 1 and M = B for k = 2.
CommutatorStructure from_scharlau(const ScharlauPair& sp);

CommutatorStructure from_digraph(const FlowDigraph& g);

/// Inverse presentation: edge (i, j) present iff some flow coordinate is
/// nonzero. from_digraph(to_digraph(cs)) == cs exactly.
FlowDigraph to_digraph(const CommutatorStructure& cs, const std::string& name = "G");

/// Re-presents the same group on new generators: column i of S expands the
/// new generator x'_i in the old ones, T rewrites derived coordinates
/// (new = T * old). New structure matrices are sum_l T(k,l) * S^T A_l S.
/// Throws SingularMatrix unless both S and T are invertible.
CommutatorStructure change_of_basis(const CommutatorStructure& cs, const FpMatrix& S,
                                    const FpMatrix& T);

/// [u, v] as a vector in W: coordinate k is u^T A_k v. Bilinear, alternating.
Vec commutator(const CommutatorStructure& cs, const Vec& u, const Vec& v);

/// {v : [v, u] = 0 for all u}, i.e. Z(G)/G' in coordinates.
Subspace radical(const CommutatorStructure& cs);

/// Span in W of all commutator values (a_1(i,j), ..., a_r(i,j)), i < j.
Subspace derived_span(const CommutatorStructure& cs);

/// Zero radical and full derived span, i.e. G' = Z(G) = Phi(G).
bool is_special(const CommutatorStructure& cs);

/// Result of splitting off the elementary abelian direct factor.
/// change_of_basis(input, S, T) equals `special` padded with abelian_dim
/// trailing zero generators and with the derived matrices beyond
/// special.r() identically zero.
struct StripResult {
  CommutatorStructure special;
  int abelian_dim;
  FpMatrix S;
  FpMatrix T;
};

/// Normalizes the derived span onto the leading coordinates of W, moves the
/// radical to the trailing generators, and drops both. The returned structure
/// is special.
StripResult strip_abelian_part(const CommutatorStructure& cs);

/// Structure induced on a subspace of V: entry (i, j) of matrix k is
/// b_i^T A_k b_j over the subspace basis.
CommutatorStructure restrict_to(const CommutatorStructure& cs, const std::vector<Vec>& basis);

}  // namespace pclass2
