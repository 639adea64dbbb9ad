#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "structure.hpp"

namespace pclass2 {

/// Isomorphism type of a central quotient G/<z>: Z_p^abelian_rank x E_{2n+1}.
struct QuotientType {
  int n = 0;
  int abelian_rank = 0;

  bool operator==(const QuotientType&) const = default;
};

/// Tally of quotient types over all central lines. counts[i] is the number
/// of lines whose quotient has half-rank n = i + 1; zero_lines counts n = 0
/// (possible only for non-special inputs). For r = 2 the totals sum to p + 1.
struct FrequencyVector {
  std::vector<std::int64_t> counts;
  std::int64_t zero_lines = 0;

  bool operator==(const FrequencyVector&) const = default;
};

inline constexpr std::uint64_t kDefaultPointCap = 1u << 20;

/// One normalized representative (first nonzero coordinate 1) per
/// 1-dimensional subspace of GF(p)^r. For r = 2 the order is
/// (1,0), (1,1), ..., (1,p-1), (0,1).
std::vector<Vec> central_lines(int p, int r);

/// Structure of G/<z>: same d, derived rank r - 1, values pushed through a
/// projection of W along z. Throws ValueError on a zero vector.
CommutatorStructure quotient_structure(const CommutatorStructure& cs, const Vec& z);

/// For r = 2: n = rank(alpha A1 + beta A2) / 2 with (alpha, beta) spanning
/// the annihilator of z; abelian_rank = d - 2n.
QuotientType quotient_type(const CommutatorStructure& cs, const Vec& z);

FrequencyVector frequency_vector(const CommutatorStructure& cs);

/// For each projective point v of V, the rank of u -> [v, u] (the codimension
/// of the centralizer of v), returned as multiplicities per rank. Throws
/// BudgetExceeded when the projective point count exceeds max_points.
std::map<int, std::uint64_t> rank_signature(const CommutatorStructure& cs,
                                            std::uint64_t max_points = kDefaultPointCap);

/// Properties of U = {v : rank of u -> [v, u] <= 1}, the elements whose
/// centralizer has index at most p.
struct CentralizerFlags {
  bool is_subspace = false;
  bool is_commuting = false;

  bool operator==(const CentralizerFlags&) const = default;
};

CentralizerFlags small_centralizer_properties(const CommutatorStructure& cs,
                                              std::uint64_t max_points = kDefaultPointCap);

/// Per central line: the radical U_z of the projected form (the preimage of
/// the center of G/<z> modulo G'), its half-rank n, and whether the
/// commutator vanishes identically on U_z x U_z (in W, not merely mod z).
struct LineProfile {
  Vec line;
  int n = 0;
  bool preimage_abelian = false;

  bool operator==(const LineProfile&) const = default;
};

std::vector<LineProfile> center_preimage_profile(const CommutatorStructure& cs);

}  // namespace pclass2
