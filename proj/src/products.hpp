#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iso.hpp"
#include "structure.hpp"

namespace pclass2 {

/// Embeds a factor's derived space GF(p)^source_rank into the product's
/// shared derived space GF(p)^target_rank. Must have full column rank.
struct GluingMap {
  GluingMap(int source_rank, int target_rank, FpMatrix matrix);

  int source_rank;
  int target_rank;
  FpMatrix matrix;  // target_rank x source_rank
};

/// Central product with explicit derived-group gluing: generators are the
/// concatenated factor generators, commutators within block i are the factor
/// values pushed through glue[i], and cross-block commutators vanish.
/// Throws SpanDeficient unless the glued images jointly span the target
/// derived space, RankMismatch on shape disagreements.
CommutatorStructure central_product(const std::vector<CommutatorStructure>& factors,
                                    const std::vector<GluingMap>& glue, int target_rank);

/// A central decomposition of V: independent parts summing to V with all
/// cross-part commutators zero, together with the structures induced on the
/// parts (whose derived spans may be proper subspaces of W).
struct Decomposition {
  std::vector<Subspace> parts;
  std::vector<CommutatorStructure> factors;
};

inline constexpr std::uint64_t kDefaultSubspaceCap = 10'000'000;

/// Searches for a maximal central decomposition of a special structure.
/// Candidate parts V1 run over echelon bases of dimension 1..d/2 in
/// lexicographic pivot order; V2 is the two-form orthogonal complement, and
/// a split is accepted when V1 + V2 = V directly. Parts are refined
/// recursively. Returns nullopt for an indecomposable structure.
/// Throws BudgetExceeded when the subspace count exceeds max_candidates.
std::optional<Decomposition> find_central_decomposition(
    const CommutatorStructure& cs, std::uint64_t max_candidates = kDefaultSubspaceCap);

/// Names of the maximal central factors, sorted, with multiplicity: each
/// factor is stripped to its special part and matched against the
/// indecomposable catalog entries by witness search. Throws UnknownFactor
/// when a factor matches nothing.
std::vector<std::string> factor_multiset(const CommutatorStructure& cs,
                                         const SearchBudget& budget = {},
                                         std::uint64_t max_candidates = kDefaultSubspaceCap);

}  // namespace pclass2
