#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "invariants.hpp"
#include "structure.hpp"

namespace pclass2 {

struct SearchBudget {
  std::uint64_t max_nodes = 100'000'000;          // backtracking placements
  std::uint64_t max_gl_size = std::uint64_t{1} << 32;  // exhaustive GL enumeration cap
};

/// A verified isomorphism: change_of_basis(cs1, S, T) == cs2 entry-wise.
struct IsoWitness {
  FpMatrix S;
  FpMatrix T;
};

enum class IsoVerdict { Iso, NotIso, Exhausted };

/// NotIso is only reported when the pruned search space was fully exhausted;
/// running out of budget yields Exhausted, never NotIso.
struct IsoResult {
  IsoVerdict verdict;
  std::optional<IsoWitness> witness;
  std::uint64_t nodes = 0;
};

/// Searches for (S, T) in GL(d,p) x GL(r,p) carrying cs1 to cs2, column by
/// column: each pinned generator image adds linear constraints on T, and a
/// branch dies when the constraints become inconsistent, force T singular,
/// or the image's centralizer rank class mismatches. Non-special inputs are
/// stripped first and the witness is composed back through the strip maps.
IsoResult is_isomorphic(const CommutatorStructure& cs1, const CommutatorStructure& cs2,
                        const SearchBudget& budget = {});

/// Invariant-based separation. `distinct` is definitive; `invariant` names
/// the first discriminating invariant in the fixed order: basic dimensions,
/// frequency vector, rank signature, small-centralizer flags, preimage
/// profile. Inputs that agree on all of them come back Unknown (not
/// distinct) — never a false Distinct.
struct DistinguishResult {
  bool distinct = false;
  std::string invariant;  // empty when not distinct
  std::string detail;
};

DistinguishResult distinguish(const CommutatorStructure& cs1, const CommutatorStructure& cs2);

struct Orbit {
  CommutatorStructure rep;  // least structure of the orbit in encoding order
  std::uint64_t size = 0;
  bool special = false;
};

/// Partitions all r = 2 structures on d generators into
/// GL(d,p) x GL(2,p) orbits by breadth-first search over the generator
/// actions. Orbit sizes sum to p^(d(d-1)); representatives are the
/// encoding-least members, so the partition is deterministic.
std::vector<Orbit> classify_all(int d, int p, const SearchBudget& budget = {});

}  // namespace pclass2
