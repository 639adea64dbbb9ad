#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "report.hpp"
#include "structure.hpp"

namespace pclass2 {

/// Monic cubic x^3 - a x^2 - b x - c, stored as the bottom row (c, b, a) of
/// its companion matrix.
struct Cubic {
  int c = 0;
  int b = 0;
  int a = 0;

  bool operator==(const Cubic&) const = default;
};

/// One named group: its Scharlau pair (as printed, parametrized by p through
/// the nu / cubic placeholders), the expected central factors with their
/// derived-group gluings, and the expected central-quotient frequency as a
/// linear formula in p.
struct CatalogEntry {
  std::string name;
  int order_exponent = 0;  // |G| = p^order_exponent
  std::vector<std::vector<int>> A;  // empty for the extraspecial entry 3.2.1
  std::vector<std::vector<int>> B;
  std::vector<std::string> factors;              // empty = indecomposable
  std::vector<std::vector<std::vector<int>>> glue;  // per factor, 2 x r_i grid
  std::vector<std::pair<int, int>> freq;  // per n = 1..floor(d/2): constant + coeff * p
  std::vector<int> part_dims;             // expected part dimensions, sorted

  bool indecomposable() const { return factors.empty(); }
  int derived_rank() const { return name == "3.2.1" ? 1 : 2; }
  int d() const { return order_exponent - derived_rank(); }
};

/// Placeholders usable inside entry grids, resolved per prime at build time.
inline constexpr int kNu = -1;      // least quadratic nonresidue
inline constexpr int kCubicC = -2;  // companion bottom row entries
inline constexpr int kCubicB = -3;
inline constexpr int kCubicA = -4;

const std::vector<CatalogEntry>& catalog_entries();
const CatalogEntry& catalog_entry(const std::string& name);  // throws UnknownName
std::vector<std::string> catalog_names();
const std::vector<std::string>& indecomposable_names();

int least_nonresidue(int p);
std::vector<int> all_nonresidues(int p);
Cubic least_irreducible_cubic(int p);
std::vector<Cubic> all_irreducible_cubics(int p);

CommutatorStructure catalog_build(const std::string& name, int p);
/// Same group with an explicit nonresidue / cubic choice (they are printed
/// as arbitrary; different choices give isomorphic groups).
CommutatorStructure catalog_build_with_params(const std::string& name, int p, int nu,
                                              const Cubic& cubic);
/// The entry's Scharlau pair resolved at p (not available for 3.2.1).
ScharlauPair catalog_pair(const std::string& name, int p);

std::vector<std::int64_t> expected_frequency(const CatalogEntry& entry, int p);

/// Checks every r = 2 entry's computed central-quotient frequency vector
/// against the printed formula evaluated at p.
Report verify_frequencies(int p);

/// Checks that all same-order entries are pairwise distinct, naming the
/// discriminating invariant: frequency vectors throughout, then the three
/// documented ties (8.6.11/8.6.13 by commuting small centralizers, D/F by
/// the subgroup test, A/E by the abelian preimage).
Report verify_pairwise_distinct(int p);

/// Replays the explicit change-of-variables chain that carries the generic
/// 7.5.6 * E_3 product (last edge glued along z1 z2) to group A, checking
/// every intermediate digraph.
Report replay_group_a_reduction(int p);

/// Checks the six order-p^9 entries' central decompositions: part dimension
/// multisets {5,2}, {3,2,2}, {3,2,2}, {4,3}, {4,3}, indecomposable, and the
/// expected factor multisets.
Report verify_partition_exhaustion(int p);

}  // namespace pclass2
