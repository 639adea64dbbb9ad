#pragma once

#include <string>
#include <vector>

#include "fp.hpp"

namespace pclass2 {

struct FlowEdge {
  int from = 0;  // 1-based generator indices, from < to after normalization
  int to = 0;
  Vec flow;      // nonzero exponent vector over the derived basis, length r

  bool operator==(const FlowEdge&) const = default;
};

/// A labeled digraph presenting a group: vertices are the generators
/// x1..xd, an edge (i, j) carries the commutator [x_i, x_j] as an exponent
/// vector over z1..zr, and a missing edge means the pair commutes.
///
/// Stored canonically: edges sorted by (from, to), from < to, flows reduced
/// and nonzero. Reversing an edge negates its flow, so every digraph has
/// exactly one stored form.
struct FlowDigraph {
  std::string name;
  int p = 3;
  int r = 0;
  int d = 0;
  std::vector<FlowEdge> edges;

  bool operator==(const FlowDigraph&) const = default;
};

/// Builds a canonical digraph from arbitrary edge data (either orientation,
/// unreduced exponents). Throws ValueError on invalid input.
FlowDigraph make_digraph(std::string name, int p, int r, int d,
                         const std::vector<std::tuple<int, int, std::vector<int>>>& edges);

/// Parses the .fdg format:
///
///   group <identifier>
///   p <odd prime>
///   derived <r>
///   gens <d>
///   edge <i> <j> <e1> ... <er>
///
/// '#' starts a comment, blank lines are skipped, and an edge with i > j is
/// stored as (j, i) with negated flow. Rejections carry a 1-based line number.
FlowDigraph parse_fdg(const std::string& text);

/// Canonical serialization; parse_fdg(emit_fdg(g)) == g exactly.
std::string emit_fdg(const FlowDigraph& g);

/// DOT export with edge labels like "z1 z2^2" (exponent 1 and factors with
/// exponent 0 are suppressed).
std::string to_dot(const FlowDigraph& g);

}  // namespace pclass2
