#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>

#include "catalog.hpp"
#include "fdg.hpp"
#include "helpers.hpp"
#include "iso.hpp"
#include "structure.hpp"

using namespace pclass2;
using testutil::Rng;

TEST_CASE("parse the extraspecial digraph") {
  FlowDigraph g = parse_fdg("group E3\np 3\nderived 1\ngens 2\nedge 1 2 1\n");
  CHECK(g.name == "E3");
  CHECK(g.p == 3);
  CHECK(g.r == 1);
  CHECK(g.d == 2);
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0] == FlowEdge{1, 2, {1}});

  CommutatorStructure cs = from_digraph(g);
  CHECK(cs.d() == 2);
  CHECK(cs.r() == 1);
  CHECK(cs.mat(0).at(0, 1) == 1);
}

TEST_CASE("comments, blank lines, negative exponents") {
  FlowDigraph g = parse_fdg(
      "# presentation of the order-p^5 group\n"
      "group G5   # name\n"
      "\n"
      "p 3\n"
      "derived 2\n"
      "gens 3\n"
      "edge 1 2 1 0\n"
      "edge 2 3 0 -1\n");
  REQUIRE(g.edges.size() == 2);
  CHECK(g.edges[1].flow == Vec{0, 2});
}

TEST_CASE("the group A digraph file presents group A") {
  FlowDigraph g = parse_fdg(
      "group A\np 3\nderived 2\ngens 7\n"
      "edge 1 2 1 0\nedge 2 3 0 1\nedge 3 4 1 0\nedge 4 5 0 1\nedge 6 7 1 0\n");
  IsoResult res = is_isomorphic(from_digraph(g), catalog_build("A", 3));
  CHECK(res.verdict == IsoVerdict::Iso);
}

TEST_CASE("reversed edges are normalized with negated flow") {
  FlowDigraph g = parse_fdg("group R\np 3\nderived 2\ngens 2\nedge 2 1 1 0\n");
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0] == FlowEdge{1, 2, {2, 0}});

  FlowDigraph a = parse_fdg("group R\np 5\nderived 1\ngens 3\nedge 3 1 2\n");
  FlowDigraph b = parse_fdg("group R\np 5\nderived 1\ngens 3\nedge 1 3 -2\n");
  CHECK(a == b);
}

TEST_CASE("rejections carry the offending line") {
  auto expect_error = [](const std::string& text, ParseErrorKind kind, int line) {
    try {
      parse_fdg(text);
      FAIL_CHECK("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.kind() == kind);
      CHECK(e.line() == line);
    }
  };
  expect_error("group G\np 4\nderived 1\ngens 2\n", ParseErrorKind::NotPrime, 2);
  expect_error("group G\np 2\nderived 1\ngens 2\n", ParseErrorKind::EvenPrime, 2);
  expect_error("group G\np 3\nderived 1\ngens 2\nedge 1 3 1\n", ParseErrorKind::IndexOutOfRange,
               5);
  expect_error("group G\np 3\nderived 1\ngens 2\nedge 1 2 0\n", ParseErrorKind::ZeroFlow, 5);
  expect_error("group G\np 3\nderived 1\ngens 3\nedge 1 2 1\nedge 2 1 2\n",
               ParseErrorKind::DuplicateEdge, 6);
  expect_error("group G\np 3\nderived 1\ngens 2\nedge 1 x 1\n", ParseErrorKind::Syntax, 5);
  expect_error("group G\np 3\nderived 1\n", ParseErrorKind::Syntax, 4);
  expect_error("group G\np 3\nderived 1\ngens 2\nedge 1 2\n", ParseErrorKind::Syntax, 5);
}

TEST_CASE("emit is canonical and parse round-trips") {
  FlowDigraph g = parse_fdg(
      "group X\np 3\nderived 2\ngens 4\n"
      "edge 3 4 0 1\n"
      "edge 2 1 1 1\n");
  std::string text = emit_fdg(g);
  CHECK(text ==
        "group X\n"
        "p 3\n"
        "derived 2\n"
        "gens 4\n"
        "edge 1 2 2 2\n"
        "edge 3 4 0 1\n");
  CHECK(parse_fdg(text) == g);

  FlowDigraph empty = parse_fdg("group E\np 5\nderived 2\ngens 3\n");
  CHECK(emit_fdg(empty) == "group E\np 5\nderived 2\ngens 3\n");
}

TEST_CASE("round-trip on random digraphs") {
  Rng rng(9001);
  for (int trial = 0; trial < 300; ++trial) {
    int p = std::vector<int>{3, 5, 7}[testutil::rand_int(rng, 0, 2)];
    FlowDigraph g = testutil::random_digraph(rng, p, testutil::rand_int(rng, 1, 3),
                                             testutil::rand_int(rng, 1, 7));
    CHECK(parse_fdg(emit_fdg(g)) == g);
  }
}

TEST_CASE("the digraph of group F is a 7-vertex path with alternating flows") {
  FlowDigraph g = to_digraph(catalog_build("F", 3), "F");
  REQUIRE(g.edges.size() == 6);

  // walk the path from a degree-1 vertex
  std::map<int, std::vector<int>> adjacent;
  for (const FlowEdge& e : g.edges) {
    adjacent[e.from].push_back(e.to);
    adjacent[e.to].push_back(e.from);
  }
  int degree_one = 0, start = 0;
  for (auto& [v, nbrs] : adjacent) {
    REQUIRE(nbrs.size() <= 2);
    if (nbrs.size() == 1) {
      ++degree_one;
      start = v;
    }
  }
  CHECK(degree_one == 2);
  CHECK(adjacent.size() == 7);

  auto flow_between = [&](int a, int b) {
    for (const FlowEdge& e : g.edges)
      if ((e.from == a && e.to == b) || (e.from == b && e.to == a)) return e.flow;
    return Vec{};
  };
  int prev = 0, at = start;
  std::vector<Vec> flows_along;
  while (flows_along.size() < 6) {
    int next = -1;
    for (int nbr : adjacent[at])
      if (nbr != prev) next = nbr;
    REQUIRE(next != -1);
    flows_along.push_back(flow_between(at, next));
    prev = at;
    at = next;
  }
  // flows alternate between z1 and z2 along the path
  CHECK(((flows_along[0] == Vec{1, 0} && flows_along[1] == Vec{0, 1}) ||
         (flows_along[0] == Vec{0, 1} && flows_along[1] == Vec{1, 0})));
  for (size_t i = 2; i < flows_along.size(); ++i)
    CHECK(flows_along[i] == flows_along[i - 2]);
}

TEST_CASE("dot export") {
  FlowDigraph e3 = parse_fdg("group E3\np 3\nderived 1\ngens 2\nedge 1 2 1\n");
  std::string dot = to_dot(e3);
  CHECK(dot.find("digraph \"E3\"") != std::string::npos);
  CHECK(dot.find("x1 -> x2 [label=\"z1\"]") != std::string::npos);

  // group D carries one flow with the nonresidue exponent at p = 3
  std::string d_dot = to_dot(to_digraph(catalog_build("D", 3), "D"));
  CHECK(std::count(d_dot.begin(), d_dot.end(), '>') == 6);
  CHECK(d_dot.find("^2") != std::string::npos);

  std::string lonely = to_dot(parse_fdg("group L\np 3\nderived 1\ngens 2\n"));
  CHECK(lonely.find("x2;") != std::string::npos);
  CHECK(lonely.find("->") == std::string::npos);

  // mixed flow renders with exponent suppression
  FlowDigraph mixed = parse_fdg("group M\np 5\nderived 2\ngens 2\nedge 1 2 1 3\n");
  CHECK(to_dot(mixed).find("label=\"z1 z2^3\"") != std::string::npos);
}
