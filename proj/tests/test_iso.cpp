#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "catalog.hpp"
#include "helpers.hpp"
#include "iso.hpp"

using namespace pclass2;
using testutil::Rng;

namespace {

void check_witness(const CommutatorStructure& a, const CommutatorStructure& b,
                   const IsoResult& res) {
  REQUIRE(res.verdict == IsoVerdict::Iso);
  REQUIRE(res.witness.has_value());
  CHECK(change_of_basis(a, res.witness->S, res.witness->T) == b);
}

}  // namespace

TEST_CASE("a structure is isomorphic to itself via the identity") {
  CommutatorStructure cs = catalog_build("6.4.3", 3);
  IsoResult res = is_isomorphic(cs, cs);
  check_witness(cs, cs, res);
  CHECK(res.witness->S == FpMatrix::identity(3, 4));
}

TEST_CASE("basis-changed structures are isomorphic with a verified witness") {
  Rng rng(8301);
  for (const char* name : {"5.3.1", "6.4.4", "7.5.6", "8.6.12"}) {
    CommutatorStructure cs = catalog_build(name, 3);
    CommutatorStructure moved =
        change_of_basis(cs, testutil::random_invertible(rng, 3, cs.d()),
                        testutil::random_invertible(rng, 3, cs.r()));
    check_witness(cs, moved, is_isomorphic(cs, moved));
  }
}

TEST_CASE("6.4.3 and 6.4.4 are not isomorphic (exhaustive at d = 4)") {
  CommutatorStructure a = catalog_build("6.4.3", 3);
  CommutatorStructure b = catalog_build("6.4.4", 3);
  CHECK(is_isomorphic(a, b).verdict == IsoVerdict::NotIso);
  CHECK(is_isomorphic(b, a).verdict == IsoVerdict::NotIso);
}

TEST_CASE("symmetry on small catalog pairs") {
  std::vector<std::string> names{"3.2.1", "5.3.1", "6.4.2", "6.4.3", "6.4.4"};
  for (size_t i = 0; i < names.size(); ++i)
    for (size_t j = i; j < names.size(); ++j) {
      CommutatorStructure a = catalog_build(names[i], 3);
      CommutatorStructure b = catalog_build(names[j], 3);
      IsoVerdict ab = is_isomorphic(a, b).verdict;
      IsoVerdict ba = is_isomorphic(b, a).verdict;
      CHECK(ab == ba);
      CHECK(ab == (i == j ? IsoVerdict::Iso : IsoVerdict::NotIso));
    }
}

TEST_CASE("exhausting the budget is reported as Exhausted, never NotIso") {
  // a genuinely isomorphic pair that the invariant prescreen cannot settle
  Rng rng(8306);
  CommutatorStructure a = catalog_build("6.4.3", 3);
  CommutatorStructure b = change_of_basis(a, testutil::random_invertible(rng, 3, 4),
                                          testutil::random_invertible(rng, 3, 2));
  SearchBudget tiny;
  tiny.max_nodes = 2;
  CHECK(is_isomorphic(a, b, tiny).verdict == IsoVerdict::Exhausted);
}

TEST_CASE("different dimensions are never isomorphic") {
  CHECK(is_isomorphic(catalog_build("5.3.1", 3), catalog_build("6.4.3", 3)).verdict ==
        IsoVerdict::NotIso);
}

TEST_CASE("non-special structures are compared through their special parts") {
  Rng rng(8302);
  auto pad = [&](const CommutatorStructure& base, int extra) {
    int d = base.d() + extra;
    std::vector<FpMatrix> mats;
    for (const FpMatrix& m : base.mats()) {
      FpMatrix wide(base.p(), d, d);
      for (int i = 0; i < base.d(); ++i)
        for (int j = 0; j < base.d(); ++j) wide.set(i, j, m.at(i, j));
      mats.push_back(std::move(wide));
    }
    return CommutatorStructure(base.p(), d, base.r(), std::move(mats));
  };
  CommutatorStructure base = catalog_build("5.3.1", 3);
  CommutatorStructure a =
      change_of_basis(pad(base, 2), testutil::random_invertible(rng, 3, 5),
                      testutil::random_invertible(rng, 3, 2));
  CommutatorStructure b =
      change_of_basis(pad(base, 2), testutil::random_invertible(rng, 3, 5),
                      testutil::random_invertible(rng, 3, 2));
  check_witness(a, b, is_isomorphic(a, b));

  // mismatched abelian parts
  CommutatorStructure c = pad(base, 1);
  CommutatorStructure d = pad(catalog_build("6.4.2", 3), 0);
  CHECK(is_isomorphic(pad(c, 0), CommutatorStructure::zero(3, 4, 2)).verdict ==
        IsoVerdict::NotIso);
  CHECK(is_isomorphic(c, d).verdict == IsoVerdict::NotIso);
}

TEST_CASE("distinguish reports the first discriminating invariant") {
  CommutatorStructure g867 = catalog_build("8.6.7", 3);
  CommutatorStructure g868 = catalog_build("8.6.8", 3);
  DistinguishResult r = distinguish(g867, g868);
  CHECK(r.distinct);
  CHECK(r.invariant == "frequency");
  CHECK(frequency_vector(g867).counts == std::vector<std::int64_t>{1, 1, 2});
  CHECK(frequency_vector(g868).counts == std::vector<std::int64_t>{0, 3, 1});

  DistinguishResult tie = distinguish(catalog_build("8.6.11", 3), catalog_build("8.6.13", 3));
  CHECK(tie.distinct);
  CHECK(tie.invariant == "small-centralizer");

  CommutatorStructure cs = catalog_build("7.5.5", 3);
  Rng rng(8303);
  CommutatorStructure moved = change_of_basis(cs, testutil::random_invertible(rng, 3, 5),
                                              testutil::random_invertible(rng, 3, 2));
  DistinguishResult same = distinguish(cs, moved);
  CHECK(!same.distinct);
}

TEST_CASE("distinguish never contradicts a found witness") {
  Rng rng(8304);
  for (const char* name : {"5.3.1", "6.4.2", "6.4.3"}) {
    CommutatorStructure cs = catalog_build(name, 3);
    for (int trial = 0; trial < 30; ++trial) {
      CommutatorStructure moved =
          change_of_basis(cs, testutil::random_invertible(rng, 3, cs.d()),
                          testutil::random_invertible(rng, 3, cs.r()));
      CHECK(!distinguish(cs, moved).distinct);
    }
  }
}

TEST_CASE("classification at d = 3") {
  for (int p : {3, 5}) {
    std::vector<Orbit> orbits = classify_all(3, p);
    std::uint64_t total = 0, specials = 0;
    std::uint64_t group_order = gl_order(3, p) * gl_order(2, p);
    for (const Orbit& orbit : orbits) {
      total += orbit.size;
      if (orbit.special) ++specials;
      CHECK(group_order % orbit.size == 0);
    }
    std::uint64_t expected_total = 1;
    for (int i = 0; i < 6; ++i) expected_total *= static_cast<std::uint64_t>(p);
    CHECK(total == expected_total);
    CHECK(specials == 1);  // only 5.3.1
  }
}

TEST_CASE("the unique special orbit at d = 3 is 5.3.1") {
  std::vector<Orbit> orbits = classify_all(3, 3);
  for (const Orbit& orbit : orbits) {
    if (!orbit.special) continue;
    CHECK(is_isomorphic(orbit.rep, catalog_build("5.3.1", 3)).verdict == IsoVerdict::Iso);
  }
}

TEST_CASE("orbit co-membership agrees with the witness search at d = 3") {
  Rng rng(8305);
  std::vector<Orbit> orbits = classify_all(3, 3);
  // same-orbit pairs
  for (int trial = 0; trial < 12; ++trial) {
    const Orbit& orbit = orbits[testutil::rand_int(rng, 0, static_cast<int>(orbits.size()) - 1)];
    CommutatorStructure moved =
        change_of_basis(orbit.rep, testutil::random_invertible(rng, 3, 3),
                        testutil::random_invertible(rng, 3, 2));
    CHECK(is_isomorphic(orbit.rep, moved).verdict == IsoVerdict::Iso);
  }
  // cross-orbit pairs
  for (int trial = 0; trial < 12; ++trial) {
    int i = testutil::rand_int(rng, 0, static_cast<int>(orbits.size()) - 1);
    int j = testutil::rand_int(rng, 0, static_cast<int>(orbits.size()) - 1);
    if (i == j) continue;
    CHECK(is_isomorphic(orbits[i].rep, orbits[j].rep).verdict == IsoVerdict::NotIso);
  }
}

TEST_CASE("classification budget") {
  SearchBudget tiny;
  tiny.max_nodes = 100;
  CHECK_THROWS_AS(classify_all(3, 3, tiny), BudgetExceeded);
}

TEST_CASE("distinguish is silent on a thousand random orbit-mate pairs") {
  Rng rng(8307);
  for (int trial = 0; trial < 1000; ++trial) {
    int p = std::vector<int>{3, 5}[testutil::rand_int(rng, 0, 1)];
    int d = testutil::rand_int(rng, 2, 5);
    CommutatorStructure cs = testutil::random_structure(rng, p, d, 2);
    CommutatorStructure mate = change_of_basis(cs, testutil::random_invertible(rng, p, d),
                                               testutil::random_invertible(rng, p, 2));
    CHECK(!distinguish(cs, mate).distinct);
  }
}
