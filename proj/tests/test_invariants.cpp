#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "catalog.hpp"
#include "helpers.hpp"
#include "invariants.hpp"
#include "structure.hpp"

using namespace pclass2;
using testutil::Rng;

TEST_CASE("central lines in the documented order") {
  std::vector<Vec> lines3 = central_lines(3, 2);
  CHECK(lines3 == std::vector<Vec>{{1, 0}, {1, 1}, {1, 2}, {0, 1}});
  CHECK(central_lines(5, 2).size() == 6);
  CHECK(central_lines(3, 1) == std::vector<Vec>{{1}});
  CHECK(central_lines(3, 3).size() == 13);
}

TEST_CASE("quotient structures") {
  CommutatorStructure g531 = catalog_build("5.3.1", 3);
  CommutatorStructure q = quotient_structure(g531, {1, 0});
  CHECK(q.r() == 1);
  CHECK(q.d() == 3);
  CHECK(rank(q.mat(0)) == 2);          // Z_p x E_3
  CHECK(radical(q).dim() == 1);
  CHECK(derived_span(q).dim() == 1);

  // quotient out the remaining line: elementary abelian of rank d
  CommutatorStructure qq = quotient_structure(q, {1});
  CHECK(qq.r() == 0);
  CHECK(radical(qq) == Subspace::full(3, 3));

  // the projection along z1 keeps exactly the z2 coefficients
  CommutatorStructure g642 = catalog_build("6.4.2", 3);
  CommutatorStructure q642 = quotient_structure(g642, {1, 0});
  CHECK(q642.mat(0) == g642.mat(1));
  CHECK(rank(q642.mat(0)) == 2);
  CHECK(testutil::brute_rank(q642.mat(0)) == 2);

  CHECK_THROWS_AS(quotient_structure(g531, {0, 0}), ValueError);
}

TEST_CASE("quotient types") {
  for (int p : {3, 5}) {
    CommutatorStructure g531 = catalog_build("5.3.1", p);
    for (const Vec& z : central_lines(p, 2)) {
      QuotientType qt = quotient_type(g531, z);
      CHECK(qt.n == 1);
      CHECK(qt.abelian_rank == 1);
    }
  }

  // both annihilator coordinates nonzero: line (1, c) with c != 0
  CommutatorStructure g642 = catalog_build("6.4.2", 3);
  CHECK(quotient_type(g642, {1, 2}).n == 2);
  CHECK(quotient_type(g642, {1, 0}).n == 1);

  CommutatorStructure zero = CommutatorStructure::zero(3, 2, 2);
  CHECK(quotient_type(zero, {1, 1}).n == 0);
  CHECK(quotient_type(zero, {1, 1}).abelian_rank == 2);
}

TEST_CASE("quotient type agrees with the projected-matrix rank") {
  Rng rng(8201);
  for (int trial = 0; trial < 60; ++trial) {
    int p = std::vector<int>{3, 5}[testutil::rand_int(rng, 0, 1)];
    CommutatorStructure cs = testutil::random_structure(rng, p, testutil::rand_int(rng, 2, 5), 2);
    for (const Vec& z : central_lines(p, 2)) {
      CommutatorStructure q = quotient_structure(cs, z);
      CHECK(quotient_type(cs, z).n * 2 == rank(q.mat(0)));
    }
  }
}

TEST_CASE("quotients of special structures have derived rank exactly one") {
  for (const std::string& name : catalog_names()) {
    CommutatorStructure cs = catalog_build(name, 3);
    if (cs.r() != 2) continue;
    for (const Vec& z : central_lines(3, 2))
      CHECK(derived_span(quotient_structure(cs, z)).dim() == 1);
  }
}

TEST_CASE("frequency vectors from the tables") {
  FrequencyVector f531 = frequency_vector(catalog_build("5.3.1", 3));
  CHECK(f531.counts == std::vector<std::int64_t>{4});  // (p+1)
  CHECK(f531.zero_lines == 0);

  CHECK(frequency_vector(catalog_build("8.6.8", 5)).counts ==
        std::vector<std::int64_t>{0, 3, 3});  // (0, 3, p-2)
  CHECK(frequency_vector(catalog_build("A", 3)).counts ==
        std::vector<std::int64_t>{0, 1, 3});  // (0, 1, p)
}

TEST_CASE("line tallies always sum to p + 1") {
  Rng rng(8202);
  for (int trial = 0; trial < 80; ++trial) {
    int p = std::vector<int>{3, 5, 7}[testutil::rand_int(rng, 0, 2)];
    CommutatorStructure cs = testutil::random_structure(rng, p, testutil::rand_int(rng, 1, 6), 2);
    FrequencyVector fv = frequency_vector(cs);
    std::int64_t total = fv.zero_lines;
    for (auto c : fv.counts) total += c;
    CHECK(total == p + 1);
  }
}

TEST_CASE("rank signatures") {
  auto zero_sig = rank_signature(CommutatorStructure::zero(3, 3, 2));
  CHECK(zero_sig == std::map<int, std::uint64_t>{{0, 13}});

  // 13 projective points for 5.3.1 at p = 3; the commuting plane carries
  // the four rank <= 1 points
  auto sig531 = rank_signature(catalog_build("5.3.1", 3));
  CHECK(sig531 == std::map<int, std::uint64_t>{{1, 4}, {2, 9}});

  auto sig_e3 = rank_signature(catalog_build("3.2.1", 3));
  CHECK(sig_e3 == std::map<int, std::uint64_t>{{1, 4}});

  CHECK_THROWS_AS(rank_signature(catalog_build("A", 3), 10), BudgetExceeded);
}

TEST_CASE("small centralizer properties separate the documented pairs") {
  CHECK(small_centralizer_properties(catalog_build("D", 3)).is_subspace);
  CHECK(!small_centralizer_properties(catalog_build("F", 3)).is_subspace);
  CHECK(small_centralizer_properties(catalog_build("8.6.13", 3)).is_commuting);
  CHECK(!small_centralizer_properties(catalog_build("8.6.11", 3)).is_commuting);
}

TEST_CASE("center preimage profiles") {
  // 5.3.1 mod <z1>: the preimage of the quotient center is abelian
  auto profile531 = center_preimage_profile(catalog_build("5.3.1", 3));
  REQUIRE(profile531.size() == 4);
  CHECK(profile531[0].line == Vec{1, 0});
  CHECK(profile531[0].n == 1);
  CHECK(profile531[0].preimage_abelian);

  auto unique_n2 = [](const std::vector<LineProfile>& profile) {
    const LineProfile* found = nullptr;
    int count = 0;
    for (const auto& lp : profile)
      if (lp.n == 2) {
        found = &lp;
        ++count;
      }
    REQUIRE(count == 1);
    return *found;
  };

  // groups A and E share frequencies; the abelian preimage separates them
  auto a_line = unique_n2(center_preimage_profile(catalog_build("A", 3)));
  CHECK(!a_line.preimage_abelian);
  auto e_line = unique_n2(center_preimage_profile(catalog_build("E", 3)));
  CHECK(e_line.preimage_abelian);
}

TEST_CASE("invariants are stable under changes of basis") {
  Rng rng(8203);
  for (int p : {3, 5, 7}) {
    for (const char* name : {"5.3.1", "6.4.4", "8.6.11", "F"}) {
      CommutatorStructure cs = catalog_build(name, p);
      FrequencyVector freq = frequency_vector(cs);
      auto sig = rank_signature(cs);
      CentralizerFlags flags = small_centralizer_properties(cs);
      auto profile_key = [](const CommutatorStructure& g) {
        std::vector<std::pair<int, bool>> key;
        for (const auto& lp : center_preimage_profile(g))
          key.emplace_back(lp.n, lp.preimage_abelian);
        std::sort(key.begin(), key.end());
        return key;
      };
      auto profile = profile_key(cs);
      int trials = p == 3 ? 5 : 3;
      for (int trial = 0; trial < trials; ++trial) {
        CommutatorStructure moved =
            change_of_basis(cs, testutil::random_invertible(rng, p, cs.d()),
                            testutil::random_invertible(rng, p, cs.r()));
        CHECK(frequency_vector(moved) == freq);
        CHECK(rank_signature(moved) == sig);
        CHECK(small_centralizer_properties(moved) == flags);
        CHECK(profile_key(moved) == profile);
      }
    }
  }
}
