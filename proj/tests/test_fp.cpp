#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "catalog.hpp"
#include "fp.hpp"
#include "helpers.hpp"

using namespace pclass2;
using testutil::Rng;

TEST_CASE("modulus validation") {
  CHECK_THROWS_AS(FpMatrix(2, 1, 1), ValueError);
  CHECK_THROWS_AS(FpMatrix(9, 1, 1), ValueError);
  CHECK_THROWS_AS(FpMatrix(1, 1, 1), ValueError);
  CHECK_NOTHROW(FpMatrix(251, 1, 1));
  CHECK_THROWS_AS(FpMatrix(253, 1, 1), ValueError);  // 11 * 23
}

TEST_CASE("entries are reduced") {
  FpMatrix m(5, 2, 2);
  m.set(0, 1, -1);
  m.set(1, 0, 12);
  CHECK(m.at(0, 1) == 4);
  CHECK(m.at(1, 0) == 2);
}

TEST_CASE("rank examples") {
  CHECK(rank(FpMatrix(3, 3, 3)) == 0);
  CHECK(rank(FpMatrix::identity(5, 4)) == 4);

  FpMatrix anti(3, 3, 3);
  anti.set(0, 1, 1);
  anti.set(1, 0, 2);
  CHECK(rank(anti) == 2);
  CHECK(testutil::brute_rank(anti) == 2);
}

TEST_CASE("kernel examples") {
  CHECK(kernel(FpMatrix::identity(3, 3)).is_zero());
  CHECK(kernel(FpMatrix(5, 2, 2)) == Subspace::full(5, 2));

  // second structure matrix of 5.3.1
  FpMatrix a2 = catalog_build("5.3.1", 3).mat(1);
  Subspace k = kernel(a2);
  CHECK(k.dim() == 1);
  CHECK(testutil::brute_kernel_dim(a2) == 1);
  for (const Vec& b : k.basis()) CHECK(is_zero_vec(a2.apply(b)));
}

TEST_CASE("rank-nullity on random matrices") {
  Rng rng(7001);
  for (int trial = 0; trial < 200; ++trial) {
    int p = std::vector<int>{3, 5, 7}[testutil::rand_int(rng, 0, 2)];
    FpMatrix m = testutil::random_matrix(rng, p, testutil::rand_int(rng, 1, 6),
                                         testutil::rand_int(rng, 1, 6));
    CHECK(kernel(m).dim() + rank(m) == m.cols());
  }
}

TEST_CASE("antisymmetric matrices have even rank") {
  Rng rng(7002);
  for (int trial = 0; trial < 300; ++trial) {
    int p = std::vector<int>{3, 5, 7}[testutil::rand_int(rng, 0, 2)];
    FpMatrix m = testutil::random_antisymmetric(rng, p, testutil::rand_int(rng, 1, 7));
    CHECK(rank(m) % 2 == 0);
  }
}

TEST_CASE("invert examples") {
  CHECK(invert(FpMatrix::identity(3, 3)) == FpMatrix::identity(3, 3));

  FpMatrix diag = FpMatrix::from_rows(3, {{2, 0}, {0, 1}});
  CHECK(invert(diag) == diag);  // 2 * 2 = 4 = 1 mod 3

  Rng rng(7003);
  FpMatrix m = testutil::random_invertible(rng, 7, 4);
  CHECK(m.mul(invert(m)) == FpMatrix::identity(7, 4));
  CHECK(invert(m).mul(m) == FpMatrix::identity(7, 4));

  FpMatrix singular(3, 2, 2);
  singular.set(0, 0, 1);
  singular.set(1, 0, 1);
  CHECK(!try_invert(singular));
  CHECK_THROWS_AS(invert(singular), SingularMatrix);
}

TEST_CASE("subspace canonical form") {
  Rng rng(7004);
  for (int trial = 0; trial < 50; ++trial) {
    int p = 5, ambient = 5, dim = testutil::rand_int(rng, 1, 4);
    std::vector<Vec> basis;
    for (int i = 0; i < dim; ++i)
      basis.push_back(testutil::random_matrix(rng, p, 1, ambient).row(0));
    Subspace s1 = Subspace::from_spanning(p, ambient, basis);
    // respan with random invertible combinations
    FpMatrix coeff = testutil::random_invertible(rng, p, dim);
    std::vector<Vec> respanned;
    for (int i = 0; i < dim; ++i) {
      Vec v(ambient, 0);
      for (int j = 0; j < dim; ++j)
        for (int t = 0; t < ambient; ++t)
          v[t] = static_cast<Fp>((v[t] + coeff.at(i, j) * basis[j][t]) % p);
      respanned.push_back(std::move(v));
    }
    CHECK(s1 == Subspace::from_spanning(p, ambient, respanned));
    for (const Vec& v : respanned) CHECK(s1.contains(v));
  }
}

namespace {

std::uint64_t closure_size(const std::vector<FpMatrix>& gens, int d, int p) {
  auto encode = [&](const FpMatrix& m) {
    std::uint64_t code = 0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) code = code * p + m.at(i, j);
    return code;
  };
  std::set<std::uint64_t> seen;
  std::vector<FpMatrix> frontier = {FpMatrix::identity(p, d)};
  seen.insert(encode(frontier[0]));
  while (!frontier.empty()) {
    FpMatrix m = frontier.back();
    frontier.pop_back();
    for (const FpMatrix& g : gens) {
      FpMatrix next = m.mul(g);
      if (seen.insert(encode(next)).second) frontier.push_back(next);
    }
  }
  return seen.size();
}

}  // namespace

TEST_CASE("gl_generators generate the general linear group") {
  auto g1 = gl_generators(1, 3);
  REQUIRE(g1.size() == 1);
  CHECK(g1[0].at(0, 0) == 2);
  CHECK(closure_size(g1, 1, 3) == 2);

  auto g2 = gl_generators(2, 3);
  CHECK(g2.size() <= 3);
  for (const auto& g : g2) CHECK(try_invert(g));
  CHECK(closure_size(g2, 2, 3) == 48);

  auto g3 = gl_generators(3, 3);
  CHECK(closure_size(g3, 3, 3) == 11232);

  CHECK(closure_size(gl_generators(2, 5), 2, 5) == gl_order(2, 5));
}

TEST_CASE("gl_order formula") {
  CHECK(gl_order(1, 3) == 2);
  CHECK(gl_order(2, 3) == 48);
  CHECK(gl_order(3, 3) == 11232);
  CHECK(gl_order(4, 3) == 24261120);
}

TEST_CASE("enumerate_gl yields each invertible matrix once") {
  for (auto [d, p] :
       std::vector<std::pair<int, int>>{{1, 3}, {1, 7}, {2, 3}, {2, 5}, {2, 7}, {3, 3}}) {
    std::set<std::string> seen;
    std::uint64_t count = 0;
    enumerate_gl(d, p, std::uint64_t{1} << 20, [&](const FpMatrix& m) {
      ++count;
      CHECK(try_invert(m));
      seen.insert(m.to_string());
    });
    CHECK(count == gl_order(d, p));
    CHECK(seen.size() == count);
  }
}

TEST_CASE("enumerate_gl at d = 4 matches the order formula") {
  std::uint64_t count = 0;
  enumerate_gl(4, 3, std::uint64_t{1} << 32, [&](const FpMatrix&) { ++count; });
  CHECK(count == 24261120);
}

TEST_CASE("enumerate_gl budget") {
  CHECK_THROWS_AS(enumerate_gl(3, 3, 100, [](const FpMatrix&) {}), BudgetExceeded);
}

TEST_CASE("gauss_binomial") {
  CHECK(gauss_binomial(4, 2, 3) == 130);
  CHECK(gauss_binomial(7, 1, 3) == 1093);
  CHECK(gauss_binomial(7, 3, 3) == 925771);
  CHECK(gauss_binomial(3, 0, 5) == 1);
}

TEST_CASE("complete_to_basis") {
  Rng rng(7005);
  for (int trial = 0; trial < 30; ++trial) {
    int p = 3, ambient = 6;
    Subspace s = Subspace::from_spanning(
        p, ambient,
        {testutil::random_matrix(rng, p, 1, ambient).row(0),
         testutil::random_matrix(rng, p, 1, ambient).row(0)});
    FpMatrix full = complete_to_basis(p, ambient, s.basis());
    CHECK(try_invert(full));
    for (int i = 0; i < s.dim(); ++i)
      for (int j = 0; j < ambient; ++j) CHECK(full.at(i, j) == s.basis()[i][j]);
  }
}
