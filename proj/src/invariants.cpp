#include "invariants.hpp"

#include <algorithm>

namespace pclass2 {

std::vector<Vec> central_lines(int p, int r) {
  require_odd_prime(p);
  if (r < 1) throw ValueError("central_lines requires r >= 1");
  std::vector<Vec> lines;
  // first nonzero coordinate normalized to 1; enumerate the free tail in
  // odometer order so r = 2 yields (1,0), (1,1), ..., (1,p-1), (0,1)
  for (int lead = 0; lead < r; ++lead) {
    Vec v(r, 0);
    v[lead] = 1;
    for (;;) {
      lines.push_back(v);
      int k = r - 1;
      while (k > lead) {
        if (++v[k] < p) break;
        v[k] = 0;
        --k;
      }
      if (k == lead) break;
    }
  }
  return lines;
}

namespace {

void require_nonzero(const Vec& z) {
  if (is_zero_vec(z)) throw ValueError("central line spanned by the zero vector");
}

/// Any row vector (alpha, beta) with alpha z1 + beta z2 = 0, nonzero.
Vec annihilator_of_line(const Vec& z, int p) {
  return Vec{z[1], static_cast<Fp>((p - z[0]) % p)};
}

FpMatrix pencil_member(const CommutatorStructure& cs, const Vec& coeffs) {
  FpMatrix acc(cs.p(), cs.d(), cs.d());
  for (int k = 0; k < cs.r(); ++k)
    if (coeffs[k] != 0) acc = acc.add(cs.mat(k).scaled(coeffs[k]));
  return acc;
}

}  // namespace

CommutatorStructure quotient_structure(const CommutatorStructure& cs, const Vec& z) {
  if (cs.r() < 1) throw ValueError("quotient requires r >= 1");
  if (static_cast<int>(z.size()) != cs.r()) throw ValueError("line vector must have length r");
  require_nonzero(z);
  int p = cs.p(), r = cs.r();
  // basis of W with z first; the quotient takes coordinates 2..r of the
  // inverse-basis expansion
  FpMatrix basis_rows = complete_to_basis(p, r, {z});
  FpMatrix basis_cols = basis_rows.transpose();
  FpMatrix projector = invert(basis_cols);  // row k: coordinate along basis vector k
  std::vector<FpMatrix> mats;
  for (int k = 1; k < r; ++k) {
    FpMatrix acc(p, cs.d(), cs.d());
    for (int l = 0; l < r; ++l)
      if (projector.at(k, l) != 0) acc = acc.add(cs.mat(l).scaled(projector.at(k, l)));
    mats.push_back(std::move(acc));
  }
  return CommutatorStructure(p, cs.d(), r - 1, std::move(mats));
}

QuotientType quotient_type(const CommutatorStructure& cs, const Vec& z) {
  if (cs.r() != 2) throw ValueError("quotient_type requires r = 2");
  if (static_cast<int>(z.size()) != 2) throw ValueError("line vector must have length 2");
  require_nonzero(z);
  FpMatrix member = pencil_member(cs, annihilator_of_line(z, cs.p()));
  int n = rank(member) / 2;
  return QuotientType{n, cs.d() - 2 * n};
}

FrequencyVector frequency_vector(const CommutatorStructure& cs) {
  if (cs.r() != 2) throw ValueError("frequency_vector requires r = 2");
  FrequencyVector fv;
  fv.counts.assign(cs.d() / 2, 0);
  for (const Vec& z : central_lines(cs.p(), 2)) {
    int n = quotient_type(cs, z).n;
    if (n == 0)
      ++fv.zero_lines;
    else
      ++fv.counts[n - 1];
  }
  return fv;
}

namespace {

std::uint64_t projective_point_count(int d, int p) {
  std::uint64_t total = 0, power = 1;
  for (int i = 0; i < d; ++i) {
    total += power;
    power *= static_cast<std::uint64_t>(p);
  }
  return total;
}

/// Calls fn for every vector in V with first nonzero coordinate 1.
template <typename Fn>
void for_each_projective_point(int d, int p, Fn&& fn) {
  Vec v(d, 0);
  for (int lead = d - 1; lead >= 0; --lead) {
    std::fill(v.begin(), v.end(), 0);
    v[lead] = 1;
    for (;;) {
      fn(v);
      int k = d - 1;
      while (k > lead) {
        if (++v[k] < p) break;
        v[k] = 0;
        --k;
      }
      if (k == lead) break;
    }
  }
}

int point_rank(const CommutatorStructure& cs, const Vec& v) {
  std::vector<Vec> rows;
  rows.reserve(cs.r());
  for (int k = 0; k < cs.r(); ++k) rows.push_back(cs.mat(k).apply_transposed(v));
  return rref_in_place(cs.p(), rows);
}

void check_point_budget(const CommutatorStructure& cs, std::uint64_t max_points) {
  std::uint64_t count = projective_point_count(cs.d(), cs.p());
  if (count > max_points)
    throw BudgetExceeded("projective point count " + std::to_string(count) +
                         " exceeds the cap " + std::to_string(max_points));
}

}  // namespace

std::map<int, std::uint64_t> rank_signature(const CommutatorStructure& cs,
                                            std::uint64_t max_points) {
  check_point_budget(cs, max_points);
  std::map<int, std::uint64_t> signature;
  for_each_projective_point(cs.d(), cs.p(),
                            [&](const Vec& v) { ++signature[point_rank(cs, v)]; });
  return signature;
}

CentralizerFlags small_centralizer_properties(const CommutatorStructure& cs,
                                              std::uint64_t max_points) {
  check_point_budget(cs, max_points);
  std::vector<Vec> small;  // projective representatives with rank <= 1
  for_each_projective_point(cs.d(), cs.p(), [&](const Vec& v) {
    if (point_rank(cs, v) <= 1) small.push_back(v);
  });

  Subspace hull = Subspace::from_spanning(cs.p(), cs.d(), small);
  std::uint64_t hull_points = projective_point_count(hull.dim(), cs.p());
  // U (with 0) is closed under addition and scaling iff it fills its own span
  bool subspace = hull_points == small.size();

  bool commuting = true;
  for (size_t i = 0; i < small.size() && commuting; ++i)
    for (size_t j = i + 1; j < small.size(); ++j)
      if (!is_zero_vec(commutator(cs, small[i], small[j]))) {
        commuting = false;
        break;
      }
  return CentralizerFlags{subspace, commuting};
}

std::vector<LineProfile> center_preimage_profile(const CommutatorStructure& cs) {
  if (cs.r() != 2) throw ValueError("center_preimage_profile requires r = 2");
  std::vector<LineProfile> profile;
  for (const Vec& z : central_lines(cs.p(), 2)) {
    FpMatrix member = pencil_member(cs, annihilator_of_line(z, cs.p()));
    Subspace u_z = kernel(member);
    bool abelian = true;
    const auto& basis = u_z.basis();
    for (size_t i = 0; i < basis.size() && abelian; ++i)
      for (size_t j = i + 1; j < basis.size(); ++j)
        if (!is_zero_vec(commutator(cs, basis[i], basis[j]))) {
          abelian = false;
          break;
        }
    profile.push_back(LineProfile{z, rank(member) / 2, abelian});
  }
  return profile;
}

}  // namespace pclass2
