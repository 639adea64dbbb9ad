#include "products.hpp"

#include <algorithm>

#include "catalog.hpp"

namespace pclass2 {

GluingMap::GluingMap(int source_rank_, int target_rank_, FpMatrix matrix_)
    : source_rank(source_rank_), target_rank(target_rank_), matrix(std::move(matrix_)) {
  if (matrix.rows() != target_rank || matrix.cols() != source_rank)
    throw RankMismatch("gluing map must be target_rank x source_rank");
  if (rank(matrix) != source_rank)
    throw ValueError("gluing map must have full column rank");
}

CommutatorStructure central_product(const std::vector<CommutatorStructure>& factors,
                                    const std::vector<GluingMap>& glue, int target_rank) {
  if (factors.empty()) throw ValueError("central product needs at least one factor");
  if (factors.size() != glue.size())
    throw ValueError("one gluing map per factor required");
  int p = factors[0].p();
  int d = 0;
  std::vector<Vec> glued_columns;
  for (size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].p() != p) throw ValueError("factors must share p");
    if (glue[i].source_rank != factors[i].r() || glue[i].target_rank != target_rank)
      throw RankMismatch("gluing map shape does not match factor " + std::to_string(i));
    for (int c = 0; c < glue[i].matrix.cols(); ++c) {
      Vec col(target_rank);
      for (int row = 0; row < target_rank; ++row)
        col[row] = static_cast<Fp>(glue[i].matrix.at(row, c));
      glued_columns.push_back(std::move(col));
    }
    d += factors[i].d();
  }
  if (Subspace::from_spanning(p, target_rank, glued_columns).dim() != target_rank)
    throw SpanDeficient("glued derived images do not span the product derived space");

  std::vector<FpMatrix> mats(target_rank, FpMatrix(p, d, d));
  int offset = 0;
  for (size_t b = 0; b < factors.size(); ++b) {
    const CommutatorStructure& f = factors[b];
    for (int i = 0; i < f.d(); ++i)
      for (int j = i + 1; j < f.d(); ++j) {
        for (int k = 0; k < target_rank; ++k) {
          long long acc = 0;
          for (int l = 0; l < f.r(); ++l) acc += glue[b].matrix.at(k, l) * f.mat(l).at(i, j);
          mats[k].set(offset + i, offset + j, acc);
          mats[k].set(offset + j, offset + i, -acc);
        }
      }
    offset += f.d();
  }
  return CommutatorStructure(p, d, target_rank, std::move(mats));
}

namespace {

/// Enumerates the reduced-row-echelon bases of all k-dimensional subspaces
/// of GF(p)^m in lexicographic pivot order. Returns false from the callback
/// to stop early.
template <typename Fn>
bool for_each_subspace(int m, int k, int p, Fn&& fn) {
  std::vector<int> pivots(k);
  for (int i = 0; i < k; ++i) pivots[i] = i;

  auto next_combination = [&]() {
    int i = k - 1;
    while (i >= 0 && pivots[i] == m - k + i) --i;
    if (i < 0) return false;
    ++pivots[i];
    for (int j = i + 1; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
    return true;
  };

  do {
    // free positions: (row t, col c) with c > pivots[t] and c not a pivot
    std::vector<std::pair<int, int>> free_pos;
    std::vector<bool> is_pivot(m, false);
    for (int c : pivots) is_pivot[c] = true;
    for (int t = 0; t < k; ++t)
      for (int c = pivots[t] + 1; c < m; ++c)
        if (!is_pivot[c]) free_pos.emplace_back(t, c);

    std::vector<Vec> basis(k, Vec(m, 0));
    for (int t = 0; t < k; ++t) basis[t][pivots[t]] = 1;
    std::vector<Fp> odo(free_pos.size(), 0);
    for (;;) {
      if (!fn(basis)) return false;
      size_t i = free_pos.size();
      while (i > 0) {
        auto [t, c] = free_pos[i - 1];
        if (++odo[i - 1] < p) {
          basis[t][c] = odo[i - 1];
          break;
        }
        odo[i - 1] = 0;
        basis[t][c] = 0;
        --i;
      }
      if (i == 0) break;
    }
  } while (next_combination());
  return true;
}

struct DecompositionSearch {
  const CommutatorStructure& cs;
  std::uint64_t cap;
  std::uint64_t candidates = 0;

  void charge() {
    if (++candidates > cap)
      throw BudgetExceeded("central decomposition candidate count exceeded " +
                           std::to_string(cap));
  }

  /// Splits the structure induced on `basis` (ambient coordinates) into
  /// indecomposable parts, deterministically.
  std::vector<std::vector<Vec>> split(const std::vector<Vec>& basis) {
    int m = static_cast<int>(basis.size());
    if (m <= 1) return {basis};
    CommutatorStructure sub = restrict_to(cs, basis);
    int p = cs.p();

    for (int k = 1; k <= m / 2; ++k) {
      std::vector<Vec> part1, part2;
      bool found = !for_each_subspace(m, k, p, [&](const std::vector<Vec>& v1) {
        charge();
        // orthogonal complement of V1 under every form
        std::vector<Vec> rows;
        for (const Vec& v : v1)
          for (int t = 0; t < sub.r(); ++t) rows.push_back(sub.mat(t).apply_transposed(v));
        FpMatrix row_mat(p, static_cast<int>(rows.size()), m);
        for (size_t i = 0; i < rows.size(); ++i)
          for (int j = 0; j < m; ++j) row_mat.set(static_cast<int>(i), j, rows[i][j]);
        Subspace v2 = kernel(row_mat);
        if (v2.dim() != m - k) return true;
        std::vector<Vec> stacked = v1;
        for (const Vec& v : v2.basis()) stacked.push_back(v);
        if (rref_in_place(p, stacked) != m) return true;  // V1 meets V2
        part1 = v1;
        part2 = v2.basis();
        return false;  // accept the first split in enumeration order
      });
      if (found) {
        auto to_ambient = [&](const std::vector<Vec>& local) {
          std::vector<Vec> out;
          for (const Vec& lv : local) {
            Vec av(cs.d(), 0);
            for (int t = 0; t < m; ++t)
              if (lv[t] != 0)
                for (int j = 0; j < cs.d(); ++j)
                  av[j] = static_cast<Fp>((av[j] + lv[t] * basis[t][j]) % p);
            out.push_back(std::move(av));
          }
          return out;
        };
        std::vector<std::vector<Vec>> result = split(to_ambient(part1));
        for (auto& part : split(to_ambient(part2))) result.push_back(std::move(part));
        return result;
      }
    }
    return {basis};
  }
};

}  // namespace

std::optional<Decomposition> find_central_decomposition(const CommutatorStructure& cs,
                                                        std::uint64_t max_candidates) {
  if (!is_special(cs)) throw ValueError("central decomposition requires a special structure");
  std::uint64_t total = 0;
  for (int k = 1; k <= cs.d() / 2; ++k) {
    total += gauss_binomial(cs.d(), k, cs.p());
    if (total > max_candidates)
      throw BudgetExceeded("subspace count " + std::to_string(total) +
                           " exceeds the decomposition budget");
  }

  std::vector<Vec> full;
  for (int i = 0; i < cs.d(); ++i) {
    Vec e(cs.d(), 0);
    e[i] = 1;
    full.push_back(std::move(e));
  }
  DecompositionSearch search{cs, max_candidates};
  std::vector<std::vector<Vec>> parts = search.split(full);
  if (parts.size() == 1) return std::nullopt;

  Decomposition dec;
  for (const auto& part : parts) {
    Subspace s = Subspace::from_spanning(cs.p(), cs.d(), part);
    dec.factors.push_back(restrict_to(cs, s.basis()));
    dec.parts.push_back(std::move(s));
  }

  // paranoia: a returned decomposition must actually be one
  int dim_total = 0;
  std::vector<Vec> all_rows;
  for (const Subspace& s : dec.parts) {
    dim_total += s.dim();
    for (const Vec& v : s.basis()) all_rows.push_back(v);
  }
  std::vector<Vec> probe = all_rows;
  if (dim_total != cs.d() || rref_in_place(cs.p(), probe) != cs.d())
    throw Error("internal: decomposition parts do not direct-sum to V");
  for (size_t i = 0; i < dec.parts.size(); ++i)
    for (size_t j = i + 1; j < dec.parts.size(); ++j)
      for (const Vec& u : dec.parts[i].basis())
        for (const Vec& v : dec.parts[j].basis())
          if (!is_zero_vec(commutator(cs, u, v)))
            throw Error("internal: cross-part commutator is nonzero");
  return dec;
}

std::vector<std::string> factor_multiset(const CommutatorStructure& cs,
                                         const SearchBudget& budget,
                                         std::uint64_t max_candidates) {
  std::optional<Decomposition> dec = find_central_decomposition(cs, max_candidates);
  std::vector<CommutatorStructure> factors;
  if (dec)
    factors = dec->factors;
  else
    factors.push_back(cs);

  std::vector<std::string> names;
  for (const CommutatorStructure& factor : factors) {
    StripResult st = strip_abelian_part(factor);
    if (st.abelian_dim != 0)
      throw Error("internal: factor of a special structure has a nonzero radical");
    bool matched = false;
    for (const std::string& name : indecomposable_names()) {
      CommutatorStructure candidate = catalog_build(name, cs.p());
      if (candidate.d() != st.special.d() || candidate.r() != st.special.r()) continue;
      if (is_isomorphic(st.special, candidate, budget).verdict == IsoVerdict::Iso) {
        names.push_back(name);
        matched = true;
        break;
      }
    }
    if (!matched)
      throw UnknownFactor("central factor on " + std::to_string(st.special.d()) +
                          " generators matches no catalog indecomposable");
  }
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace pclass2
