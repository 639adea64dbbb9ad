#include "structure.hpp"

#include <tuple>

namespace pclass2 {

ScharlauPair::ScharlauPair(FpMatrix a, FpMatrix b) : A(std::move(a)), B(std::move(b)) {
  if (A.p() != B.p() || A.rows() != B.rows() || A.cols() != B.cols())
    throw ValueError("Scharlau matrices must share modulus and shape");
}

bool ScharlauPair::normalized_shape() const { return std::abs(m() - n()) <= 1; }

CommutatorStructure::CommutatorStructure(int p, int d, int r, std::vector<FpMatrix> mats)
    : p_(p), d_(d), r_(r), mats_(std::move(mats)) {
  require_odd_prime(p);
  if (d < 0 || r < 0) throw ValueError("bad structure dimensions");
  if (static_cast<int>(mats_.size()) != r)
    throw ValueError("expected " + std::to_string(r) + " structure matrices");
  for (const FpMatrix& m : mats_) {
    if (m.p() != p || m.rows() != d || m.cols() != d)
      throw ValueError("structure matrix has wrong modulus or shape");
    if (!m.is_antisymmetric())
      throw ValueError("structure matrix is not antisymmetric with zero diagonal");
  }
}

CommutatorStructure CommutatorStructure::zero(int p, int d, int r) {
  return CommutatorStructure(p, d, r, std::vector<FpMatrix>(r, FpMatrix(p, d, d)));
}

CommutatorStructure from_scharlau(const ScharlauPair& sp) {
  int p = sp.p(), m = sp.m(), n = sp.n(), d = m + n;
  std::vector<FpMatrix> mats;
  for (const FpMatrix* block : {&sp.A, &sp.B}) {
    FpMatrix mat(p, d, d);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) {
        mat.set(i, m + j, block->at(i, j));
        mat.set(m + j, i, -block->at(i, j));
      }
    mats.push_back(std::move(mat));
  }
  return CommutatorStructure(p, d, 2, std::move(mats));
}

CommutatorStructure from_digraph(const FlowDigraph& g) {
  std::vector<FpMatrix> mats(g.r, FpMatrix(g.p, g.d, g.d));
  for (const FlowEdge& e : g.edges) {
    for (int k = 0; k < g.r; ++k) {
      mats[k].set(e.from - 1, e.to - 1, e.flow[k]);
      mats[k].set(e.to - 1, e.from - 1, -e.flow[k]);
    }
  }
  return CommutatorStructure(g.p, g.d, g.r, std::move(mats));
}

FlowDigraph to_digraph(const CommutatorStructure& cs, const std::string& name) {
  std::vector<std::tuple<int, int, std::vector<int>>> edges;
  for (int i = 0; i < cs.d(); ++i)
    for (int j = i + 1; j < cs.d(); ++j) {
      std::vector<int> flow(cs.r());
      bool nonzero = false;
      for (int k = 0; k < cs.r(); ++k) {
        flow[k] = cs.mat(k).at(i, j);
        nonzero = nonzero || flow[k] != 0;
      }
      if (nonzero) edges.emplace_back(i + 1, j + 1, std::move(flow));
    }
  return make_digraph(name, cs.p(), cs.r(), cs.d(), edges);
}

CommutatorStructure change_of_basis(const CommutatorStructure& cs, const FpMatrix& S,
                                    const FpMatrix& T) {
  if (S.p() != cs.p() || T.p() != cs.p()) throw ValueError("modulus mismatch");
  if (S.rows() != cs.d() || S.cols() != cs.d()) throw ValueError("S must be d x d");
  if (T.rows() != cs.r() || T.cols() != cs.r()) throw ValueError("T must be r x r");
  if (cs.d() > 0 && !try_invert(S)) throw SingularMatrix("change of basis needs invertible S");
  if (cs.r() > 0 && !try_invert(T)) throw SingularMatrix("change of basis needs invertible T");

  FpMatrix st = S.transpose();
  std::vector<FpMatrix> conj;
  conj.reserve(cs.r());
  for (int l = 0; l < cs.r(); ++l) conj.push_back(st.mul(cs.mat(l)).mul(S));

  std::vector<FpMatrix> mats;
  mats.reserve(cs.r());
  for (int k = 0; k < cs.r(); ++k) {
    FpMatrix acc(cs.p(), cs.d(), cs.d());
    for (int l = 0; l < cs.r(); ++l)
      if (T.at(k, l) != 0) acc = acc.add(conj[l].scaled(T.at(k, l)));
    mats.push_back(std::move(acc));
  }
  return CommutatorStructure(cs.p(), cs.d(), cs.r(), std::move(mats));
}

Vec commutator(const CommutatorStructure& cs, const Vec& u, const Vec& v) {
  if (static_cast<int>(u.size()) != cs.d() || static_cast<int>(v.size()) != cs.d())
    throw ValueError("commutator arguments must have length d");
  Vec out(cs.r());
  for (int k = 0; k < cs.r(); ++k) {
    long long acc = 0;
    const FpMatrix& a = cs.mat(k);
    for (int i = 0; i < cs.d(); ++i) {
      if (u[i] == 0) continue;
      long long row = 0;
      for (int j = 0; j < cs.d(); ++j) row += a.at(i, j) * v[j];
      acc += u[i] * (row % cs.p());
    }
    out[k] = static_cast<Fp>(fp_reduce(acc, cs.p()));
  }
  return out;
}

Subspace radical(const CommutatorStructure& cs) {
  // intersection of the kernels = kernel of the stacked matrix
  FpMatrix stacked(cs.p(), cs.r() * cs.d(), cs.d());
  for (int k = 0; k < cs.r(); ++k)
    for (int i = 0; i < cs.d(); ++i)
      for (int j = 0; j < cs.d(); ++j) stacked.set(k * cs.d() + i, j, cs.mat(k).at(i, j));
  return kernel(stacked);
}

Subspace derived_span(const CommutatorStructure& cs) {
  std::vector<Vec> values;
  for (int i = 0; i < cs.d(); ++i)
    for (int j = i + 1; j < cs.d(); ++j) {
      Vec w(cs.r());
      bool nonzero = false;
      for (int k = 0; k < cs.r(); ++k) {
        w[k] = static_cast<Fp>(cs.mat(k).at(i, j));
        nonzero = nonzero || w[k] != 0;
      }
      if (nonzero) values.push_back(std::move(w));
    }
  return Subspace::from_spanning(cs.p(), cs.r(), values);
}

bool is_special(const CommutatorStructure& cs) {
  return radical(cs).is_zero() && derived_span(cs).dim() == cs.r();
}

StripResult strip_abelian_part(const CommutatorStructure& cs) {
  int p = cs.p();

  // Rotate W so the derived span sits on the leading coordinates: the
  // trailing rows of T annihilate the span, so trailing matrices vanish.
  Subspace span = derived_span(cs);
  int r_kept = span.dim();
  FpMatrix T(p, cs.r(), cs.r());
  {
    FpMatrix span_rows(p, r_kept, cs.r());
    for (int i = 0; i < r_kept; ++i)
      for (int j = 0; j < cs.r(); ++j) span_rows.set(i, j, span.basis()[i][j]);
    Subspace annihilator = kernel(span_rows);
    std::vector<Vec> ann_rows = annihilator.basis();
    // leading rows: any completion of the annihilator to a basis, reordered
    // so the completion comes first
    FpMatrix completed = complete_to_basis(p, cs.r(), ann_rows);
    int n_ann = static_cast<int>(ann_rows.size());
    for (int i = 0; i < cs.r() - n_ann; ++i)
      for (int j = 0; j < cs.r(); ++j) T.set(i, j, completed.at(n_ann + i, j));
    for (int i = 0; i < n_ann; ++i)
      for (int j = 0; j < cs.r(); ++j) T.set(cs.r() - n_ann + i, j, completed.at(i, j));
  }
  CommutatorStructure normalized = change_of_basis(cs, FpMatrix::identity(p, cs.d()), T);

  // Move the radical to the trailing generators.
  Subspace rad = radical(normalized);
  int abelian = rad.dim();
  int d_kept = cs.d() - abelian;
  FpMatrix basis = complete_to_basis(p, cs.d(), rad.basis());
  FpMatrix S(p, cs.d(), cs.d());  // columns: complement first, then radical
  for (int i = 0; i < cs.d(); ++i) {
    for (int j = 0; j < d_kept; ++j) S.set(i, j, basis.at(abelian + j, i));
    for (int j = 0; j < abelian; ++j) S.set(i, d_kept + j, basis.at(j, i));
  }
  CommutatorStructure moved = change_of_basis(normalized, S, FpMatrix::identity(p, cs.r()));

  std::vector<FpMatrix> kept;
  for (int k = 0; k < r_kept; ++k) {
    FpMatrix m(p, d_kept, d_kept);
    for (int i = 0; i < d_kept; ++i)
      for (int j = 0; j < d_kept; ++j) m.set(i, j, moved.mat(k).at(i, j));
    kept.push_back(std::move(m));
  }
  StripResult out{CommutatorStructure(p, d_kept, r_kept, std::move(kept)), abelian, S, T};
  if (!is_special(out.special)) throw Error("internal: stripped structure is not special");
  return out;
}

CommutatorStructure restrict_to(const CommutatorStructure& cs, const std::vector<Vec>& basis) {
  int m = static_cast<int>(basis.size());
  std::vector<FpMatrix> mats;
  for (int k = 0; k < cs.r(); ++k) {
    FpMatrix mat(cs.p(), m, m);
    for (int i = 0; i < m; ++i) {
      Vec row = cs.mat(k).apply_transposed(basis[i]);
      for (int j = 0; j < m; ++j) {
        long long acc = 0;
        for (int t = 0; t < cs.d(); ++t) acc += row[t] * basis[j][t];
        mat.set(i, j, acc);
      }
    }
    mats.push_back(std::move(mat));
  }
  return CommutatorStructure(cs.p(), m, cs.r(), std::move(mats));
}

}  // namespace pclass2
