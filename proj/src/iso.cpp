#include "iso.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>

namespace pclass2 {

namespace {

// ---------------------------------------------------------------------------
// Column search for a witness between two special structures.
// ---------------------------------------------------------------------------

struct BudgetAbort {};

/// Incremental solver for the constraints T * w = w' with T invertible.
/// Sources are kept echelonized; each stored source carries the image the
/// constraints force on it. A new constraint either reduces to a consistency
/// check, or extends the solved span — and forces T singular (prune) when
/// the new image is dependent on the stored ones.
class TSolver {
public:
  TSolver(int p, int r) : p_(p), r_(r) {}

  int rank() const { return static_cast<int>(rows_.size()); }
  size_t mark() const { return rows_.size(); }
  void rollback(size_t mark) {
    rows_.resize(mark);
    image_echelon_.resize(mark);
  }

  bool add(Vec w, Vec image) {
    for (const auto& [src, img] : rows_) {
      int lead = leading_index(src);
      if (w[lead] == 0) continue;
      int f = p_ - w[lead];
      add_scaled(w, src, f);
      add_scaled(image, img, f);
    }
    if (is_zero_vec(w)) return is_zero_vec(image);  // dependent source: consistency only
    normalize_on(w, image);
    // reject images dependent on already-forced ones: T would kill a vector
    Vec probe = image;
    for (const Vec& e : image_echelon_) {
      int lead = leading_index(e);
      if (probe[lead] == 0) continue;
      add_scaled(probe, e, p_ - probe[lead]);
    }
    if (is_zero_vec(probe)) return false;
    normalize(probe);
    rows_.emplace_back(std::move(w), std::move(image));
    image_echelon_.push_back(std::move(probe));
    return true;
  }

  /// If target lies in the span of the forced images, returns the source
  /// combination T^-1 * target (well-defined on the solved span).
  std::optional<Vec> preimage(const Vec& target) const {
    int m = static_cast<int>(rows_.size());
    // solve images * c = target, then combine the sources with c
    std::vector<Vec> aug;
    for (int i = 0; i < r_; ++i) {
      Vec row(m + 1, 0);
      for (int t = 0; t < m; ++t) row[t] = rows_[t].second[i];
      row[m] = target[i];
      aug.push_back(std::move(row));
    }
    rref_in_place(p_, aug);
    Vec coeff(m, 0);
    for (const Vec& row : aug) {
      int lead = 0;
      while (lead <= m && row[lead] == 0) ++lead;
      if (lead == m) return std::nullopt;  // inconsistent: target outside the span
      if (lead < m) coeff[lead] = row[m];
    }
    Vec combo(r_, 0);
    for (int t = 0; t < m; ++t)
      for (int i = 0; i < r_; ++i)
        combo[i] = static_cast<Fp>((combo[i] + coeff[t] * rows_[t].first[i]) % p_);
    return combo;
  }

  /// T mapping every stored source to its image, extended arbitrarily (but
  /// invertibly) on a complement. Exact when rank() == r.
  FpMatrix solve() const {
    std::vector<Vec> sources, images;
    for (const auto& [src, img] : rows_) {
      sources.push_back(src);
      images.push_back(img);
    }
    FpMatrix full_src = complete_to_basis(p_, r_, sources);
    // complete the images against what is already forced
    std::vector<Vec> img_rows = images;
    rref_in_place(p_, img_rows);
    std::vector<Vec> completion;
    for (int i = 0; i < r_ && static_cast<int>(images.size()) < r_; ++i) {
      Vec e(r_, 0);
      e[i] = 1;
      std::vector<Vec> probe = img_rows;
      probe.push_back(e);
      if (rref_in_place(p_, probe) > static_cast<int>(img_rows.size())) {
        img_rows = std::move(probe);
        images.push_back(e);
      }
    }
    FpMatrix src_cols(p_, r_, r_), img_cols(p_, r_, r_);
    for (int j = 0; j < r_; ++j)
      for (int i = 0; i < r_; ++i) {
        src_cols.set(i, j, full_src.at(j, i));
        img_cols.set(i, j, images[j][i]);
      }
    return img_cols.mul(invert(src_cols));
  }

private:
  static int leading_index(const Vec& v) {
    int i = 0;
    while (v[i] == 0) ++i;
    return i;
  }
  void add_scaled(Vec& target, const Vec& src, int factor) const {
    for (size_t i = 0; i < target.size(); ++i)
      target[i] = static_cast<Fp>((target[i] + factor * src[i]) % p_);
  }
  void normalize(Vec& v) const {
    int inv = fp_inverse(v[leading_index(v)], p_);
    for (auto& x : v) x = static_cast<Fp>(x * inv % p_);
  }
  void normalize_on(Vec& v, Vec& along) const {
    int inv = fp_inverse(v[leading_index(v)], p_);
    for (auto& x : v) x = static_cast<Fp>(x * inv % p_);
    for (auto& x : along) x = static_cast<Fp>(x * inv % p_);
  }

  int p_, r_;
  std::vector<std::pair<Vec, Vec>> rows_;  // echelonized source with forced image
  std::vector<Vec> image_echelon_;
};

std::uint64_t pow_u64_checked(int base, int exp, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (int i = 0; i < exp; ++i) {
    if (v > cap / static_cast<std::uint64_t>(base)) return cap + 1;
    v *= static_cast<std::uint64_t>(base);
  }
  return v;
}

class WitnessSearch {
public:
  WitnessSearch(const CommutatorStructure& a, const CommutatorStructure& b,
                const SearchBudget& budget)
      : a_(a), b_(b), p_(a.p()), d_(a.d()), r_(a.r()), budget_(budget), solver_(p_, r_) {}

  IsoResult run() {
    if (d_ == 0) return finish_trivial();
    // the per-vector rank table needs p^d entries; beyond that the search
    // cannot even start, which counts as running out of budget
    if (pow_u64_checked(p_, d_, std::uint64_t{1} << 26) > (std::uint64_t{1} << 26))
      return {IsoVerdict::Exhausted, std::nullopt, 0};
    build_rank_tables();
    if (ranks_differ_) return {IsoVerdict::NotIso, std::nullopt, nodes_};
    choose_order();

    columns_.assign(d_, Vec());
    placed_rows_.assign(d_, {});
    try {
      if (dfs(0)) {
        IsoWitness w{assemble_S(), solver_.solve()};
        if (change_of_basis(a_, w.S, w.T) != b_)
          throw Error("internal: witness failed validation");
        return {IsoVerdict::Iso, std::move(w), nodes_};
      }
    } catch (const BudgetAbort&) {
      return {IsoVerdict::Exhausted, std::nullopt, nodes_};
    }
    return {IsoVerdict::NotIso, std::nullopt, nodes_};
  }

private:
  IsoResult finish_trivial() {
    IsoWitness w{FpMatrix::identity(p_, 0), FpMatrix::identity(p_, r_)};
    return {IsoVerdict::Iso, std::move(w), 0};
  }

  std::uint64_t encode(const Vec& v) const {
    std::uint64_t code = 0, power = 1;
    for (int i = 0; i < d_; ++i) {
      code += power * v[i];
      power *= static_cast<std::uint64_t>(p_);
    }
    return code;
  }
  Vec decode(std::uint64_t code) const {
    Vec v(d_);
    for (int i = 0; i < d_; ++i) {
      v[i] = static_cast<Fp>(code % p_);
      code /= p_;
    }
    return v;
  }

  int vector_rank(const CommutatorStructure& cs, const Vec& v) const {
    std::vector<Vec> rows;
    rows.reserve(r_);
    for (int k = 0; k < r_; ++k) rows.push_back(cs.mat(k).apply_transposed(v));
    return rref_in_place(p_, rows);
  }

  void build_rank_tables() {
    std::uint64_t total = pow_u64_checked(p_, d_, UINT64_MAX);
    class_of_.assign(total, 0);
    std::vector<std::uint64_t> count_a(r_ + 1, 0), count_b(r_ + 1, 0);
    for (std::uint64_t c = 1; c < total; ++c) {
      Vec v = decode(c);
      int rk = vector_rank(a_, v);
      class_of_[c] = static_cast<std::uint8_t>(rk);
      ++count_a[rk];
      ++count_b[vector_rank(b_, v)];
    }
    ranks_differ_ = count_a != count_b;
    if (ranks_differ_) return;
    buckets_.assign(r_ + 1, {});
    for (std::uint64_t c = 1; c < total; ++c) buckets_[class_of_[c]].push_back(c);
    target_class_.resize(d_);
    for (int j = 0; j < d_; ++j) {
      Vec e(d_, 0);
      e[j] = 1;
      target_class_[j] = vector_rank(b_, e);
    }
    // rank of the joint row span of two generators: S carries it, T fixes it
    target_pair_rank_.assign(d_, std::vector<int>(d_, 0));
    for (int i = 0; i < d_; ++i)
      for (int j = i + 1; j < d_; ++j) {
        std::vector<Vec> rows;
        for (int k = 0; k < r_; ++k) {
          Vec ei(d_, 0), ej(d_, 0);
          ei[i] = 1;
          ej[j] = 1;
          rows.push_back(b_.mat(k).apply_transposed(ei));
          rows.push_back(b_.mat(k).apply_transposed(ej));
        }
        target_pair_rank_[i][j] = target_pair_rank_[j][i] = rref_in_place(p_, rows);
      }
  }

  void choose_order() {
    // Each placed column of rank class c later contributes about c linear
    // constraint rows per level, so the expected branching of position j is
    // bucket(class_j) / p^class_j. Placing cheap positions first keeps every
    // partial product of branching factors small; ties prefer positions
    // adjacent to already-ordered ones (their pair values pin T sooner).
    order_.clear();
    std::vector<bool> used(d_, false);
    auto value_nonzero = [&](int i, int j) {
      for (int k = 0; k < r_; ++k)
        if (b_.mat(k).at(i, j) != 0) return true;
      return false;
    };
    for (int step = 0; step < d_; ++step) {
      int best = -1;
      double best_cost = 0;
      int best_links = -1;
      for (int j = 0; j < d_; ++j) {
        if (used[j]) continue;
        double cost = static_cast<double>(buckets_[target_class_[j]].size());
        for (int t = 0; t < target_class_[j]; ++t) cost /= p_;
        int links = 0;
        for (int i : order_)
          if (value_nonzero(i, j)) ++links;
        if (best == -1 || cost < best_cost ||
            (cost == best_cost && links > best_links)) {
          best = j;
          best_cost = cost;
          best_links = links;
        }
      }
      used[best] = true;
      order_.push_back(best);
    }
  }

  void charge_node() {
    if (++nodes_ > budget_.max_nodes) throw BudgetAbort{};
  }

  bool column_independent(const Vec& v, Vec& residue) const {
    residue = v;
    for (const Vec& b : echelon_) {
      int lead = 0;
      while (b[lead] == 0) ++lead;
      if (residue[lead] == 0) continue;
      int f = p_ - residue[lead];
      for (size_t t = 0; t < residue.size(); ++t)
        residue[t] = static_cast<Fp>((residue[t] + f * b[t]) % p_);
    }
    return !is_zero_vec(residue);
  }

  void push_column(int pos, const Vec& v, Vec residue) {
    int lead = 0;
    while (residue[lead] == 0) ++lead;
    int inv = fp_inverse(residue[lead], p_);
    for (auto& x : residue) x = static_cast<Fp>(x * inv % p_);
    echelon_.push_back(std::move(residue));
    placed_.push_back(pos);
    columns_[pos] = v;
    placed_rows_[pos].clear();
    for (int k = 0; k < r_; ++k) placed_rows_[pos].push_back(a_.mat(k).apply_transposed(v));
  }

  void pop_column() {
    placed_rows_[placed_.back()].clear();
    columns_[placed_.back()].clear();
    placed_.pop_back();
    echelon_.pop_back();
  }

  Vec pair_value(const CommutatorStructure& cs, const Vec& u, const Vec& v) const {
    return commutator(cs, u, v);
  }

  Vec target_value(int i, int j) const {
    Vec w(r_);
    for (int k = 0; k < r_; ++k) w[k] = static_cast<Fp>(b_.mat(k).at(i, j));
    return w;
  }

  bool dfs(int level) {
    if (level == d_) return true;
    int pos = order_[level];
    if (solver_.rank() == r_ && !placed_.empty()) return dfs_linear(level, pos);
    return dfs_scan(level, pos);
  }

  // T not yet pinned. Two kinds of placed pairs still constrain the new
  // column linearly: zero target values force B1(s_i, x) = 0 outright, and
  // nonzero targets already inside the span of T-forced images have a known
  // preimage. Candidates are enumerated from that affine solution space;
  // the remaining pairs feed the T solver per candidate. With no linear
  // rows available this degenerates to a rank-class bucket scan.
  bool dfs_scan(int level, int pos) {
    std::vector<int> open_partners;
    std::vector<Vec> rows;  // augmented with the right-hand side
    for (int placed_pos : placed_) {
      Vec target = target_value(placed_pos, pos);
      std::optional<Vec> required;
      if (is_zero_vec(target))
        required = Vec(r_, 0);
      else
        required = solver_.preimage(target);
      if (!required) {
        open_partners.push_back(placed_pos);
        continue;
      }
      for (int k = 0; k < r_; ++k) {
        Vec row = a_.mat(k).apply_transposed(columns_[placed_pos]);
        row.push_back((*required)[k]);
        rows.push_back(std::move(row));
      }
    }

    auto try_candidate = [&](const Vec& v) {
      charge_node();
      std::uint64_t code = encode(v);
      if (code == 0 || class_of_[code] != target_class_[pos]) return false;
      Vec residue;
      if (!column_independent(v, residue)) return false;
      std::vector<Vec> candidate_rows;
      for (int k = 0; k < r_; ++k) candidate_rows.push_back(a_.mat(k).apply_transposed(v));
      for (int placed_pos : placed_) {
        std::vector<Vec> joint = placed_rows_[placed_pos];
        joint.insert(joint.end(), candidate_rows.begin(), candidate_rows.end());
        if (rref_in_place(p_, joint) != target_pair_rank_[placed_pos][pos]) return false;
      }
      size_t mark = solver_.mark();
      bool ok = true;
      for (int placed_pos : open_partners) {
        Vec w = pair_value(a_, columns_[placed_pos], v);
        if (is_zero_vec(w) || !solver_.add(std::move(w), target_value(placed_pos, pos))) {
          ok = false;
          break;
        }
      }
      if (ok) {
        push_column(pos, v, residue);
        if (dfs(level + 1)) return true;
        pop_column();
      }
      solver_.rollback(mark);
      return false;
    };

    if (rows.empty()) {
      Vec v(d_);
      for (std::uint64_t code : buckets_[target_class_[pos]]) {
        std::uint64_t c = code;
        for (int i = 0; i < d_; ++i) {
          v[i] = static_cast<Fp>(c % p_);
          c /= p_;
        }
        if (try_candidate(v)) return true;
      }
      return false;
    }

    Vec particular;
    std::vector<Vec> null_basis;
    if (!solve_affine(rows, particular, null_basis)) return false;
    bool found = false;
    enumerate_affine(particular, null_basis, [&](const Vec& v) {
      found = try_candidate(v);
      return !found;
    });
    return found;
  }

  /// Solves augmented rows (last entry = rhs); false when inconsistent.
  bool solve_affine(std::vector<Vec>& rows, Vec& particular,
                    std::vector<Vec>& null_basis) const {
    std::vector<int> pivots;
    rref_in_place(p_, rows, &pivots);
    for (int c : pivots)
      if (c == d_) return false;
    particular.assign(d_, 0);
    std::vector<bool> is_pivot(d_, false);
    for (size_t i = 0; i < pivots.size(); ++i) {
      is_pivot[pivots[i]] = true;
      particular[pivots[i]] = rows[i][d_];
    }
    null_basis.clear();
    for (int free_col = 0; free_col < d_; ++free_col) {
      if (is_pivot[free_col]) continue;
      Vec v(d_, 0);
      v[free_col] = 1;
      for (size_t i = 0; i < pivots.size(); ++i)
        v[pivots[i]] = static_cast<Fp>(fp_reduce(-rows[i][free_col], p_));
      null_basis.push_back(std::move(v));
    }
    return true;
  }

  /// Walks particular + span(null_basis); the callback returns false to stop.
  template <typename Fn>
  void enumerate_affine(const Vec& particular, const std::vector<Vec>& null_basis,
                        Fn&& fn) const {
    int free_dim = static_cast<int>(null_basis.size());
    std::vector<Fp> coeff(free_dim, 0);
    Vec candidate = particular;
    for (;;) {
      if (!fn(candidate)) return;
      int k = free_dim - 1;
      while (k >= 0) {
        if (++coeff[k] < p_) {
          for (int t = 0; t < d_; ++t)
            candidate[t] = static_cast<Fp>((candidate[t] + null_basis[k][t]) % p_);
          break;
        }
        coeff[k] = 0;
        for (int t = 0; t < d_; ++t)
          candidate[t] = static_cast<Fp>((candidate[t] + null_basis[k][t]) % p_);
        --k;
      }
      if (k < 0) return;
    }
  }

  // T pinned: every placed pair now constrains the new column linearly.
  bool dfs_linear(int level, int pos) {
    FpMatrix t_inv = invert(solver_.solve());
    std::vector<Vec> rows;
    for (int placed_pos : placed_) {
      Vec required = t_inv.apply(target_value(placed_pos, pos));
      for (int k = 0; k < r_; ++k) {
        Vec row = a_.mat(k).apply_transposed(columns_[placed_pos]);
        row.push_back(required[k]);
        rows.push_back(std::move(row));
      }
    }
    Vec particular;
    std::vector<Vec> null_basis;
    if (!solve_affine(rows, particular, null_basis)) return false;
    bool found = false;
    Vec residue;
    enumerate_affine(particular, null_basis, [&](const Vec& candidate) {
      charge_node();
      std::uint64_t code = encode(candidate);
      if (code != 0 && class_of_[code] == target_class_[pos] &&
          column_independent(candidate, residue)) {
        push_column(pos, candidate, residue);
        if (dfs(level + 1)) {
          found = true;
          return false;
        }
        pop_column();
      }
      return true;
    });
    return found;
  }

  FpMatrix assemble_S() const {
    FpMatrix s(p_, d_, d_);
    for (int j = 0; j < d_; ++j)
      for (int i = 0; i < d_; ++i) s.set(i, j, columns_[j][i]);
    return s;
  }

  const CommutatorStructure& a_;
  const CommutatorStructure& b_;
  int p_, d_, r_;
  SearchBudget budget_;
  TSolver solver_;

  std::vector<std::uint8_t> class_of_;
  std::vector<std::vector<std::uint64_t>> buckets_;
  std::vector<int> target_class_;
  bool ranks_differ_ = false;
  std::vector<int> order_;

  std::vector<Vec> columns_;  // by position
  std::vector<std::vector<Vec>> placed_rows_;  // per position: v^T A_k rows
  std::vector<int> placed_;   // positions in placement order
  std::vector<Vec> echelon_;
  std::vector<std::vector<int>> target_pair_rank_;
  std::uint64_t nodes_ = 0;
};

IsoResult special_iso(const CommutatorStructure& a, const CommutatorStructure& b,
                      const SearchBudget& budget) {
  WitnessSearch search(a, b, budget);
  return search.run();
}

FpMatrix block_diag(const FpMatrix& top, int extra, int p) {
  int n = top.rows() + extra;
  FpMatrix out(p, n, n);
  for (int i = 0; i < top.rows(); ++i)
    for (int j = 0; j < top.cols(); ++j) out.set(i, j, top.at(i, j));
  for (int i = top.rows(); i < n; ++i) out.set(i, i, 1);
  return out;
}

}  // namespace

IsoResult is_isomorphic(const CommutatorStructure& cs1, const CommutatorStructure& cs2,
                        const SearchBudget& budget) {
  if (cs1.p() != cs2.p()) throw ValueError("is_isomorphic requires the same p");
  if (cs1.d() != cs2.d() || cs1.r() != cs2.r()) return {IsoVerdict::NotIso, std::nullopt, 0};
  if (cs1 == cs2) {
    IsoWitness w{FpMatrix::identity(cs1.p(), cs1.d()), FpMatrix::identity(cs1.p(), cs1.r())};
    return {IsoVerdict::Iso, std::move(w), 0};
  }
  bool sp1 = is_special(cs1), sp2 = is_special(cs2);
  if (sp1 != sp2) return {IsoVerdict::NotIso, std::nullopt, 0};
  if (sp1) return special_iso(cs1, cs2, budget);

  StripResult st1 = strip_abelian_part(cs1);
  StripResult st2 = strip_abelian_part(cs2);
  if (st1.abelian_dim != st2.abelian_dim || st1.special.d() != st2.special.d() ||
      st1.special.r() != st2.special.r())
    return {IsoVerdict::NotIso, std::nullopt, 0};
  IsoResult inner = special_iso(st1.special, st2.special, budget);
  if (inner.verdict != IsoVerdict::Iso) return inner;

  // cs1 --(S1,T1)--> padded special1 --(diag)--> padded special2 <--(S2,T2)-- cs2
  int p = cs1.p();
  FpMatrix s_hat = block_diag(inner.witness->S, st1.abelian_dim, p);
  FpMatrix t_hat = block_diag(inner.witness->T, cs1.r() - st1.special.r(), p);
  FpMatrix S = st1.S.mul(s_hat).mul(invert(st2.S));
  FpMatrix T = invert(st2.T).mul(t_hat).mul(st1.T);
  if (change_of_basis(cs1, S, T) != cs2)
    throw Error("internal: composed witness failed validation");
  return {IsoVerdict::Iso, IsoWitness{std::move(S), std::move(T)}, inner.nodes};
}

// ---------------------------------------------------------------------------
// Invariant-based distinction.
// ---------------------------------------------------------------------------

namespace {

std::string frequency_to_string(const FrequencyVector& fv) {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < fv.counts.size(); ++i) {
    if (i) os << ',';
    os << fv.counts[i];
  }
  os << ')';
  if (fv.zero_lines) os << "+" << fv.zero_lines << " trivial";
  return os.str();
}

std::string signature_to_string(const std::map<int, std::uint64_t>& sig) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [rk, count] : sig) {
    if (!first) os << ", ";
    os << rk << ":" << count;
    first = false;
  }
  os << '}';
  return os.str();
}

std::vector<std::pair<int, bool>> profile_multiset(const CommutatorStructure& cs) {
  std::vector<std::pair<int, bool>> m;
  for (const LineProfile& lp : center_preimage_profile(cs))
    m.emplace_back(lp.n, lp.preimage_abelian);
  std::sort(m.begin(), m.end());
  return m;
}

bool points_within_cap(const CommutatorStructure& cs) {
  std::uint64_t total = 1;
  for (int i = 0; i < cs.d(); ++i) total *= static_cast<std::uint64_t>(cs.p());
  return total <= kDefaultPointCap;
}

}  // namespace

DistinguishResult distinguish(const CommutatorStructure& cs1, const CommutatorStructure& cs2) {
  if (cs1.p() != cs2.p()) throw ValueError("distinguish requires the same p");

  if (cs1.d() != cs2.d() || cs1.r() != cs2.r() || is_special(cs1) != is_special(cs2)) {
    std::ostringstream os;
    os << "(d,r,special) = (" << cs1.d() << "," << cs1.r() << "," << is_special(cs1) << ") vs ("
       << cs2.d() << "," << cs2.r() << "," << is_special(cs2) << ")";
    return {true, "basic", os.str()};
  }

  if (cs1.r() == 2) {
    FrequencyVector f1 = frequency_vector(cs1), f2 = frequency_vector(cs2);
    if (f1 != f2)
      return {true, "frequency",
              frequency_to_string(f1) + " vs " + frequency_to_string(f2)};
  }

  if (points_within_cap(cs1)) {
    auto s1 = rank_signature(cs1), s2 = rank_signature(cs2);
    if (s1 != s2)
      return {true, "rank-signature", signature_to_string(s1) + " vs " + signature_to_string(s2)};

    CentralizerFlags c1 = small_centralizer_properties(cs1);
    CentralizerFlags c2 = small_centralizer_properties(cs2);
    if (c1 != c2) {
      std::ostringstream os;
      os << "is_subspace " << c1.is_subspace << "/" << c2.is_subspace << ", is_commuting "
         << c1.is_commuting << "/" << c2.is_commuting;
      return {true, "small-centralizer", os.str()};
    }
  }

  if (cs1.r() == 2) {
    auto m1 = profile_multiset(cs1), m2 = profile_multiset(cs2);
    if (m1 != m2) {
      std::ostringstream os;
      os << "preimage profiles differ: {";
      for (auto& [n, ab] : m1) os << "(" << n << (ab ? ",abelian)" : ",nonabelian)");
      os << "} vs {";
      for (auto& [n, ab] : m2) os << "(" << n << (ab ? ",abelian)" : ",nonabelian)");
      os << "}";
      return {true, "preimage-profile", os.str()};
    }
  }

  return {false, "", "all computed invariants agree"};
}

// ---------------------------------------------------------------------------
// Exhaustive orbit classification.
// ---------------------------------------------------------------------------

namespace {

/// Pairs of antisymmetric d x d matrices packed as base-p digits of the
/// upper triangles, matrix 0 first, rows scanned i < j.
struct StructureCodec {
  int d, p, n_pairs;
  std::vector<std::pair<int, int>> pairs;

  StructureCodec(int d_, int p_) : d(d_), p(p_) {
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) pairs.emplace_back(i, j);
    n_pairs = static_cast<int>(pairs.size());
  }

  std::uint64_t encode(const std::int32_t* a, const std::int32_t* b) const {
    std::uint64_t code = 0;
    for (int m = 1; m >= 0; --m) {
      const std::int32_t* mat = m == 0 ? a : b;
      for (int t = n_pairs - 1; t >= 0; --t)
        code = code * p + mat[pairs[t].first * d + pairs[t].second];
    }
    return code;
  }

  void decode(std::uint64_t code, std::int32_t* a, std::int32_t* b) const {
    for (std::int32_t* mat : {a, b}) {
      std::fill(mat, mat + d * d, 0);
      for (int t = 0; t < n_pairs; ++t) {
        int digit = static_cast<int>(code % p);
        code /= p;
        auto [i, j] = pairs[t];
        mat[i * d + j] = digit;
        mat[j * d + i] = digit == 0 ? 0 : p - digit;
      }
    }
  }

  CommutatorStructure to_structure(std::uint64_t code) const {
    std::vector<std::int32_t> a(d * d), b(d * d);
    decode(code, a.data(), b.data());
    std::vector<FpMatrix> mats;
    for (const auto* raw : {&a, &b}) {
      FpMatrix m(p, d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m.set(i, j, (*raw)[i * d + j]);
      mats.push_back(std::move(m));
    }
    return CommutatorStructure(p, d, 2, std::move(mats));
  }
};

}  // namespace

std::vector<Orbit> classify_all(int d, int p, const SearchBudget& budget) {
  require_odd_prime(p);
  if (d < 1) throw ValueError("classify_all requires d >= 1");
  StructureCodec codec(d, p);
  std::uint64_t total = pow_u64_checked(p, 2 * codec.n_pairs, budget.max_nodes);
  if (total > budget.max_nodes)
    throw BudgetExceeded("structure count p^" + std::to_string(2 * codec.n_pairs) +
                         " exceeds the search budget");

  // generator actions: (S, I) conjugations and (I, T) pencil mixes
  std::vector<FpMatrix> s_gens = gl_generators(d, p);
  std::vector<FpMatrix> t_gens = gl_generators(2, p);

  std::vector<bool> visited(total, false);
  std::vector<Orbit> orbits;
  std::vector<std::uint64_t> queue;
  std::vector<std::int32_t> a(d * d), b(d * d), na(d * d), nb(d * d), tmp(d * d);

  auto conjugate = [&](const FpMatrix& s, const std::int32_t* m, std::int32_t* out) {
    // out = s^T m s
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        std::int64_t acc = 0;
        for (int k = 0; k < d; ++k) acc += m[i * d + k] * s.at(k, j);
        tmp[i * d + j] = static_cast<std::int32_t>(acc % p);
      }
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        std::int64_t acc = 0;
        for (int k = 0; k < d; ++k) acc += s.at(k, i) * tmp[k * d + j];
        out[i * d + j] = static_cast<std::int32_t>(acc % p);
      }
  };

  for (std::uint64_t seed = 0; seed < total; ++seed) {
    if (visited[seed]) continue;
    std::uint64_t orbit_size = 0;
    queue.clear();
    queue.push_back(seed);
    visited[seed] = true;
    while (!queue.empty()) {
      std::uint64_t code = queue.back();
      queue.pop_back();
      ++orbit_size;
      codec.decode(code, a.data(), b.data());
      for (const FpMatrix& s : s_gens) {
        conjugate(s, a.data(), na.data());
        conjugate(s, b.data(), nb.data());
        std::uint64_t next = codec.encode(na.data(), nb.data());
        if (!visited[next]) {
          visited[next] = true;
          queue.push_back(next);
        }
      }
      for (const FpMatrix& t : t_gens) {
        for (int e = 0; e < d * d; ++e) {
          na[e] = static_cast<std::int32_t>((t.at(0, 0) * a[e] + t.at(0, 1) * b[e]) % p);
          nb[e] = static_cast<std::int32_t>((t.at(1, 0) * a[e] + t.at(1, 1) * b[e]) % p);
        }
        std::uint64_t next = codec.encode(na.data(), nb.data());
        if (!visited[next]) {
          visited[next] = true;
          queue.push_back(next);
        }
      }
    }
    CommutatorStructure rep = codec.to_structure(seed);
    bool special = is_special(rep);
    orbits.push_back(Orbit{std::move(rep), orbit_size, special});
  }
  return orbits;
}

}  // namespace pclass2
