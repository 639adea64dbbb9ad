#include "catalog.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "invariants.hpp"
#include "iso.hpp"
#include "products.hpp"

namespace pclass2 {

namespace {

const std::vector<std::vector<int>> kId2 = {{1, 0}, {0, 1}};
const std::vector<std::vector<int>> kGlueZ1 = {{1}, {0}};
const std::vector<std::vector<int>> kGlueZ2 = {{0}, {1}};
const std::vector<std::vector<int>> kGlueZ1Z2 = {{1}, {1}};

std::vector<CatalogEntry> make_entries() {
  std::vector<CatalogEntry> e;

  e.push_back({"3.2.1", 3, {}, {}, {}, {}, {}, {}});

  e.push_back({"5.3.1", 5, {{1, 0}}, {{0, 1}}, {}, {}, {{1, 1}}, {}});

  e.push_back({"6.4.2",
               6,
               {{1, 0}, {0, 0}},
               {{0, 0}, {0, 1}},
               {"3.2.1", "3.2.1"},
               {kGlueZ1, kGlueZ2},
               {{2, 0}, {-1, 1}},
               {2, 2}});

  e.push_back({"6.4.3", 6, {{1, 0}, {0, 1}}, {{0, 1}, {0, 0}}, {}, {}, {{1, 0}, {0, 1}}, {}});

  e.push_back(
      {"6.4.4", 6, {{1, 0}, {0, 1}}, {{0, 1}, {kNu, 0}}, {}, {}, {{0, 0}, {1, 1}}, {}});

  e.push_back({"7.5.5",
               7,
               {{1, 0, 0}, {0, 0, 1}},
               {{0, 1, 0}, {0, 0, 0}},
               {"3.2.1", "5.3.1"},
               {kGlueZ1, kId2},
               {{1, 0}, {0, 1}},
               {2, 3}});

  e.push_back({"7.5.6",
               7,
               {{1, 0, 0}, {0, 1, 0}},
               {{0, 1, 0}, {0, 0, 1}},
               {},
               {},
               {{0, 0}, {1, 1}},
               {}});

  e.push_back({"8.6.7",
               8,
               {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}},
               {{0, 0, 0}, {0, 0, 0}, {0, 0, 1}},
               {"3.2.1", "3.2.1", "3.2.1"},
               {kGlueZ1, kGlueZ1, kGlueZ2},
               {{1, 0}, {1, 0}, {-1, 1}},
               {2, 2, 2}});

  e.push_back({"8.6.8",
               8,
               {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}},
               {{0, 0, 0}, {0, 1, 0}, {0, 0, 1}},
               {"3.2.1", "3.2.1", "3.2.1"},
               {kGlueZ1, kGlueZ1Z2, kGlueZ2},
               {{0, 0}, {3, 0}, {-2, 1}},
               {2, 2, 2}});

  e.push_back({"8.6.9",
               8,
               {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
               {{0, 1, 0}, {0, 0, 0}, {0, 0, 1}},
               {"3.2.1", "6.4.3"},
               {kGlueZ1Z2, kId2},
               {{0, 0}, {2, 0}, {-1, 1}},
               {2, 4}});

  // The printed A-matrix of 8.6.10 has a zero (3,3) entry, which contradicts
  // the printed frequency column (1,0,p), the listed central factors, and
  // the fact that every tabulated group is special; entry (3,3) = 1 is the
  // unique reading consistent with all three.
  e.push_back({"8.6.10",
               8,
               {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
               {{0, 1, 0}, {0, 0, 0}, {0, 0, 0}},
               {"3.2.1", "6.4.3"},
               {kGlueZ1, kId2},
               {{1, 0}, {0, 0}, {0, 1}},
               {2, 4}});

  e.push_back({"8.6.11",
               8,
               {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
               {{0, 1, 0}, {kNu, 0, 0}, {0, 0, 0}},
               {"3.2.1", "6.4.4"},
               {kGlueZ1, kId2},
               {{0, 0}, {1, 0}, {0, 1}},
               {2, 4}});

  e.push_back({"8.6.12",
               8,
               {{1, 0, 0}, {0, 0, 1}, {0, 0, 0}},
               {{0, 1, 0}, {0, 0, 0}, {0, 0, 1}},
               {"5.3.1", "5.3.1"},
               {kId2, kId2},
               {{0, 0}, {1, 1}, {0, 0}},
               {3, 3}});

  e.push_back({"8.6.13",
               8,
               {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
               {{0, 1, 0}, {0, 0, 1}, {0, 0, 0}},
               {},
               {},
               {{0, 0}, {1, 0}, {0, 1}},
               {}});

  e.push_back({"8.6.14",
               8,
               {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
               {{0, 1, 0}, {0, 0, 1}, {kCubicC, kCubicB, kCubicA}},
               {},
               {},
               {{0, 0}, {0, 0}, {1, 1}},
               {}});

  e.push_back({"A",
               9,
               {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}},
               {{0, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}},
               {"3.2.1", "7.5.6"},
               {kGlueZ1, kId2},
               {{0, 0}, {1, 0}, {0, 1}},
               {2, 5}});

  e.push_back({"B",
               9,
               {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}},
               {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}},
               {"3.2.1", "3.2.1", "5.3.1"},
               {kGlueZ1, kGlueZ1, kId2},
               {{1, 0}, {0, 0}, {0, 1}},
               {2, 2, 3}});

  e.push_back({"C",
               9,
               {{1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 0}},
               {{0, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}},
               {"3.2.1", "3.2.1", "5.3.1"},
               {kGlueZ1, kGlueZ2, kId2},
               {{0, 0}, {2, 0}, {-1, 1}},
               {2, 2, 3}});

  e.push_back({"D",
               9,
               {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}},
               {{0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, kNu, 0}},
               {"5.3.1", "6.4.4"},
               {kId2, kId2},
               {{0, 0}, {0, 0}, {1, 1}},
               {3, 4}});

  e.push_back({"E",
               9,
               {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}},
               {{0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}},
               {"5.3.1", "6.4.3"},
               {kId2, kId2},
               {{0, 0}, {1, 0}, {0, 1}},
               {3, 4}});

  e.push_back({"F",
               9,
               {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}},
               {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}},
               {},
               {},
               {{0, 0}, {0, 0}, {1, 1}},
               {}});

  return e;
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = make_entries();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  std::string key = name;
  if (key == "E3" || key == "E_3") key = "3.2.1";
  for (const CatalogEntry& e : catalog_entries())
    if (e.name == key) return e;
  throw UnknownName("no catalog entry named '" + name + "'");
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (const CatalogEntry& e : catalog_entries()) names.push_back(e.name);
  return names;
}

const std::vector<std::string>& indecomposable_names() {
  static const std::vector<std::string> names = {"3.2.1",  "5.3.1",  "6.4.3", "6.4.4",
                                                 "7.5.6",  "8.6.13", "8.6.14", "F"};
  return names;
}

int least_nonresidue(int p) {
  require_odd_prime(p);
  for (int n = 2; n < p; ++n)
    if (fp_pow(n, (p - 1) / 2, p) == p - 1) return n;
  throw ValueError("no quadratic nonresidue found");  // unreachable for odd prime p
}

std::vector<int> all_nonresidues(int p) {
  require_odd_prime(p);
  std::vector<int> out;
  for (int n = 2; n < p; ++n)
    if (fp_pow(n, (p - 1) / 2, p) == p - 1) out.push_back(n);
  return out;
}

namespace {

/// x^3 - a x^2 - b x - c has a root in GF(p)?
bool cubic_has_root(const Cubic& cubic, int p) {
  for (int x = 0; x < p; ++x) {
    long long v = (static_cast<long long>(x) * x % p) * x % p;
    v -= static_cast<long long>(cubic.a) * x % p * x % p;
    v -= static_cast<long long>(cubic.b) * x % p;
    v -= cubic.c;
    if (fp_reduce(v, p) == 0) return true;
  }
  return false;
}

}  // namespace

Cubic least_irreducible_cubic(int p) {
  require_odd_prime(p);
  // lexicographically least monic x^3 + c2 x^2 + c1 x + c0; a degree-3
  // polynomial is irreducible iff it has no root
  for (int c2 = 0; c2 < p; ++c2)
    for (int c1 = 0; c1 < p; ++c1)
      for (int c0 = 0; c0 < p; ++c0) {
        Cubic cubic{fp_reduce(-c0, p), fp_reduce(-c1, p), fp_reduce(-c2, p)};
        if (!cubic_has_root(cubic, p)) return cubic;
      }
  throw ValueError("no irreducible cubic found");  // unreachable
}

std::vector<Cubic> all_irreducible_cubics(int p) {
  require_odd_prime(p);
  std::vector<Cubic> out;
  for (int c2 = 0; c2 < p; ++c2)
    for (int c1 = 0; c1 < p; ++c1)
      for (int c0 = 0; c0 < p; ++c0) {
        Cubic cubic{fp_reduce(-c0, p), fp_reduce(-c1, p), fp_reduce(-c2, p)};
        if (!cubic_has_root(cubic, p)) out.push_back(cubic);
      }
  return out;
}

namespace {

int resolve(int raw, int p, int nu, const Cubic& cubic) {
  switch (raw) {
    case kNu: return nu;
    case kCubicC: return cubic.c;
    case kCubicB: return cubic.b;
    case kCubicA: return cubic.a;
    default: return fp_reduce(raw, p);
  }
}

FpMatrix resolve_grid(const std::vector<std::vector<int>>& grid, int p, int nu,
                      const Cubic& cubic) {
  std::vector<std::vector<int>> rows = grid;
  for (auto& row : rows)
    for (int& v : row) v = resolve(v, p, nu, cubic);
  return FpMatrix::from_rows(p, rows);
}

CommutatorStructure build_e3(int p) {
  FpMatrix m(p, 2, 2);
  m.set(0, 1, 1);
  m.set(1, 0, -1);
  return CommutatorStructure(p, 2, 1, {std::move(m)});
}

}  // namespace

CommutatorStructure catalog_build_with_params(const std::string& name, int p, int nu,
                                              const Cubic& cubic) {
  const CatalogEntry& entry = catalog_entry(name);
  if (entry.name == "3.2.1") return build_e3(p);
  if (fp_pow(nu, (p - 1) / 2, p) != p - 1)
    throw ValueError(std::to_string(nu) + " is not a quadratic nonresidue mod " +
                     std::to_string(p));
  if (cubic_has_root(cubic, p)) throw ValueError("cubic has a root mod " + std::to_string(p));
  ScharlauPair pair(resolve_grid(entry.A, p, nu, cubic), resolve_grid(entry.B, p, nu, cubic));
  return from_scharlau(pair);
}

CommutatorStructure catalog_build(const std::string& name, int p) {
  require_odd_prime(p);
  return catalog_build_with_params(name, p, least_nonresidue(p), least_irreducible_cubic(p));
}

ScharlauPair catalog_pair(const std::string& name, int p) {
  const CatalogEntry& entry = catalog_entry(name);
  if (entry.A.empty()) throw ValueError("entry " + entry.name + " has no Scharlau pair");
  int nu = least_nonresidue(p);
  Cubic cubic = least_irreducible_cubic(p);
  return ScharlauPair(resolve_grid(entry.A, p, nu, cubic), resolve_grid(entry.B, p, nu, cubic));
}

std::vector<std::int64_t> expected_frequency(const CatalogEntry& entry, int p) {
  std::vector<std::int64_t> out;
  for (auto [constant, coeff] : entry.freq) out.push_back(constant + coeff * std::int64_t{p});
  return out;
}

namespace {

std::string int_list(const std::vector<std::int64_t>& v) {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << ')';
  return os.str();
}

std::string int_list(const std::vector<int>& v) {
  return int_list(std::vector<std::int64_t>(v.begin(), v.end()));
}

std::string name_list(const std::vector<std::string>& names) {
  std::ostringstream os;
  for (size_t i = 0; i < names.size(); ++i) {
    if (i) os << ' ';
    os << names[i];
  }
  return os.str();
}

}  // namespace

Report verify_frequencies(int p) {
  Report report;
  for (const CatalogEntry& entry : catalog_entries()) {
    if (entry.name == "3.2.1") continue;  // r = 1, no frequency column
    FrequencyVector fv = frequency_vector(catalog_build(entry.name, p));
    std::vector<std::int64_t> expected = expected_frequency(entry, p);
    bool pass = fv.counts == expected && fv.zero_lines == 0;
    report.add("frequencies/" + entry.name, int_list(fv.counts), int_list(expected), pass);
  }
  return report;
}

Report verify_pairwise_distinct(int p) {
  Report report;
  std::map<std::string, std::string> tie_breaker = {
      {"8.6.11|8.6.13", "is_commuting"},
      {"D|F", "is_subspace"},
      {"A|E", "preimage-profile"},
  };

  const auto& entries = catalog_entries();
  for (size_t i = 0; i < entries.size(); ++i) {
    for (size_t j = i + 1; j < entries.size(); ++j) {
      if (entries[i].order_exponent != entries[j].order_exponent) continue;
      const std::string pair_name = entries[i].name + " vs " + entries[j].name;
      CommutatorStructure a = catalog_build(entries[i].name, p);
      CommutatorStructure b = catalog_build(entries[j].name, p);

      FrequencyVector fa = frequency_vector(a), fb = frequency_vector(b);
      if (fa != fb) {
        report.add("distinct/" + pair_name, "frequency " + int_list(fa.counts),
                   "distinct", true, "frequencies differ");
        continue;
      }

      auto tie = tie_breaker.find(entries[i].name + "|" + entries[j].name);
      if (tie == tie_breaker.end()) {
        report.add("distinct/" + pair_name, "unexpected frequency tie", "distinct", false);
        continue;
      }
      bool separated = false;
      if (tie->second == "is_commuting") {
        separated = small_centralizer_properties(a).is_commuting !=
                    small_centralizer_properties(b).is_commuting;
      } else if (tie->second == "is_subspace") {
        separated = small_centralizer_properties(a).is_subspace !=
                    small_centralizer_properties(b).is_subspace;
      } else {
        auto key = [](const CommutatorStructure& cs) {
          std::vector<std::pair<int, bool>> m;
          for (const LineProfile& lp : center_preimage_profile(cs))
            m.emplace_back(lp.n, lp.preimage_abelian);
          std::sort(m.begin(), m.end());
          return m;
        };
        separated = key(a) != key(b);
      }
      report.add("distinct/" + pair_name, tie->second + (separated ? " differs" : " agrees"),
                 "distinct via " + tie->second, separated);
    }
  }
  return report;
}

namespace {

std::string edges_to_string(const CommutatorStructure& cs) {
  std::ostringstream os;
  bool first = true;
  for (const FlowEdge& e : to_digraph(cs).edges) {
    if (!first) os << ' ';
    os << e.from << '-' << e.to << ':' << vec_to_string(e.flow);
    first = false;
  }
  if (first) os << "(no edges)";
  return os.str();
}

CommutatorStructure digraph_structure(int p, int d, int r,
                                      const std::vector<std::tuple<int, int, std::vector<int>>>& edges) {
  return from_digraph(make_digraph("tmp", p, r, d, edges));
}

FpMatrix basis_with_column(int p, int d, int col,
                           const std::vector<std::pair<int, int>>& entries) {
  FpMatrix s = FpMatrix::identity(p, d);
  for (int i = 0; i < d; ++i) s.set(i, col, 0);
  for (auto [row, value] : entries) s.set(row, col, value);
  return s;
}

}  // namespace

Report replay_group_a_reduction(int p) {
  Report report;
  const int M = p - 1;  // -1 mod p

  // 7.5.6 (path presentation) centrally glued with an E_3 whose edge carries
  // z1 z2 — the one case left open after the generic normalizations
  CommutatorStructure g = digraph_structure(
      p, 7, 2, {{1, 2, {1, 0}}, {2, 3, {0, 1}}, {3, 4, {1, 0}}, {4, 5, {0, 1}}, {6, 7, {1, 1}}});

  struct Step {
    std::string label;
    FpMatrix S;
    FpMatrix T;
    CommutatorStructure expected;
  };

  FpMatrix id7 = FpMatrix::identity(p, 7);
  FpMatrix id2 = FpMatrix::identity(p, 2);

  // x3' = x3 x1^-1 x5^-1 with z1' = z1 z2
  FpMatrix s1 = basis_with_column(p, 7, 2, {{2, 1}, {0, -1}, {4, -1}});
  FpMatrix t1 = FpMatrix::from_rows(p, {{1, 0}, {-1, 1}});
  // x4' = x4 x2
  FpMatrix s2 = basis_with_column(p, 7, 3, {{3, 1}, {1, 1}});
  // x1' = x1 x3 x5^-1 and x3 inverted
  FpMatrix s3 = basis_with_column(p, 7, 0, {{0, 1}, {2, 1}, {4, -1}});
  s3.set(2, 2, -1);
  // interchange x1 and x3
  FpMatrix s4 = FpMatrix::identity(p, 7);
  s4.set(0, 0, 0);
  s4.set(2, 2, 0);
  s4.set(0, 2, 1);
  s4.set(2, 0, 1);

  std::vector<Step> steps;
  steps.push_back({"start", id7, id2,
                   digraph_structure(p, 7, 2,
                                     {{1, 2, {1, 0}},
                                      {2, 3, {0, 1}},
                                      {3, 4, {1, 0}},
                                      {4, 5, {0, 1}},
                                      {6, 7, {1, 1}}})});
  steps.push_back({"step 1: x3' = x3 x1^-1 x5^-1, z1' = z1 z2", s1, t1,
                   digraph_structure(p, 7, 2,
                                     {{1, 2, {1, M}},
                                      {2, 3, {1, 0}},
                                      {3, 4, {1, 0}},
                                      {4, 5, {0, 1}},
                                      {6, 7, {1, 0}}})});
  steps.push_back({"step 2: x4' = x4 x2", s2, id2,
                   digraph_structure(p, 7, 2,
                                     {{1, 2, {1, M}},
                                      {2, 3, {1, 0}},
                                      {1, 4, {1, M}},
                                      {4, 5, {0, 1}},
                                      {6, 7, {1, 0}}})});
  steps.push_back({"step 3: x1' = x1 x3 x5^-1, x3 inverted", s3, id2,
                   digraph_structure(p, 7, 2,
                                     {{1, 2, {0, M}},
                                      {2, 3, {M, 0}},
                                      {1, 4, {1, 0}},
                                      {4, 5, {0, 1}},
                                      {6, 7, {1, 0}}})});
  steps.push_back({"step 4: interchange x1 and x3", s4, id2,
                   digraph_structure(p, 7, 2,
                                     {{1, 2, {1, 0}},
                                      {2, 3, {0, 1}},
                                      {3, 4, {1, 0}},
                                      {4, 5, {0, 1}},
                                      {6, 7, {1, 0}}})});

  CommutatorStructure current = g;
  for (const Step& step : steps) {
    current = change_of_basis(current, step.S, step.T);
    bool pass = current == step.expected;
    report.add("replay/" + step.label, edges_to_string(current), edges_to_string(step.expected),
               pass);
    if (!pass) return report;
  }

  // relabel the path presentation onto the tabulated Scharlau ordering
  FpMatrix s5(p, 7, 7);
  s5.set(5, 0, 1);   // x1 -> x6
  s5.set(1, 1, 1);   // x2 -> x2
  s5.set(3, 2, -1);  // x3 -> x4^-1
  s5.set(6, 3, 1);   // x4 -> x7
  s5.set(0, 4, -1);  // x5 -> x1^-1
  s5.set(2, 5, 1);   // x6 -> x3
  s5.set(4, 6, -1);  // x7 -> x5^-1
  CommutatorStructure relabeled = change_of_basis(current, s5, id2);
  CommutatorStructure group_a = catalog_build("A", p);
  report.add("replay/relabel to group A", edges_to_string(relabeled), edges_to_string(group_a),
             relabeled == group_a);
  return report;
}

Report verify_partition_exhaustion(int p) {
  Report report;
  for (const std::string name : {"A", "B", "C", "D", "E", "F"}) {
    const CatalogEntry& entry = catalog_entry(name);
    CommutatorStructure cs = catalog_build(name, p);
    try {
      std::optional<Decomposition> dec = find_central_decomposition(cs);
      if (!dec) {
        bool pass = entry.indecomposable();
        report.add("partition/" + name, "indecomposable",
                   entry.indecomposable() ? "indecomposable" : int_list(entry.part_dims), pass);
        continue;
      }
      std::vector<int> dims;
      for (const Subspace& part : dec->parts) dims.push_back(part.dim());
      std::sort(dims.begin(), dims.end());
      bool dims_ok = !entry.indecomposable() && dims == entry.part_dims;
      report.add("partition/" + name + " dims", int_list(dims),
                 entry.indecomposable() ? "indecomposable" : int_list(entry.part_dims), dims_ok);

      std::vector<std::string> factors = factor_multiset(cs);
      std::vector<std::string> expected = entry.factors;
      std::sort(expected.begin(), expected.end());
      report.add("partition/" + name + " factors", name_list(factors), name_list(expected),
                 factors == expected);
    } catch (const BudgetExceeded& ex) {
      report.add_unknown("partition/" + name, ex.what());
    }
  }
  return report;
}

}  // namespace pclass2
