#include "pclass2.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "json.hpp"

#include "catalog.hpp"
#include "fdg.hpp"
#include "invariants.hpp"
#include "iso.hpp"
#include "products.hpp"
#include "report.hpp"
#include "structure.hpp"

using nlohmann::json;

struct pc2_group {
  pclass2::CommutatorStructure cs;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_out(char** slot, const std::string& s) {
  if (slot) *slot = dup_string(s);
}

/// Runs the body, mapping toolkit exceptions onto status codes and the
/// optional error-string slot.
template <typename Fn>
pc2_status guarded(char** err_slot, Fn&& body) {
  if (err_slot) *err_slot = nullptr;
  try {
    return body();
  } catch (const pclass2::ParseError& e) {
    set_out(err_slot, e.what());
    return PC2_ERR_PARSE;
  } catch (const pclass2::UnknownName& e) {
    set_out(err_slot, e.what());
    return PC2_ERR_UNKNOWN_NAME;
  } catch (const pclass2::SingularMatrix& e) {
    set_out(err_slot, e.what());
    return PC2_ERR_SINGULAR;
  } catch (const pclass2::BudgetExceeded& e) {
    set_out(err_slot, e.what());
    return PC2_ERR_BUDGET;
  } catch (const pclass2::ValueError& e) {
    set_out(err_slot, e.what());
    return PC2_ERR_BAD_ARG;
  } catch (const std::bad_alloc&) {
    return PC2_ERR_NOMEM;
  } catch (const std::exception& e) {
    set_out(err_slot, e.what());
    return PC2_ERR_INTERNAL;
  }
}

json frequency_json(const pclass2::CommutatorStructure& cs) {
  pclass2::FrequencyVector fv = pclass2::frequency_vector(cs);
  json j;
  j["counts"] = fv.counts;
  j["zero_lines"] = fv.zero_lines;
  return j;
}

json vec_json(const pclass2::Vec& v) {
  json j = json::array();
  for (auto x : v) j.push_back(static_cast<int>(x));
  return j;
}

json matrix_json(const pclass2::FpMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

extern "C" {

const char* pc2_version(void) { return "1.0.0"; }

const char* pc2_status_name(pc2_status status) {
  switch (status) {
    case PC2_OK: return "ok";
    case PC2_ERR_BAD_ARG: return "bad-argument";
    case PC2_ERR_PARSE: return "parse-error";
    case PC2_ERR_UNKNOWN_NAME: return "unknown-name";
    case PC2_ERR_SINGULAR: return "singular-matrix";
    case PC2_ERR_BUDGET: return "budget-exceeded";
    case PC2_ERR_NOMEM: return "out-of-memory";
    case PC2_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

void pc2_string_free(char* s) { std::free(s); }

void pc2_group_free(pc2_group* g) { delete g; }

pc2_status pc2_group_from_fdg(const char* text, pc2_group** out, char** err_msg) {
  if (!text || !out) return PC2_ERR_BAD_ARG;
  *out = nullptr;
  return guarded(err_msg, [&]() {
    pclass2::FlowDigraph g = pclass2::parse_fdg(text);
    *out = new pc2_group{pclass2::from_digraph(g)};
    return PC2_OK;
  });
}

pc2_status pc2_group_from_catalog(const char* name, int p, pc2_group** out) {
  if (!name || !out) return PC2_ERR_BAD_ARG;
  *out = nullptr;
  return guarded(nullptr, [&]() {
    *out = new pc2_group{pclass2::catalog_build(name, p)};
    return PC2_OK;
  });
}

int pc2_group_prime(const pc2_group* g) { return g ? g->cs.p() : 0; }
int pc2_group_generators(const pc2_group* g) { return g ? g->cs.d() : -1; }
int pc2_group_derived_rank(const pc2_group* g) { return g ? g->cs.r() : -1; }
int pc2_group_is_special(const pc2_group* g) {
  return g && pclass2::is_special(g->cs) ? 1 : 0;
}

pc2_status pc2_group_fdg(const pc2_group* g, const char* name, char** out_text) {
  if (!g || !out_text) return PC2_ERR_BAD_ARG;
  return guarded(nullptr, [&]() {
    *out_text = dup_string(pclass2::emit_fdg(pclass2::to_digraph(g->cs, name ? name : "G")));
    return *out_text ? PC2_OK : PC2_ERR_NOMEM;
  });
}

pc2_status pc2_group_dot(const pc2_group* g, const char* name, char** out_text) {
  if (!g || !out_text) return PC2_ERR_BAD_ARG;
  return guarded(nullptr, [&]() {
    *out_text = dup_string(pclass2::to_dot(pclass2::to_digraph(g->cs, name ? name : "G")));
    return *out_text ? PC2_OK : PC2_ERR_NOMEM;
  });
}

pc2_status pc2_group_invariants(const pc2_group* g, char** out_json) {
  if (!g || !out_json) return PC2_ERR_BAD_ARG;
  return guarded(nullptr, [&]() {
    const auto& cs = g->cs;
    json j;
    j["p"] = cs.p();
    j["generators"] = cs.d();
    j["derived_rank"] = cs.r();
    j["special"] = pclass2::is_special(cs);
    if (cs.r() == 2) {
      j["frequency"] = frequency_json(cs);
      json profile = json::array();
      for (const auto& lp : pclass2::center_preimage_profile(cs))
        profile.push_back({{"line", vec_json(lp.line)},
                           {"n", lp.n},
                           {"preimage_abelian", lp.preimage_abelian}});
      j["preimage_profile"] = std::move(profile);
    }
    json sig = json::object();
    for (const auto& [rk, count] : pclass2::rank_signature(cs))
      sig[std::to_string(rk)] = count;
    j["rank_signature"] = std::move(sig);
    pclass2::CentralizerFlags flags = pclass2::small_centralizer_properties(cs);
    j["centralizer_flags"] = {{"is_subspace", flags.is_subspace},
                              {"is_commuting", flags.is_commuting}};
    *out_json = dup_string(j.dump(2));
    return *out_json ? PC2_OK : PC2_ERR_NOMEM;
  });
}

pc2_status pc2_group_decompose(const pc2_group* g, uint64_t max_candidates, char** out_json) {
  if (!g || !out_json) return PC2_ERR_BAD_ARG;
  return guarded(nullptr, [&]() {
    std::uint64_t cap = max_candidates > 0 ? max_candidates : pclass2::kDefaultSubspaceCap;
    json j;
    auto dec = pclass2::find_central_decomposition(g->cs, cap);
    j["decomposable"] = dec.has_value();
    if (dec) {
      json dims = json::array(), parts = json::array();
      for (const auto& part : dec->parts) {
        dims.push_back(part.dim());
        json basis = json::array();
        for (const auto& v : part.basis()) basis.push_back(vec_json(v));
        parts.push_back(std::move(basis));
      }
      j["part_dims"] = std::move(dims);
      j["parts"] = std::move(parts);
    }
    j["factors"] = pclass2::factor_multiset(g->cs, {}, cap);
    *out_json = dup_string(j.dump(2));
    return *out_json ? PC2_OK : PC2_ERR_NOMEM;
  });
}

pc2_status pc2_isomorphic(const pc2_group* a, const pc2_group* b, uint64_t max_nodes,
                          int* verdict, char** out_json) {
  if (!a || !b || !verdict) return PC2_ERR_BAD_ARG;
  *verdict = 2;
  return guarded(nullptr, [&]() {
    pclass2::SearchBudget budget;
    if (max_nodes > 0) budget.max_nodes = max_nodes;
    pclass2::IsoResult result = pclass2::is_isomorphic(a->cs, b->cs, budget);
    json j;
    j["nodes"] = result.nodes;
    switch (result.verdict) {
      case pclass2::IsoVerdict::Iso:
        *verdict = 1;
        j["verdict"] = "iso";
        j["witness"] = {{"S", matrix_json(result.witness->S)},
                        {"T", matrix_json(result.witness->T)}};
        break;
      case pclass2::IsoVerdict::NotIso:
        *verdict = 0;
        j["verdict"] = "not-iso";
        break;
      case pclass2::IsoVerdict::Exhausted:
        *verdict = 2;
        j["verdict"] = "exhausted";
        break;
    }
    set_out(out_json, j.dump(2));
    return PC2_OK;
  });
}

pc2_status pc2_distinguish(const pc2_group* a, const pc2_group* b, int* distinct,
                           char** out_json) {
  if (!a || !b || !distinct) return PC2_ERR_BAD_ARG;
  return guarded(nullptr, [&]() {
    pclass2::DistinguishResult result = pclass2::distinguish(a->cs, b->cs);
    *distinct = result.distinct ? 1 : 0;
    json j;
    j["distinct"] = result.distinct;
    j["invariant"] = result.invariant;
    j["detail"] = result.detail;
    set_out(out_json, j.dump(2));
    return PC2_OK;
  });
}

pc2_status pc2_classify(int d, int p, uint64_t max_structures, char** out_json) {
  if (!out_json) return PC2_ERR_BAD_ARG;
  return guarded(nullptr, [&]() {
    auto start = std::chrono::steady_clock::now();
    pclass2::SearchBudget budget;
    if (max_structures > 0) budget.max_nodes = max_structures;
    std::vector<pclass2::Orbit> orbits = pclass2::classify_all(d, p, budget);
    json j;
    j["d"] = d;
    j["p"] = p;
    j["orbit_count"] = orbits.size();
    std::uint64_t specials = 0, total = 0;
    json list = json::array();
    for (const auto& orbit : orbits) {
      if (orbit.special) ++specials;
      total += orbit.size;
      list.push_back({{"size", orbit.size},
                      {"special", orbit.special},
                      {"rep_fdg", pclass2::emit_fdg(pclass2::to_digraph(orbit.rep, "rep"))}});
    }
    j["special_orbit_count"] = specials;
    j["structure_count"] = total;
    j["orbits"] = std::move(list);
    j["elapsed_ms"] = ms_since(start);
    *out_json = dup_string(j.dump(2));
    return *out_json ? PC2_OK : PC2_ERR_NOMEM;
  });
}

pc2_status pc2_verify(int p, char** out_json, int* all_pass) {
  if (!out_json) return PC2_ERR_BAD_ARG;
  return guarded(nullptr, [&]() {
    auto start = std::chrono::steady_clock::now();
    pclass2::Report report;
    report.append(pclass2::verify_frequencies(p));
    report.append(pclass2::verify_pairwise_distinct(p));
    report.append(pclass2::verify_partition_exhaustion(p));
    report.append(pclass2::replay_group_a_reduction(p));
    report.command = "verify";
    report.elapsed_ms = ms_since(start);
    if (all_pass) *all_pass = report.all_pass() ? 1 : 0;
    *out_json = dup_string(pclass2::report_to_json(report));
    return *out_json ? PC2_OK : PC2_ERR_NOMEM;
  });
}

pc2_status pc2_catalog_table(int p, char** out_json) {
  if (!out_json) return PC2_ERR_BAD_ARG;
  return guarded(nullptr, [&]() {
    json list = json::array();
    for (const auto& entry : pclass2::catalog_entries()) {
      json item;
      item["name"] = entry.name;
      item["order_exponent"] = entry.order_exponent;
      item["factors"] =
          entry.indecomposable() ? std::vector<std::string>{} : entry.factors;
      item["indecomposable"] = entry.indecomposable();
      if (!entry.freq.empty()) item["frequency"] = pclass2::expected_frequency(entry, p);
      list.push_back(std::move(item));
    }
    json j;
    j["p"] = p;
    j["entries"] = std::move(list);
    *out_json = dup_string(j.dump(2));
    return *out_json ? PC2_OK : PC2_ERR_NOMEM;
  });
}

}  // extern "C"
