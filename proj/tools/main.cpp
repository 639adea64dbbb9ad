// pclass2 command-line interface. Talks to the shared library exclusively
// through the C API in pclass2.h.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pclass2.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct GroupHandle {
  pc2_group* g = nullptr;
  ~GroupHandle() { pc2_group_free(g); }
};

struct ApiString {
  char* s = nullptr;
  ~ApiString() { pc2_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

int status_exit_code(pc2_status status) {
  return status == PC2_ERR_BUDGET ? kExitBudget : kExitUsage;
}

void print_status(pc2_status status, const std::string& detail) {
  std::cerr << "error: " << pc2_status_name(status);
  if (!detail.empty()) std::cerr << ": " << detail;
  std::cerr << "\n";
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

int load_group(const std::string& path, GroupHandle& handle) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "error: cannot read '" << path << "'\n";
    return kExitUsage;
  }
  ApiString err;
  pc2_status status = pc2_group_from_fdg(text.c_str(), &handle.g, &err.s);
  if (status != PC2_OK) {
    print_status(status, path + ": " + err.str());
    return status_exit_code(status);
  }
  return kExitOk;
}

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

/// Emits the machine-readable form: payload decorated with the command echo
/// and wall time.
void print_json(const std::string& command, json payload, double elapsed_ms) {
  payload["command"] = command;
  payload["elapsed_ms"] = elapsed_ms;
  std::cout << payload.dump(2) << "\n";
}

void print_report_text(const json& report) {
  for (const auto& item : report["items"]) {
    std::string verdict = item["verdict"];
    std::cout << (verdict == "pass" ? "  ok  " : verdict == "fail" ? " FAIL " : "  ??  ")
              << std::string(item["name"]);
    std::string computed = item["computed"], expected = item["expected"];
    if (!computed.empty()) std::cout << "  " << computed;
    if (!expected.empty()) std::cout << "  expected " << expected;
    std::string detail = item.value("detail", "");
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << "\n";
  }
  const auto& summary = report["summary"];
  std::cout << "summary: " << summary["pass"] << " pass, " << summary["fail"] << " fail, "
            << summary["unknown"] << " unknown\n";
}

std::string frequency_string(const json& counts) {
  std::string out = "(";
  for (size_t i = 0; i < counts.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(counts[i].get<std::int64_t>());
  }
  return out + ")";
}

int run_verify(const std::vector<int>& primes, bool as_json, const std::string& echo) {
  auto start = std::chrono::steady_clock::now();
  json combined;
  combined["items"] = json::array();
  int pass = 0, fail = 0, unknown = 0;
  for (int p : primes) {
    ApiString out;
    int all_pass = 0;
    pc2_status status = pc2_verify(p, &out.s, &all_pass);
    if (status != PC2_OK) {
      print_status(status, "verify at p = " + std::to_string(p));
      return status_exit_code(status);
    }
    json report = json::parse(out.str());
    for (auto item : report["items"]) {
      item["name"] = "p=" + std::to_string(p) + "/" + std::string(item["name"]);
      combined["items"].push_back(item);
    }
    pass += report["summary"]["pass"].get<int>();
    fail += report["summary"]["fail"].get<int>();
    unknown += report["summary"]["unknown"].get<int>();
  }
  combined["summary"] = {{"pass", pass}, {"fail", fail}, {"unknown", unknown}};
  if (as_json)
    print_json(echo, combined, ms_since(start));
  else
    print_report_text(combined);
  if (fail > 0) return kExitFail;
  if (unknown > 0) return kExitBudget;
  return kExitOk;
}

int run_invariants(const std::string& path, bool as_json, const std::string& echo) {
  auto start = std::chrono::steady_clock::now();
  GroupHandle handle;
  if (int code = load_group(path, handle); code != kExitOk) return code;
  ApiString out;
  pc2_status status = pc2_group_invariants(handle.g, &out.s);
  if (status != PC2_OK) {
    print_status(status, "");
    return status_exit_code(status);
  }
  json j = json::parse(out.str());
  if (as_json) {
    print_json(echo, json{{"result", j}}, ms_since(start));
    return kExitOk;
  }
  std::cout << "p = " << j["p"] << ", generators = " << j["generators"]
            << ", derived rank = " << j["derived_rank"]
            << ", special = " << (j["special"].get<bool>() ? "yes" : "no") << "\n";
  if (j.contains("frequency")) {
    std::cout << "central quotient frequencies: " << frequency_string(j["frequency"]["counts"]);
    auto zero = j["frequency"]["zero_lines"].get<std::int64_t>();
    if (zero) std::cout << " plus " << zero << " trivial lines";
    std::cout << "\n";
  }
  std::cout << "rank signature:";
  for (auto& [rk, count] : j["rank_signature"].items())
    std::cout << " rank" << rk << ":" << count;
  std::cout << "\n";
  std::cout << "small centralizers: subspace = "
            << (j["centralizer_flags"]["is_subspace"].get<bool>() ? "yes" : "no")
            << ", commuting = "
            << (j["centralizer_flags"]["is_commuting"].get<bool>() ? "yes" : "no") << "\n";
  if (j.contains("preimage_profile")) {
    std::cout << "preimage profile:";
    for (const auto& lp : j["preimage_profile"])
      std::cout << " " << frequency_string(lp["line"]) << ":n=" << lp["n"]
                << (lp["preimage_abelian"].get<bool>() ? ",abelian" : ",nonabelian");
    std::cout << "\n";
  }
  return kExitOk;
}

int run_iso(const std::string& path1, const std::string& path2, std::uint64_t budget,
            bool as_json, const std::string& echo) {
  auto start = std::chrono::steady_clock::now();
  GroupHandle a, b;
  if (int code = load_group(path1, a); code != kExitOk) return code;
  if (int code = load_group(path2, b); code != kExitOk) return code;
  int verdict = 2;
  ApiString out;
  pc2_status status = pc2_isomorphic(a.g, b.g, budget, &verdict, &out.s);
  if (status != PC2_OK) {
    print_status(status, "");
    return status_exit_code(status);
  }
  json j = json::parse(out.str());
  if (as_json) {
    print_json(echo, json{{"result", j}}, ms_since(start));
  } else {
    std::cout << "verdict: " << std::string(j["verdict"]) << " (" << j["nodes"]
              << " nodes)\n";
    if (j.contains("witness")) {
      std::cout << "witness S = " << j["witness"]["S"].dump() << "\n";
      std::cout << "witness T = " << j["witness"]["T"].dump() << "\n";
    }
  }
  return verdict == 2 ? kExitBudget : kExitOk;
}

int run_classify(int d, int p, std::uint64_t budget, bool all_reps, bool as_json,
                 const std::string& echo) {
  auto start = std::chrono::steady_clock::now();
  ApiString out;
  pc2_status status = pc2_classify(d, p, budget, &out.s);
  if (status != PC2_OK) {
    print_status(status, "");
    return status_exit_code(status);
  }
  json j = json::parse(out.str());
  if (as_json) {
    print_json(echo, json{{"result", j}}, ms_since(start));
    return kExitOk;
  }
  std::cout << "structures: " << j["structure_count"] << ", orbits: " << j["orbit_count"]
            << ", special orbits: " << j["special_orbit_count"] << "\n";
  for (const auto& orbit : j["orbits"]) {
    if (!all_reps && !orbit["special"].get<bool>()) continue;
    std::cout << "\n# orbit size " << orbit["size"]
              << (orbit["special"].get<bool>() ? " (special)" : "") << "\n"
              << std::string(orbit["rep_fdg"]);
  }
  return kExitOk;
}

int run_decompose(const std::string& path, std::uint64_t budget, bool as_json,
                  const std::string& echo) {
  auto start = std::chrono::steady_clock::now();
  GroupHandle handle;
  if (int code = load_group(path, handle); code != kExitOk) return code;
  ApiString out;
  pc2_status status = pc2_group_decompose(handle.g, budget, &out.s);
  if (status != PC2_OK) {
    print_status(status, "");
    return status_exit_code(status);
  }
  json j = json::parse(out.str());
  if (as_json) {
    print_json(echo, json{{"result", j}}, ms_since(start));
    return kExitOk;
  }
  if (!j["decomposable"].get<bool>()) {
    std::cout << "indecomposable; factor: " << j["factors"][0].get<std::string>() << "\n";
  } else {
    std::cout << "part dimensions:";
    for (const auto& dim : j["part_dims"]) std::cout << " " << dim;
    std::cout << "\nfactors:";
    for (const auto& f : j["factors"]) std::cout << " " << f.get<std::string>();
    std::cout << "\n";
  }
  return kExitOk;
}

int run_catalog(const std::string& name, int p, const std::string& emit, bool as_json,
                const std::string& echo) {
  auto start = std::chrono::steady_clock::now();
  if (name.empty()) {
    ApiString out;
    pc2_status status = pc2_catalog_table(p, &out.s);
    if (status != PC2_OK) {
      print_status(status, "");
      return status_exit_code(status);
    }
    json j = json::parse(out.str());
    if (as_json) {
      print_json(echo, json{{"result", j}}, ms_since(start));
      return kExitOk;
    }
    std::cout << "name     order  factors              G/<z> frequencies (p = " << p << ")\n";
    for (const auto& entry : j["entries"]) {
      std::string nm = entry["name"];
      std::string factors = entry["indecomposable"].get<bool>() ? "indec." : "";
      if (factors.empty())
        for (const auto& f : entry["factors"])
          factors += (factors.empty() ? "" : " ") + f.get<std::string>();
      std::ostringstream line;
      line << nm << std::string(nm.size() < 8 ? 8 - nm.size() : 1, ' ') << "p^"
           << entry["order_exponent"].get<int>() << "   " << factors;
      std::string s = line.str();
      std::cout << s << std::string(s.size() < 42 ? 42 - s.size() : 1, ' ');
      if (entry.contains("frequency")) std::cout << frequency_string(entry["frequency"]);
      std::cout << "\n";
    }
    return kExitOk;
  }

  GroupHandle handle;
  pc2_status status = pc2_group_from_catalog(name.c_str(), p, &handle.g);
  if (status != PC2_OK) {
    print_status(status, name);
    return status_exit_code(status);
  }
  ApiString out;
  status = emit == "dot" ? pc2_group_dot(handle.g, name.c_str(), &out.s)
                         : pc2_group_fdg(handle.g, name.c_str(), &out.s);
  if (status != PC2_OK) {
    print_status(status, "");
    return status_exit_code(status);
  }
  if (as_json)
    print_json(echo, json{{"result", out.str()}}, ms_since(start));
  else
    std::cout << out.str();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact invariants, isomorphism testing and catalog verification for "
               "groups of odd prime exponent p and class 2"};
  app.require_subcommand(1);
  app.fallthrough();  // let subcommands hand --json back to the app
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");

  std::string echo;
  for (int i = 0; i < argc; ++i) echo += (i ? " " : "") + std::string(argv[i]);

  auto* verify = app.add_subcommand("verify", "run the full verification battery");
  std::vector<int> primes{3, 5, 7};
  verify->add_option("--p", primes, "primes to verify at")->delimiter(',');

  auto* invariants = app.add_subcommand("invariants", "invariant report for a .fdg group");
  std::string inv_path;
  invariants->add_option("file", inv_path, ".fdg file")->required();

  auto* iso = app.add_subcommand("iso", "isomorphism test between two .fdg groups");
  std::string iso_path1, iso_path2;
  std::uint64_t iso_budget = 0;
  iso->add_option("file1", iso_path1, ".fdg file")->required();
  iso->add_option("file2", iso_path2, ".fdg file")->required();
  iso->add_option("--budget", iso_budget, "backtracking node budget");

  auto* classify = app.add_subcommand("classify", "orbit classification of all r = 2 structures");
  int cl_d = 3, cl_p = 3;
  std::uint64_t cl_budget = 0;
  bool cl_all = false;
  classify->add_option("--d", cl_d, "generator count")->required();
  classify->add_option("--p", cl_p, "prime")->required();
  classify->add_option("--budget", cl_budget, "structure count budget");
  classify->add_flag("--all", cl_all, "print every orbit representative");

  auto* decompose = app.add_subcommand("decompose", "maximal central decomposition");
  std::string dec_path;
  std::uint64_t dec_budget = 0;
  decompose->add_option("file", dec_path, ".fdg file")->required();
  decompose->add_option("--budget", dec_budget, "subspace candidate budget");

  auto* catalog = app.add_subcommand("catalog", "build or list the named catalog groups");
  std::string cat_name, cat_emit = "fdg";
  int cat_p = 3;
  catalog->add_option("--name", cat_name, "entry name (omit to list all)");
  catalog->add_option("--p", cat_p, "prime");
  catalog->add_option("--emit", cat_emit, "output format: fdg or dot")
      ->check(CLI::IsMember({"fdg", "dot"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (verify->parsed()) return run_verify(primes, as_json, echo);
    if (invariants->parsed()) return run_invariants(inv_path, as_json, echo);
    if (iso->parsed()) return run_iso(iso_path1, iso_path2, iso_budget, as_json, echo);
    if (classify->parsed()) return run_classify(cl_d, cl_p, cl_budget, cl_all, as_json, echo);
    if (decompose->parsed()) return run_decompose(dec_path, dec_budget, as_json, echo);
    if (catalog->parsed()) return run_catalog(cat_name, cat_p, cat_emit, as_json, echo);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
