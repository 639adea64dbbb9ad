#pragma once

#include <string>
#include <vector>

namespace pclass2 {

struct ReportItem {
  std::string name;
  std::string computed;
  std::string expected;
  std::string verdict;  // "pass" | "fail" | "unknown"
  std::string detail;
};

/// Machine-readable verification report with stable field names.
struct Report {
  std::string command;
  std::vector<ReportItem> items;
  double elapsed_ms = 0;

  void add(std::string name, std::string computed, std::string expected, bool pass,
           std::string detail = "");
  void add_unknown(std::string name, std::string detail);
  void append(const Report& other);

  int passes() const;
  int fails() const;
  int unknowns() const;
  bool all_pass() const { return fails() == 0 && unknowns() == 0; }
};

/// JSON with keys: command, items[] (name, computed, expected, verdict,
/// detail), summary (pass, fail, unknown), elapsed_ms.
std::string report_to_json(const Report& report);

/// Human-readable table, one line per item.
std::string report_to_text(const Report& report);

}  // namespace pclass2
