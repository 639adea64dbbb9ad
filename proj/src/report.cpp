#include "report.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace pclass2 {

void Report::add(std::string name, std::string computed, std::string expected, bool pass,
                 std::string detail) {
  items.push_back(ReportItem{std::move(name), std::move(computed), std::move(expected),
                             pass ? "pass" : "fail", std::move(detail)});
}

void Report::add_unknown(std::string name, std::string detail) {
  items.push_back(ReportItem{std::move(name), "", "", "unknown", std::move(detail)});
}

void Report::append(const Report& other) {
  items.insert(items.end(), other.items.begin(), other.items.end());
}

int Report::passes() const {
  return static_cast<int>(std::count_if(items.begin(), items.end(),
                                        [](const ReportItem& i) { return i.verdict == "pass"; }));
}

int Report::fails() const {
  return static_cast<int>(std::count_if(items.begin(), items.end(),
                                        [](const ReportItem& i) { return i.verdict == "fail"; }));
}

int Report::unknowns() const {
  return static_cast<int>(std::count_if(
      items.begin(), items.end(), [](const ReportItem& i) { return i.verdict == "unknown"; }));
}

std::string report_to_json(const Report& report) {
  nlohmann::json j;
  j["command"] = report.command;
  j["items"] = nlohmann::json::array();
  for (const ReportItem& item : report.items) {
    j["items"].push_back({{"name", item.name},
                          {"computed", item.computed},
                          {"expected", item.expected},
                          {"verdict", item.verdict},
                          {"detail", item.detail}});
  }
  j["summary"] = {{"pass", report.passes()},
                  {"fail", report.fails()},
                  {"unknown", report.unknowns()}};
  j["elapsed_ms"] = report.elapsed_ms;
  return j.dump(2);
}

std::string report_to_text(const Report& report) {
  std::ostringstream os;
  size_t name_w = 4, comp_w = 8, exp_w = 8;
  for (const ReportItem& i : report.items) {
    name_w = std::max(name_w, i.name.size());
    comp_w = std::max(comp_w, i.computed.size());
    exp_w = std::max(exp_w, i.expected.size());
  }
  for (const ReportItem& i : report.items) {
    os << (i.verdict == "pass" ? "  ok  " : i.verdict == "fail" ? " FAIL " : "  ??  ");
    os << i.name;
    os << std::string(name_w - i.name.size() + 2, ' ');
    os << i.computed << std::string(comp_w - i.computed.size() + 2, ' ');
    if (!i.expected.empty()) os << "expected " << i.expected;
    if (!i.detail.empty()) os << "  (" << i.detail << ")";
    os << "\n";
  }
  os << "summary: " << report.passes() << " pass, " << report.fails() << " fail, "
     << report.unknowns() << " unknown\n";
  return os.str();
}

}  // namespace pclass2
