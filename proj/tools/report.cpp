#include "charfol/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace charfol::report {

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive";
    case Status::Asserted: return "asserted-by-paper";
  }
  return "fail";
}

Check& RunReport::add(std::string name, Status status, nlohmann::ordered_json values, std::string detail) {
  checks.push_back({std::move(name), status, std::move(values), std::move(detail)});
  return checks.back();
}

Check& RunReport::add(std::string name, bool ok, nlohmann::ordered_json values, std::string detail) {
  return add(std::move(name), ok ? Status::Pass : Status::Fail, std::move(values), std::move(detail));
}

void RunReport::merge(const RunReport& other, const std::string& prefix) {
  for (const auto& c : other.checks) {
    Check copy = c;
    copy.name = prefix + "/" + c.name;
    checks.push_back(std::move(copy));
  }
  for (const auto& n : other.notes) notes.push_back(prefix + ": " + n);
}

Status RunReport::overall() const {
  bool inconclusive = false;
  for (const auto& c : checks) {
    if (c.status == Status::Fail) return Status::Fail;
    if (c.status == Status::Inconclusive) inconclusive = true;
  }
  return inconclusive ? Status::Inconclusive : Status::Pass;
}

std::vector<std::string> RunReport::asserted() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (c.status == Status::Asserted) out.push_back(c.name);
  return out;
}

nlohmann::ordered_json RunReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = kSchema;
  j["command"] = command;
  j["parameters"] = parameters;
  j["status"] = to_string(overall());
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["status"] = to_string(c.status);
    e["values"] = c.values;
    if (!c.detail.empty()) e["detail"] = c.detail;
    arr.push_back(std::move(e));
  }
  j["checks"] = std::move(arr);
  j["asserted"] = asserted();
  j["notes"] = notes;
  if (!conclusion.empty()) j["conclusion"] = conclusion;
  return j;
}

std::string RunReport::table(bool verbose) const {
  std::size_t width = 5;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  std::ostringstream os;
  os << command << "  " << parameters.dump() << "\n";
  for (const auto& c : checks) {
    os << "  " << c.name << std::string(width - c.name.size() + 2, ' ') << to_string(c.status);
    if (!c.detail.empty()) os << "  " << c.detail;
    os << "\n";
    if (verbose && !c.values.empty()) os << "      " << c.values.dump() << "\n";
  }
  for (const auto& n : notes) os << "  note: " << n << "\n";
  if (!conclusion.empty()) os << "\n" << conclusion << "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", wall_seconds);
  os << "overall: " << to_string(overall()) << "  (" << buf << " s)\n";
  return os.str();
}

int exit_code(Status overall) {
  switch (overall) {
    case Status::Pass: return 0;
    case Status::Inconclusive: return 2;
    default: return 1;
  }
}

}  // namespace charfol::report
