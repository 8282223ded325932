#pragma once

// Run reports shared by the command-line front end and the acceptance driver.

#include <string>
#include <vector>

#include "json.hpp"

namespace charfol::report {

inline constexpr const char* kSchema = "charfol-report/1";

enum class Status { Pass, Fail, Inconclusive, Asserted };

const char* to_string(Status s);

struct Check {
  std::string name;
  Status status = Status::Pass;
  nlohmann::ordered_json values = nlohmann::ordered_json::object();
  std::string detail;
};

struct RunReport {
  std::string command;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  std::vector<Check> checks;
  std::vector<std::string> notes;
  std::string conclusion;
  double wall_seconds = 0.0;  // table only, so JSON stays reproducible

  Check& add(std::string name, Status status, nlohmann::ordered_json values = nlohmann::ordered_json::object(),
             std::string detail = {});
  Check& add(std::string name, bool ok, nlohmann::ordered_json values = nlohmann::ordered_json::object(),
             std::string detail = {});
  // Appends every check of another report under "<prefix>/".
  void merge(const RunReport& other, const std::string& prefix);

  // fail if any check failed, else inconclusive if any is, else pass.
  Status overall() const;
  std::vector<std::string> asserted() const;

  nlohmann::ordered_json to_json() const;
  std::string table(bool verbose = false) const;
};

// 0 pass, 1 fail, 2 inconclusive.
int exit_code(Status overall);

}  // namespace charfol::report
