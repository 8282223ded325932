#pragma once

// Subcommands of the charfol executable. Each returns a RunReport; run()
// parses arguments, prints the table or JSON and maps the status to an exit
// code.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "charfol/report.hpp"

namespace charfol::cli {

struct Options {
  std::uint32_t p = 3;
  std::uint32_t d = 2;
  std::optional<std::int64_t> deg_N;  // defaults to dp - 3, the Tango value
  std::optional<std::uint32_t> q;     // defaults to p
  std::optional<int> precision;
  std::uint64_t trials = 200;
  std::uint64_t seed = 7;
  int jobs = 1;
  std::string chart = "raynaud-local";  // or "a2"
  std::string poly;
};

report::RunReport cmd_tango_verify(const Options& o);
report::RunReport cmd_raynaud_ledger(const Options& o);
report::RunReport cmd_foliation(const Options& o);
report::RunReport cmd_quotient(const Options& o);
report::RunReport cmd_descend(const Options& o);
report::RunReport cmd_star_check(const Options& o);
report::RunReport cmd_equiv_check(const Options& o);
report::RunReport cmd_pipeline(const Options& o);

// Usage errors print to err and return 64.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace charfol::cli
