#include <sstream>

#include "charfol/cli.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace charfol;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

const nlohmann::json& check(const nlohmann::json& j, const std::string& name) {
  for (const auto& c : j["checks"])
    if (c["name"] == name) return c;
  throw std::runtime_error("no check " + name);
}

}  // namespace

TEST_CASE("tango-verify reports ord 18") {
  auto r = run({"tango-verify", "--p", "3", "--d", "2", "--json"});
  CHECK(r.code == 0);
  auto j = json_of(r);
  CHECK(j["schema"] == "charfol-report/1");
  CHECK(j["status"] == "pass");
  CHECK(check(j, "ord_Q(dx) = dp(dp-3)")["values"]["ord_Q"] == 18);
  CHECK(check(j, "p deg L = 2g-2")["values"]["g"] == 10);
}

TEST_CASE("descend rejects a coefficient outside K^p") {
  auto r = run({"descend", "--poly", "y^2 - t*x", "--json"});
  CHECK(r.code == 1);
  auto j = json_of(r);
  CHECK(check(j, "descends to K^p")["values"]["error"] == "NoDescent");
  auto ok = run({"descend", "--poly", "y^3 + 2*y - t^3*x^5", "--json"});
  CHECK(ok.code == 0);
  CHECK(check(json_of(ok), "descends to K^p")["values"]["relations_after"][0] == "2*t*x^5 + y^3 + 2*y");
}

TEST_CASE("equiv-check on the Raynaud chart") {
  auto r = run({"equiv-check", "--chart", "raynaud-local", "--p", "3", "--trials", "200", "--seed", "7", "--json"});
  CHECK(r.code == 0);
  auto j = json_of(r);
  CHECK(check(j, "lift fails iff (*) holds")["values"]["counterexamples"] == 0);
  auto par = run({"equiv-check", "--chart", "raynaud-local", "--trials", "200", "--jobs", "2", "--json"});
  CHECK(par.out == r.out);
}

TEST_CASE("pipeline") {
  auto a = run({"pipeline", "--p", "3", "--d", "2", "--seed", "7", "--json"});
  auto b = run({"pipeline", "--p", "3", "--d", "2", "--seed", "7", "--json"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto j = json_of(a);
  CHECK(j["status"] == "pass");
  CHECK(check(j, "tango/ord_Q(dx) = dp(dp-3)")["values"]["ord_Q"] == 18);
  CHECK(check(j, "raynaud/ample/A^2 > 0")["values"]["A^2"] == "9");
  CHECK(check(j, "raynaud/raynaud/deg K_F = (K_X+F).F = dp-p-d-1")["values"]["lhs"] == "0");
  CHECK(check(j, "equiv/lift fails iff (*) holds")["values"]["counterexamples"] == 0);
  CHECK_FALSE(j["asserted"].empty());
  for (const auto& name : j["asserted"]) CHECK(check(j, name.get<std::string>())["status"] == "asserted-by-paper");
  CHECK(j["conclusion"].get<std::string>().find("fiber genus 1") != std::string::npos);

  auto rejected = run({"pipeline", "--p", "3", "--d", "3", "--json"});
  CHECK(rejected.code == 1);
  CHECK(check(json_of(rejected), "hypotheses: p >= 3 prime, d >= 2, d | p+1")["status"] == "fail");
}

TEST_CASE("table output and usage errors") {
  auto t = run({"raynaud-ledger", "--p", "3", "--d", "2"});
  CHECK(t.code == 0);
  CHECK(t.out.find("overall: pass") != std::string::npos);
  CHECK(run({"no-such-command"}).code == 64);
  CHECK(run({"tango-verify", "--p", "x"}).code == 64);
  CHECK(run({"equiv-check", "--chart", "p3"}).code == 64);
  auto bad = run({"tango-verify", "--p", "4", "--json"});
  CHECK(bad.code == 1);
  CHECK(json_of(bad)["status"] == "fail");
}
