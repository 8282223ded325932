#include <random>

#include "charfol/descent.hpp"
#include "charfol/parser.hpp"
#include "doctest.h"
#include "generators.hpp"

using namespace charfol;
using namespace charfol::algebra;
using namespace charfol::descent;

namespace {

RatFunc rf(const char* s, const gf::Field& f) { return parse_ratfunc(s, f); }

std::shared_ptr<const KChart> kchart(const gf::Field& f, std::vector<std::string> names,
                                     std::vector<std::string> rels) {
  auto vars = make_vars(std::move(names));
  std::vector<KPoly> r;
  for (const auto& s : rels) r.push_back(parse_k(s, vars, f));
  return std::make_shared<const KChart>(f, vars, std::move(r));
}

// Root of r by brute force over small candidates: compare s^p with r.
bool is_root(const RatFunc& s, const RatFunc& r) { return s.frobenius() == r && s.pow(3) == r; }

}  // namespace

TEST_CASE("in_Kp and pth_root_K") {
  auto f3 = gf::Field::make(3);
  CHECK(in_Kp(rf("t^3 + 1", f3)));
  CHECK_FALSE(in_Kp(rf("t", f3)));
  CHECK(in_Kp(rf("(t^6 + t^3)/(t^3 + 2)", f3)));
  CHECK(pth_root_K(rf("t^3 + 1", f3)) == rf("t + 1", f3));
  CHECK(pth_root_K(rf("1", f3)) == rf("1", f3));
  CHECK(is_root(pth_root_K(rf("t^6/(t^3+2)^3", f3)), rf("t^6/(t^3+2)^3", f3)));
  CHECK(pth_root_K(rf("t^6/(t^3+2)^3", f3)) == rf("t^2/(t^3+2)", f3));
  CHECK(pth_root_K(rf("t^6", f3)) == rf("t^2", f3));
  CHECK(pth_root_K(rf("t^3 + 2", f3)) == rf("t + 2", f3));
  CHECK_THROWS_AS(pth_root_K(rf("t", f3)), Error);
}

TEST_CASE("pth_root_K round trips and in_Kp matches d/dt") {
  for (std::uint32_t q : {3u, 5u, 9u, 7u}) {
    auto f = gf::Field::of_order(q);
    std::mt19937_64 rng(q + 1000);
    for (int trial = 0; trial < 500; ++trial) {
      auto s = testgen::ratfunc(rng, f, 4);
      auto r = s.frobenius();
      CHECK(pth_root_K(r) == s);
      auto u = testgen::ratfunc(rng, f, 5);
      CHECK(in_Kp(u) == u.derivative().is_zero());
      CHECK(in_Kp(r));
    }
  }
}

TEST_CASE("descend_algebra") {
  auto f3 = gf::Field::make(3);
  auto A = kchart(f3, {"x", "y", "z"}, {"z^2 - y^3 - x"});
  auto M = descend_algebra(A);
  CHECK(M.descended->relations()[0].poly == A->relations()[0].poly);

  auto B = kchart(f3, {"x", "y"}, {"y^3 - y - t^3*x^5"});
  auto MB = descend_algebra(B);
  CHECK(MB.descended->relations()[0].poly.to_string() == "2*t*x^5 + y^3 + 2*y");
  CHECK(verify_model(MB));
  auto j = MB.to_json();
  CHECK(j["relations_before"][0] == "2*t^3*x^5 + y^3 + 2*y");
  CHECK(j["relations_after"][0] == "2*t*x^5 + y^3 + 2*y");
  CHECK(j["provenance"].size() == 3);

  auto C = kchart(f3, {"x", "y"}, {"y^2 - t*x"});
  try {
    descend_algebra(C);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoDescent);
    CHECK(std::string(e.what()).find("x") != std::string::npos);
  }
}

TEST_CASE("descent paths agree and twist back") {
  for (std::uint32_t q : {3u, 5u, 9u}) {
    auto f = gf::Field::of_order(q);
    std::mt19937_64 rng(q * 7);
    auto vars = make_vars({"x", "y"});
    for (int trial = 0; trial < 100; ++trial) {
      KPoly base(f, vars);
      // Random polynomial with coefficients in K^p.
      for (int k = 0; k < 4; ++k)
        base.add_term(testgen::monomial(rng, 2, 4), testgen::kp_elem(rng, f, 2));
      CHECK(root_coefficients(base) == root_whole(base));
      CHECK(twist(root_coefficients(base)) == base);
    }
  }
}

TEST_CASE("descend_derivation") {
  auto f3 = gf::Field::make(3);
  auto A = kchart(f3, {"x", "y", "z"}, {"z^2 - y^3 - x"});
  auto M = descend_algebra(A);
  auto Dy = foliation::Derivation<RatFunc>::partial(A, 1);
  CHECK(descend_derivation(Dy, M) == foliation::Derivation<RatFunc>::partial(M.descended, 1));

  auto P = kchart(f3, {"x", "y"}, {});
  auto MP = descend_algebra(P);
  auto vars = P->vars();
  foliation::Derivation<RatFunc> D(P, {parse_k("t^3", vars, f3), P->zero()});
  auto Dt = descend_derivation(D, MP);
  CHECK(Dt.value(0) == parse_k("t", vars, f3));
  foliation::Derivation<RatFunc> E(P, {parse_k("t", vars, f3), P->zero()});
  try {
    descend_derivation(E, MP);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoDerivationDescent);
  }
}
