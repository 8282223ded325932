#include <random>

#include "charfol/raynaud.hpp"
#include "doctest.h"

using namespace charfol;
using namespace charfol::raynaud;

namespace {

const FormulaCheck& find(const Ledger& L, const std::string& name) {
  for (const auto& c : L.checks)
    if (c.name == name) return c;
  throw std::runtime_error("no check " + name);
}

}  // namespace

TEST_CASE("params") {
  auto P = make_params(3, 2, 3);
  CHECK(P.g == 10);
  CHECK(P.deg_L() == 6);
  CHECK(make_params(5, 2, 7).g == 36);
  CHECK_THROWS_AS(make_params(3, 1, 3), Error);  // 9 is odd
  CHECK_THROWS_AS(make_params(4, 2, 3), Error);
}

TEST_CASE("intersection form") {
  auto P = make_params(3, 2, 3);
  auto ruled = SurfaceLattice::make(Surface::Ruled, P);
  auto X = SurfaceLattice::make(Surface::Raynaud, P);
  CHECK(intersect(ruled->section(), ruled->section()) == Rational(6));
  CHECK(intersect(ruled->fiber(), ruled->fiber()) == Rational(0));
  auto Sigma = X->cls(3, -9);
  CHECK(intersect(X->section(), Sigma) == Rational(0));
  CHECK_THROWS_AS(intersect(ruled->section(), X->section()), Error);
  auto bad = P;
  bad.g = 11;
  CHECK_THROWS_AS(SurfaceLattice::make(Surface::Raynaud, bad), Error);

  std::mt19937_64 rng(9);
  auto r = [&] { return Rational(static_cast<std::int64_t>(rng() % 41) - 20, 1 + static_cast<std::int64_t>(rng() % 5)); };
  for (int trial = 0; trial < 300; ++trial) {
    auto a = X->cls(r(), r()), b = X->cls(r(), r()), c = X->cls(r(), r());
    auto s = r();
    CHECK(intersect(a, b) == intersect(b, a));
    CHECK(intersect(a + b, c) == intersect(a, c) + intersect(b, c));
    CHECK(intersect(a * s, c) == s * intersect(a, c));
  }
}

TEST_CASE("ruled surface ledger") {
  for (auto [p, d, n] : {std::tuple{3u, 2u, 3}, {5u, 2u, 7}}) {
    auto L = verify_ruled_formulas(make_params(p, d, n));
    CHECK(L.passed());
    CHECK_NOTHROW(L.require());
  }
  auto L = verify_ruled_formulas(make_params(3, 2, 3));
  CHECK(find(L, "(K+S).S = 2g-2").lhs == "18");
  CHECK(find(L, "(K+F).F = -2").lhs == "-2");
  CHECK(find(L, "S.Gamma = 0").lhs == "0");
}

TEST_CASE("raynaud surface ledger") {
  auto L3 = verify_raynaud_formulas(make_params(3, 2, 3));
  CHECK(L3.passed());
  CHECK(find(L3, "deg K_F = (K_X+F).F = dp-p-d-1").lhs == "0");
  CHECK(find(L3, "(K_X+T).T = 2g-2").lhs == "18");
  CHECK(find(L3, "Sigma.T = 0").lhs == "0");
  CHECK(find(L3, "Sigma^2 = -p^2 deg N").lhs == "-27");

  auto L5 = verify_raynaud_formulas(make_params(5, 2, 7));
  CHECK(L5.passed());
  CHECK(find(L5, "deg K_F = (K_X+F).F = dp-p-d-1").lhs == "2");
  CHECK(find(L5, "(K_X+T).T = 2g-2").lhs == "70");

  CHECK(verify_raynaud_formulas(make_params(3, 4, 9)).passed());
  try {
    verify_raynaud_formulas(make_params(3, 3, 2));
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::HypothesisViolated);
  }
}

TEST_CASE("formula mismatch is reported by name") {
  Ledger L;
  L.checks.push_back({"made-up identity", "1", "2", false});
  try {
    L.require();
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FormulaMismatch);
    CHECK(std::string(e.what()).find("made-up identity") != std::string::npos);
  }
}

TEST_CASE("ample class") {
  auto a = ample_class_A(make_params(3, 2, 3));
  CHECK(a.A2 == Rational(9));
  CHECK(a.AF == Rational(1));
  CHECK(a.AT == Rational(6));
  CHECK(a.ASigma == Rational(9));
  auto b = ample_class_A(make_params(5, 2, 7));
  CHECK(b.A2 == Rational(21));
  CHECK(b.ASigma == Rational(35));
  for (auto [p, d, n] : {std::tuple{3u, 2u, 3}, {5u, 2u, 7}, {3u, 4u, 9}, {11u, 3u, 4}}) {
    auto r = ample_class_A(make_params(p, d, n));
    CHECK(r.A2 == Rational((static_cast<std::int64_t>(d) * d - 1) * n));
  }
  try {
    ample_class_A(make_params(3, 1, 2));
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositive);
  }
}

TEST_CASE("global generation numerics") {
  auto L = global_generation_numerics(make_params(3, 2, 3));
  CHECK(L.passed());
  CHECK(find(L, "pA = p(d-1)T + p deg N F").lhs == "(3)T + (9)F");
  CHECK(find(L, "pA = (d-1)Sigma + pd deg N F").rhs == "(3)T + (9)F");
  CHECK(find(L, "degree of psi on fibers pA.F = p(d-1)").lhs == "3");
  CHECK(L.assumptions.size() == 3);
  auto L5 = global_generation_numerics(make_params(5, 2, 7));
  CHECK(L5.passed());
  CHECK(find(L5, "pA = (d-1)Sigma + pd deg N F").rhs == "(5)T + (35)F");
}
