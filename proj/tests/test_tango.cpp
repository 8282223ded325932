#include <chrono>

#include "charfol/tango.hpp"
#include "doctest.h"

using namespace charfol;
using namespace charfol::tango;

namespace {

// Divisor of dx at Q from the expansion w = v^n - v^{1+n(n-1)} + ...: only
// the first term with exponent prime to p survives differentiation.
int ord_by_hand(std::uint32_t p, std::uint32_t d) {
  const int n = static_cast<int>(p * d);
  const int first_unit_exponent = 1 + n * (n - 1);
  // x = 1/w, dx = -w'/w^2 dv
  return (first_unit_exponent - 1) - 2 * n;
}

}  // namespace

TEST_CASE("affine models") {
  CHECK(PlanarTangoCurve(3, 2).affine_model()->to_string() == "[x,y]/(y^6 + 2*x^5 + 2*y)");
  CHECK(PlanarTangoCurve(5, 2).affine_model()->relations()[0].poly.to_string() == "y^10 + 4*x^9 + 4*y");
  CHECK(PlanarTangoCurve(3, 4).affine_model()->relations()[0].poly.to_string() == "y^12 + 2*x^11 + 2*y");
  CHECK(PlanarTangoCurve(3, 2).affine_model()->relations()[0].var == 1);
  CHECK(PlanarTangoCurve(3, 2).projective_form().to_string() == "2*X^5*Z + Y^6 + 2*Y*Z^5");
  CHECK(PlanarTangoCurve(3, 2, 9).field().order() == 9);
}

TEST_CASE("parameter guards") {
  CHECK_THROWS_AS(PlanarTangoCurve(2, 2), Error);
  CHECK_THROWS_AS(PlanarTangoCurve(3, 1), Error);
  CHECK_THROWS_AS(PlanarTangoCurve(4, 2), Error);
  CHECK_THROWS_AS(PlanarTangoCurve(3, 2, 25), Error);
}

TEST_CASE("smoothness certificate") {
  for (auto [p, d] : {std::pair{3u, 2u}, {5u, 2u}, {3u, 4u}, {7u, 2u}}) {
    auto s = smoothness_certificate(PlanarTangoCurve(p, d));
    CHECK(s.all());
    CHECK(s.dfdy == std::to_string(p - 1));
    CHECK(s.dFdw_at_Q == std::to_string(p - 1));
    CHECK(s.boundary == "Y^" + std::to_string(p * d));
  }
}

TEST_CASE("divisor of dx and genus") {
  struct Case {
    std::uint32_t p, d;
    int ord;
    std::int64_t g;
  };
  for (const Case& c : {Case{3, 2, 18, 10}, Case{5, 2, 70, 36}, Case{3, 4, 108, 55}}) {
    PlanarTangoCurve C(c.p, c.d);
    auto start = std::chrono::steady_clock::now();
    auto div = divisor_of_dx(C, C.default_precision());
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(secs < 5.0);
    CHECK(div.ord_Q == c.ord);
    CHECK(div.ord_Q == ord_by_hand(c.p, c.d));
    CHECK(div.affine_generator);
    CHECK(div.eliminated == "y");
    CHECK(genus(C, div) == c.g);
    CHECK(genus(C) == c.g);
  }
  PlanarTangoCurve C(3, 2);
  CHECK_THROWS_AS(divisor_of_dx(C, 30), Error);
  DivisorOfDx bad;
  bad.ord_Q = 16;
  try {
    genus(C, bad);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GenusMismatch);
  }
  // Minimal admissible precision still determines the order.
  CHECK(divisor_of_dx(C, 32).ord_Q == 18);
}

TEST_CASE("tango structure") {
  struct Case {
    std::uint32_t p, d;
    std::int64_t degL, degN;
    bool divides;
  };
  for (const Case& c : {Case{3, 2, 6, 3, true}, Case{5, 2, 14, 7, true}, Case{3, 4, 36, 9, true},
                        Case{7, 3, 54, 18, false}}) {
    auto r = verify_tango_structure(PlanarTangoCurve(c.p, c.d));
    CHECK(r.passed());
    CHECK(r.deg_L == c.degL);
    CHECK(r.deg_N == c.degN);
    CHECK(static_cast<std::int64_t>(c.p) * r.deg_L == 2 * r.g - 2);
    CHECK(r.ord_Q == r.ord_formula);
    CHECK(r.d_divides_p_plus_1 == c.divides);
  }
}
