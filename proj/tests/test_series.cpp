#include <random>

#include "charfol/kernels.hpp"
#include "charfol/parser.hpp"
#include "charfol/series.hpp"
#include "doctest.h"
#include "generators.hpp"

using namespace charfol;
using series::LaurentSeries;

namespace {

using Dense = std::vector<gf::Elem>;

// Truncated schoolbook product on dense power series.
Dense naive_mul(const Dense& a, const Dense& b, std::size_t n, const gf::Field& f) {
  Dense out(n, f.zero());
  for (std::size_t i = 0; i < a.size() && i < n; ++i)
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Power series inverse by the coefficient recurrence.
Dense naive_inverse(const Dense& a, std::size_t n, const gf::Field& f) {
  Dense b(n, f.zero());
  const gf::Elem inv0 = a[0].inverse();
  b[0] = inv0;
  for (std::size_t k = 1; k < n; ++k) {
    gf::Elem acc = f.zero();
    for (std::size_t i = 1; i <= k && i < a.size(); ++i) acc += a[i] * b[k - i];
    b[k] = -(acc * inv0);
  }
  return b;
}

// w <- v^{dp} - v w^{dp-1}, iterated until stable mod v^n.
Dense tango_fixed_point(std::uint32_t p, std::uint32_t d, std::size_t n) {
  auto f = gf::Field::make(p);
  const std::size_t dp = p * d;
  Dense w(n, f.zero());
  for (int iter = 0; iter < 64; ++iter) {
    Dense pw(n, f.zero());
    pw[0] = f.one();
    for (std::size_t k = 0; k + 1 < dp; ++k) pw = naive_mul(pw, w, n, f);
    Dense next(n, f.zero());
    if (dp < n) next[dp] = f.one();
    for (std::size_t k = 0; k + 1 < n; ++k) next[k + 1] -= pw[k];
    if (next == w) return w;
    w = next;
  }
  FAIL("fixed point did not stabilize");
  return w;
}

Dense dense_of(const LaurentSeries& s, std::size_t n) {
  Dense out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(s.coeff(static_cast<int>(k)));
  return out;
}

LaurentSeries random_series(std::mt19937_64& rng, const gf::Field& f, int start, int len, int precision) {
  Dense c;
  for (int i = 0; i < len; ++i) c.push_back(testgen::elem(rng, f));
  return LaurentSeries(f, start, c, precision);
}

}  // namespace

TEST_CASE("basic series arithmetic") {
  auto f3 = gf::Field::make(3);
  auto t = LaurentSeries::variable(f3, 4);
  auto one = LaurentSeries::from_int(f3, 1, 4);
  auto geo = one / (one - t);
  CHECK(geo.to_string() == "1 + t + t^2 + t^3 + O(t^4)");
  CHECK(t.pow(3).derivative().is_zero());
  auto s = LaurentSeries::monomial(f3.one(), -2, 10) + LaurentSeries::monomial(f3.one(), 1, 10);
  CHECK(s.valuation() == -2);
  CHECK(s.to_string() == "t^-2 + t + O(t^10)");
  CHECK_THROWS_AS(LaurentSeries::zero(f3, 5).valuation(), Error);
  try {
    one / LaurentSeries::zero(f3, 4);
    FAIL("divided by zero");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DivisionByZeroSeries);
  }
}

TEST_CASE("precision bookkeeping") {
  auto f5 = gf::Field::make(5);
  auto a = LaurentSeries(f5, 2, {f5.one(), f5.from_int(3)}, 10);
  auto b = LaurentSeries(f5, -1, {f5.from_int(2)}, 6);
  CHECK((a + b).precision() == 6);
  CHECK((a * b).precision() == std::min(10 - 1, 6 + 2));
  CHECK(b.inverse().precision() == 6 + 2);
  CHECK(a.inverse().precision() == 10 - 4);
  CHECK(a.derivative().precision() == 9);
}

TEST_CASE("multiplication and inversion match schoolbook oracles") {
  std::mt19937_64 rng(5);
  for (std::uint32_t q : {3u, 7u, 9u}) {
    auto f = gf::Field::of_order(q);
    for (int i = 0; i < 100; ++i) {
      const int n = 1 + static_cast<int>(rng() % 40);
      auto a = random_series(rng, f, 0, n, n), b = random_series(rng, f, 0, n, n);
      auto prod = a * b;
      if (!a.is_zero() && !b.is_zero() && a.start() == 0 && b.start() == 0)
        CHECK(dense_of(prod, static_cast<std::size_t>(n)) ==
              naive_mul(dense_of(a, n), dense_of(b, n), static_cast<std::size_t>(n), f));
      Dense unit = dense_of(a, static_cast<std::size_t>(n));
      unit[0] = testgen::nonzero_elem(rng, f);
      auto u = LaurentSeries(f, 0, unit, n);
      CHECK(dense_of(u.inverse(), static_cast<std::size_t>(n)) == naive_inverse(unit, static_cast<std::size_t>(n), f));
    }
  }
}

TEST_CASE("serial and parallel convolution agree") {
  std::mt19937_64 rng(17);
  auto f = gf::Field::of_order(49);
  for (std::size_t n : {1u, 7u, 100u, 700u, 1500u}) {
    Dense a, b;
    for (std::size_t i = 0; i < n; ++i) a.push_back(testgen::elem(rng, f)), b.push_back(testgen::elem(rng, f));
    CHECK(kernels::convolve_serial(a, b, n, f) == kernels::convolve_omp(a, b, n, f));
    CHECK(kernels::convolve(a, b, n, f) == naive_mul(a, b, n, f));
  }
}

TEST_CASE("derivative kills p-th powers") {
  std::mt19937_64 rng(23);
  for (std::uint32_t q : {3u, 5u, 25u}) {
    auto f = gf::Field::of_order(q);
    for (int i = 0; i < 100; ++i) {
      auto s = random_series(rng, f, static_cast<int>(rng() % 7) - 3, 12, 10);
      auto fr = s.frobenius();
      CHECK(fr.derivative().is_zero());
      CHECK(fr.is_pth_power());
      auto root = fr.pth_root();
      REQUIRE(root);
      CHECK(root->agrees_with(s, s.precision()));
      // Two independent p-th power tests agree.
      CHECK(s.is_pth_power() == s.derivative().is_zero());
    }
  }
}

TEST_CASE("implicit series") {
  auto f3 = gf::Field::make(3);
  auto vars = algebra::make_vars({"v", "w"});
  auto w = series::implicit_series(algebra::parse_fq("w - v^2", vars, f3), 0, 1, 10);
  CHECK(w.to_string() == "t^2 + O(t^10)");

  auto branch = series::implicit_series(algebra::parse_fq("w^2 - w + v", vars, f3), 0, 1, 20);
  auto vser = LaurentSeries::variable(f3, 20);
  CHECK((branch * branch - branch + vser).is_zero());
  CHECK(branch.coeff(1) == f3.one());
  CHECK(branch.coeff(2) == f3.one());

  CHECK_THROWS_AS(series::implicit_series(algebra::parse_fq("w^2 - v", vars, f3), 0, 1, 10), Error);
}

TEST_CASE("tango expansion at infinity matches fixed-point iteration") {
  struct Case {
    std::uint32_t p, d;
    int precision;
    int ord;
  };
  for (const Case& c : {Case{3, 2, 40, 18}, Case{5, 2, 100, 70}, Case{3, 4, 200, 108}}) {
    auto f = gf::Field::make(c.p);
    const std::uint32_t dp = c.p * c.d;
    auto vars = algebra::make_vars({"v", "w"});
    auto F = algebra::parse_fq("v^" + std::to_string(dp) + " - v*w^" + std::to_string(dp - 1) + " - w", vars, f);
    auto w = series::implicit_series(F, 0, 1, c.precision);
    CHECK(dense_of(w, static_cast<std::size_t>(c.precision)) ==
          tango_fixed_point(c.p, c.d, static_cast<std::size_t>(c.precision)));
    CHECK(w.valuation() == static_cast<int>(dp));
    CHECK(series::ord_of_differential(w.inverse()) == c.ord);
  }
  // Leading terms for (3,2): v^6 - v^31.
  auto f3 = gf::Field::make(3);
  auto vars = algebra::make_vars({"v", "w"});
  auto w = series::implicit_series(algebra::parse_fq("v^6 - v*w^5 - w", vars, f3), 0, 1, 32);
  CHECK(w.to_string() == "t^6 + 2*t^31 + O(t^32)");
  CHECK(series::ord_of_differential(LaurentSeries::variable(f3, 10)) == 0);
}

TEST_CASE("precision monotonicity") {
  auto f5 = gf::Field::make(5);
  auto vars = algebra::make_vars({"v", "w"});
  auto F = algebra::parse_fq("v^10 - v*w^9 - w", vars, f5);
  auto small = series::implicit_series(F, 0, 1, 37);
  auto large = series::implicit_series(F, 0, 1, 150);
  CHECK(large.agrees_with(small, 37));
}

TEST_CASE("rational function expansion") {
  auto f3 = gf::Field::make(3);
  auto r = algebra::parse_ratfunc("(t+1)/(t^2 + t)", f3);
  auto s = LaurentSeries::from_ratfunc(r, 5);
  CHECK(s.valuation() == -1);
  CHECK(s.precision() == 5);
  CHECK(s.to_string() == "t^-1 + O(t^5)");
}
