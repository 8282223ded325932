#include <random>

#include "charfol/differentials.hpp"
#include "charfol/parser.hpp"
#include "doctest.h"
#include "generators.hpp"

using namespace charfol;
using namespace charfol::algebra;
using namespace charfol::differentials;

namespace {

std::shared_ptr<const FqChart> raynaud_chart(const gf::Field& f) {
  auto vars = make_vars({"x", "y", "z"});
  return std::make_shared<const FqChart>(f, vars, std::vector<FqPoly>{parse_fq("z^2 - y^3 - x", vars, f)});
}

// x^i dx is exact iff i != -1 mod p; on monomials the Cartier operator is
// x^{(i+1)/p - 1} when p | i+1 and 0 otherwise.
RatFunc monomial_cartier(const gf::Field& f, std::uint32_t i) {
  const std::uint32_t p = f.characteristic();
  if ((i + 1) % p != 0) return RatFunc(f);
  return RatFunc(UPoly::monomial(f.one(), (i + 1) / p - 1));
}

}  // namespace

TEST_CASE("reduce_form on the Raynaud chart") {
  auto f3 = gf::Field::make(3);
  auto A = raynaud_chart(f3);
  auto dx = d(A, A->var("x"));
  auto r = reduce_form(dx);
  CHECK(r.form.to_string() == "2*z dz");
  REQUIRE(r.eliminated.size() == 1);
  CHECK(r.eliminated[0] == 0);
  CHECK(r.unreduced.empty());

  auto dy = d(A, A->var("y"));
  CHECK(reduce_form(dy).form == dy);
  // 4z^3 = z^3 over F_3; z^3 is stored in normal form as (y^3 + x) z.
  auto z = A->var("z");
  CHECK(reduce_form(d(A, z.pow(4))).form == OneForm<gf::Elem>::basis(A, 2) * z.pow(3));
  CHECK(reduce_form(d(A, z.pow(4))).form.to_string() == "(y^3*z + x*z) dz");
  CHECK(equivalent(dx, OneForm<gf::Elem>::basis(A, 2) * (A->var("z") * A->constant(f3.from_int(2)))));
  CHECK_FALSE(equivalent(dx, dy));
}

TEST_CASE("reduce_form kills relation differentials") {
  auto f5 = gf::Field::make(5);
  auto vars = make_vars({"x", "y", "z"});
  auto A = std::make_shared<const FqChart>(f5, vars,
                                           std::vector<FqPoly>{parse_fq("y^5 - y - x^4", vars, f5),
                                                               parse_fq("z^5 - z - x*y", vars, f5)});
  REQUIRE(eliminate_relations(A).unreduced.empty());
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    auto f = A->normal_form(testgen::fq_poly(rng, f5, vars, 4, 4));
    OneForm<gf::Elem> w = OneForm<gf::Elem>::zero(A);
    for (const auto& rel : A->relations()) w = w + d(A, rel.poly) * f;
    CHECK(reduce_form(w).form.is_zero());
    auto g = A->normal_form(testgen::fq_poly(rng, f5, vars, 4, 4));
    // Leibniz: d(fg) = f dg + g df.
    CHECK(equivalent(d(A, A->normal_form(f * g)), d(A, g) * f + d(A, f) * g));
  }
}

TEST_CASE("relations without a unit partial stay unreduced") {
  auto f5 = gf::Field::make(5);
  auto vars = make_vars({"x", "y"});
  auto A = std::make_shared<const FqChart>(f5, vars, std::vector<FqPoly>{parse_fq("y^2 - x^3 - 1", vars, f5)});
  auto r = reduce_form(d(A, A->var("y")));
  CHECK(r.unreduced == std::vector<std::size_t>{0});
  CHECK(r.eliminated.empty());
  CHECK(r.form == d(A, A->var("y")));
}

TEST_CASE("printing of forms") {
  auto f3 = gf::Field::make(3);
  auto vars = make_vars({"x", "y"});
  auto A = std::make_shared<const KChart>(KChart::affine_space(f3, vars));
  CHECK(OneForm<RatFunc>::zero(A).to_string() == "0");
  auto w = OneForm<RatFunc>(A, {parse_k("x + y", vars, f3), A->zero()}, A->one());
  CHECK(w.to_string() == "(x + y) dx + dt");
}

TEST_CASE("split_absolute") {
  auto f3 = gf::Field::make(3);
  auto vars = make_vars({"x"});
  auto A = std::make_shared<const KChart>(KChart::affine_space(f3, vars));
  auto x = A->var("x");
  auto t = A->constant(RatFunc::variable(f3));

  auto s1 = split_absolute(OneForm<RatFunc>::dt(A));
  CHECK(s1.relative.is_zero());
  CHECK(s1.base == A->one());

  auto w2 = OneForm<RatFunc>(A, {A->one()}, x);
  auto s2 = split_absolute(w2);
  CHECK(s2.relative == OneForm<RatFunc>::basis(A, 0));
  CHECK(s2.base == x);

  auto s3 = split_absolute(d(A, t * x));
  CHECK(s3.relative.to_string() == "t dx");
  CHECK(s3.base == x);

  auto vars2 = make_vars({"x", "y"});
  auto B = std::make_shared<const KChart>(f3, vars2, std::vector<KPoly>{parse_k("y^3 - y - t^3*x^5", vars2, f3)});
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    auto f = B->normal_form(testgen::k_poly(rng, f3, vars2, 3, 3, 2));
    auto w = d(B, f);
    auto s = split_absolute(w);
    CHECK(s.relative.dt_coeff().is_zero());
    CHECK(equivalent(s.relative + OneForm<RatFunc>::dt(B) * s.base, w));
  }

  auto C = std::make_shared<const KChart>(f3, vars2, std::vector<KPoly>{parse_k("y^2 - t*x", vars2, f3)});
  CHECK_THROWS_AS(split_absolute(d(C, C->var("x"))), Error);
}

TEST_CASE("cartier examples") {
  auto f3 = gf::Field::make(3);
  const RatFunc x = RatFunc::variable(f3);
  CHECK(cartier(x.pow(2)).is_one());
  CHECK(cartier(x).is_zero());
  CHECK(cartier(RatFunc::from_int(f3, 1)).is_zero());
  CHECK(is_locally_exact(RatFunc::from_int(f3, 1)));
  CHECK_FALSE(is_locally_exact(x.pow(2)));
  CHECK_FALSE(is_locally_exact(x.pow(5)));
  CHECK(is_locally_exact(x.pow(4)));
  // 1/x dx = d log x is closed but not exact.
  CHECK(cartier(x.inverse()) == x.inverse());
}

TEST_CASE("cartier monomial law") {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    auto f = gf::Field::make(p);
    const RatFunc x = RatFunc::variable(f);
    for (std::uint32_t i = 0; i <= 50; ++i) {
      CHECK(cartier(x.pow(i)) == monomial_cartier(f, i));
      CHECK(is_locally_exact(x.pow(i)) == ((i + 1) % p != 0));
    }
  }
}

TEST_CASE("cartier is p^-1 semilinear and kills exact forms") {
  for (std::uint32_t q : {3u, 5u, 9u}) {
    auto f = gf::Field::of_order(q);
    std::mt19937_64 rng(q);
    for (int trial = 0; trial < 200; ++trial) {
      auto a = testgen::ratfunc(rng, f, 4);
      auto b = testgen::ratfunc(rng, f, 4);
      auto g = testgen::ratfunc(rng, f, 3);
      CHECK(cartier(g.frobenius() * a) == g * cartier(a));
      CHECK(cartier(a + b) == cartier(a) + cartier(b));
      auto dec = cartier_decompose(a);
      CHECK(dec.components.size() == f.characteristic());
      CHECK(cartier(g.derivative()).is_zero());
      CHECK(cartier(RatFunc(testgen::upoly(rng, f, 20)).derivative()).is_zero());
    }
  }
}
