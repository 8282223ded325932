#include <chrono>
#include <random>

#include "charfol/adelic.hpp"
#include "charfol/parser.hpp"
#include "doctest.h"
#include "generators.hpp"

using namespace charfol;
using namespace charfol::algebra;
using namespace charfol::adelic;
using series::LaurentSeries;

namespace {

std::shared_ptr<const KChart> kchart(const gf::Field& f, std::vector<std::string> names,
                                     std::vector<std::string> rels) {
  auto vars = make_vars(std::move(names));
  std::vector<KPoly> r;
  for (const auto& s : rels) r.push_back(parse_k(s, vars, f));
  return std::make_shared<const KChart>(f, vars, std::move(r));
}

LaurentSeries tpow(const gf::Field& f, int k, int N) { return LaurentSeries::monomial(f.one(), k, N); }

// Series with every exponent known: dense random integral series.
LaurentSeries random_series(std::mt19937_64& rng, const gf::Field& f, int N) {
  std::vector<gf::Elem> c;
  for (int k = 0; k < N; ++k) c.push_back(testgen::elem(rng, f));
  return LaurentSeries(f, 0, std::move(c), N);
}

}  // namespace

TEST_CASE("make_point") {
  auto f3 = gf::Field::make(3);
  auto A = kchart(f3, {"x", "y"}, {"y^6 - y - x^5"});
  const int N = 40;
  auto x = tpow(f3, 1, N);
  auto y = series::newton_root({-x.pow(5), LaurentSeries::from_int(f3, -1, N), LaurentSeries::zero(f3, N),
                                LaurentSeries::zero(f3, N), LaurentSeries::zero(f3, N), LaurentSeries::zero(f3, N),
                                LaurentSeries::from_int(f3, 1, N)},
                               f3.zero(), N);
  auto P = make_point(A, {x, y}, N);
  CHECK(P.precision == N);
  CHECK_NOTHROW(make_point(A, {LaurentSeries::zero(f3, N), LaurentSeries::zero(f3, N)}, N));

  auto f9 = gf::Field::of_order(9);
  auto B = kchart(f9, {"x", "y"}, {"y^6 - y - x^5"});
  try {
    make_point(B, {LaurentSeries::zero(f9, N), LaurentSeries::constant(f9.gen(), N)}, N);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotOnVariety);
    CHECK(std::string(e.what()).find("valuation 0") != std::string::npos);
  }
}

TEST_CASE("pullback_form") {
  auto f3 = gf::Field::make(3);
  const int N = 32;
  auto L = kchart(f3, {"x"}, {});
  auto dx = differentials::d(L, L->var("x"));
  CHECK(pullback_form(make_point(L, {tpow(f3, 1, N)}, N), dx).is_one());
  CHECK(pullback_form(make_point(L, {tpow(f3, 3, N)}, N), dx).is_zero());

  auto R = kchart(f3, {"x", "y", "z"}, {"z^2 - y^3 - x"});
  std::mt19937_64 rng(1);
  auto y = random_series(rng, f3, N);
  auto z = tpow(f3, 1, N);
  auto P = make_point(R, {z * z - y.pow(3), y, z}, N);
  auto two_z_dz = differentials::OneForm<RatFunc>::basis(R, 2) * (R->var("z") * R->constant(RatFunc::from_int(f3, 2)));
  auto pb = pullback_form(P, two_z_dz);
  CHECK(pb.agrees_with(tpow(f3, 1, N) * f3.from_int(2), N - 1));
  CHECK(pb.agrees_with(pullback_form(P, differentials::d(R, R->var("x"))), N - 1));
}

TEST_CASE("saturation identity along random points") {
  auto f3 = gf::Field::make(3);
  auto R = kchart(f3, {"x", "y", "z"}, {"z^2 - y^3 - x"});
  auto dx = differentials::d(R, R->var("x"));
  auto red = differentials::reduce_form(dx).form;
  CHECK(red.to_string() == "2*z dz");
  std::mt19937_64 rng(50);
  for (int trial = 0; trial < 50; ++trial) {
    auto P = random_point(R, rng, 32);
    auto a = pullback_form(P, dx), b = pullback_form(P, red);
    CHECK(a.precision() >= 31);
    CHECK(a.agrees_with(b, 31));
  }
}

TEST_CASE("chain rule for pullbacks") {
  auto f5 = gf::Field::make(5);
  auto A = kchart(f5, {"x", "y"}, {"y^5 - y - t^5*x^4"});
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    auto P = random_point(A, rng, 40);
    auto g = A->normal_form(testgen::k_poly(rng, f5, A->vars(), 4, 4, 0));
    // Coefficients in F_q[t] keep the evaluation integral.
    g = g + A->var("x") * A->constant(RatFunc::variable(f5));
    auto lhs = pullback_form(P, differentials::d(A, g));
    auto rhs = series::evaluate(g, P.coords, 40).derivative();
    CHECK(lhs.agrees_with(rhs, 39));
  }
}

TEST_CASE("star condition") {
  auto f3 = gf::Field::make(3);
  const int N = 20;
  auto A = kchart(f3, {"x", "y"}, {});
  auto dx = differentials::d(A, A->var("x")), dy = differentials::d(A, A->var("y"));
  auto P1 = make_point(A, {tpow(f3, 1, N), tpow(f3, 1, N)}, N);
  auto P3 = make_point(A, {tpow(f3, 3, N), tpow(f3, 1, N)}, N);
  CHECK(star_condition(P1, {dx}).holds);
  CHECK_FALSE(star_condition(P3, {dx}).holds);
  auto s = star_condition(P3, {dx, dy});
  CHECK(s.holds);
  REQUIRE(s.witness);
  CHECK(*s.witness == 1);
}

TEST_CASE("lift through u -> u^p") {
  auto f3 = gf::Field::make(3);
  const int N = 30;
  auto X = kchart(f3, {"x"}, {});
  auto Y = kchart(f3, {"u"}, {});
  QuotientPresentation phi{Y, X, {parse_k("u^3", Y->vars(), f3)}, true};
  auto L = lift_point(make_point(X, {tpow(f3, 3, N)}, N), phi);
  REQUIRE(L.lifted);
  CHECK(L.lift->coords[0].agrees_with(tpow(f3, 1, N), 10));
  auto M = lift_point(make_point(X, {tpow(f3, 1, N)}, N), phi);
  CHECK_FALSE(M.lifted);
  CHECK(M.obstruction.find("coordinate x") != std::string::npos);

  QuotientPresentation bad{Y, X, {parse_k("u^2 + u", Y->vars(), f3)}, true};
  CHECK_THROWS_AS(lift_point(make_point(X, {tpow(f3, 3, N)}, N), bad), Error);
}

TEST_CASE("quotient of the plane by d/dy") {
  auto f3 = gf::Field::make(3);
  const int N = 30;
  auto A = kchart(f3, {"x", "y"}, {});
  auto model = descent::descend_algebra(A);
  auto D = foliation::Derivation<RatFunc>::partial(A, 1);
  auto fact = foliation::frobenius_factorization_check(descent::descend_derivation(D, model));
  auto phi = build_presentation(model, fact);
  CHECK(phi.inseparable);
  CHECK(phi.images[0].to_string() == "x^3");
  CHECK(phi.images[1].to_string() == "w1");

  auto no = lift_point(make_point(A, {tpow(f3, 1, N), tpow(f3, 2, N)}, N), phi);
  CHECK_FALSE(no.lifted);
  auto yes = lift_point(make_point(A, {tpow(f3, 3, N), tpow(f3, 2, N)}, N), phi);
  REQUIRE(yes.lifted);
  CHECK(yes.lift->coords[1].agrees_with(tpow(f3, 2, N), N));
}

TEST_CASE("lifts reproduce the point") {
  auto f3 = gf::Field::make(3);
  auto R = kchart(f3, {"x", "y", "z"}, {"z^2 - y^3 - x"});
  auto model = descent::descend_algebra(R);
  auto D = foliation::kernel_of_form(differentials::d(R, R->var("z")));
  auto fact = foliation::frobenius_factorization_check(descent::descend_derivation(D, model));
  auto phi = build_presentation(model, fact);
  CHECK(phi.inseparable);
  std::mt19937_64 rng(4);
  int lifted = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto P = random_point(R, rng, 48);
    auto L = lift_point(P, phi);
    // Membership of z in L^p decided by exponents and by d/dt.
    CHECK(P.coords[2].is_pth_power() == P.coords[2].derivative().is_zero());
    CHECK(L.lifted == P.coords[2].is_pth_power());
    if (!L.lifted) continue;
    ++lifted;
    for (std::size_t i = 0; i < phi.images.size(); ++i) {
      auto back = series::evaluate(phi.images[i], L.lift->coords, 48);
      CHECK(back.agrees_with(P.coords[i], L.lift->precision));
    }
  }
  CHECK(lifted > 20);
  CHECK(lifted < 80);
}

TEST_CASE("equivalence on the plane and on the Raynaud chart") {
  auto f3 = gf::Field::make(3);
  struct Setup {
    std::shared_ptr<const KChart> A;
    KDerivation D;
    std::vector<KForm> sections;
  };
  auto plane = kchart(f3, {"x", "y"}, {});
  auto R = kchart(f3, {"x", "y", "z"}, {"z^2 - y^3 - x"});
  auto dz = differentials::d(R, R->var("z"));
  std::vector<Setup> setups{
      {plane, KDerivation::partial(plane, 1), {differentials::d(plane, plane->var("x"))}},
      {R, foliation::kernel_of_form(dz), {dz}},
  };
  for (const auto& s : setups) {
    EquivalenceOptions opts;
    opts.trials = 200;
    opts.seed = 7;
    auto start = std::chrono::steady_clock::now();
    auto rep = verify_equivalence(s.A, s.D, s.sections, opts);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(secs < 60.0);
    CHECK(rep.status == "pass");
    CHECK(rep.counterexamples == 0);
    CHECK(rep.undetermined == 0);
    CHECK(rep.lifted >= 60);
    CHECK(rep.not_lifted >= 60);
    CHECK(rep.lifted + rep.not_lifted == 200);

    opts.jobs = 2;
    auto par = verify_equivalence(s.A, s.D, s.sections, opts);
    REQUIRE(par.records.size() == rep.records.size());
    for (std::size_t i = 0; i < par.records.size(); ++i) {
      CHECK(par.records[i].lifted == rep.records[i].lifted);
      CHECK(par.records[i].star == rep.records[i].star);
    }
  }

  EquivalenceOptions opts;
  opts.trials = 20;
  auto empty = verify_equivalence(R, foliation::kernel_of_form(dz), {}, opts);
  CHECK(empty.status == "inconclusive");
  CHECK_FALSE(empty.sections_generate);
  // Sections with no unit coefficient need the generation hypothesis asserted.
  auto zdz = dz * R->var("z");
  CHECK(verify_equivalence(R, foliation::kernel_of_form(dz), {zdz}, opts).status == "inconclusive");
  opts.generation_asserted = true;
  CHECK(verify_equivalence(R, foliation::kernel_of_form(dz), {dz}, opts).status == "pass");
}

TEST_CASE("a form outside the kernel sheaf produces counterexamples") {
  auto f3 = gf::Field::make(3);
  auto plane = kchart(f3, {"x", "y"}, {});
  EquivalenceOptions opts;
  opts.trials = 40;
  auto rep = verify_equivalence(plane, KDerivation::partial(plane, 1), {differentials::d(plane, plane->var("y"))}, opts);
  CHECK_FALSE(rep.sections_annihilate);
  CHECK(rep.counterexamples > 0);
  CHECK(rep.status == "fail");
}
