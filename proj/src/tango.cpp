#include "charfol/tango.hpp"

#include "charfol/differentials.hpp"
#include "charfol/parser.hpp"

namespace charfol::tango {

using algebra::FqChart;
using algebra::FqPoly;
using algebra::make_vars;

namespace {

std::string pow_str(const std::string& v, std::uint32_t e) { return e == 1 ? v : v + "^" + std::to_string(e); }

gf::Field tango_field(std::uint32_t p, std::uint32_t d, std::optional<std::uint32_t> q) {
  if (p < 3) throw Error(ErrorCode::InvalidParameters, "planar Tango curves need p >= 3");
  if (d < 2) throw Error(ErrorCode::InvalidParameters, "planar Tango curves need d >= 2");
  gf::Field f = gf::Field::make(p);
  if (!q || *q == p) return f;
  gf::Field g = gf::Field::of_order(*q);
  if (g.characteristic() != p) throw Error(ErrorCode::InvalidParameters, "q is not a power of p");
  return g;
}

}  // namespace

PlanarTangoCurve::PlanarTangoCurve(std::uint32_t p, std::uint32_t d, std::optional<std::uint32_t> q)
    : p_(p), d_(d), field_(tango_field(p, d, q)) {}

FqPoly PlanarTangoCurve::projective_form() const {
  const std::uint32_t n = degree();
  auto vars = make_vars({"X", "Y", "Z"});
  return algebra::parse_fq(pow_str("Y", n) + " - Y*" + pow_str("Z", n - 1) + " - Z*" + pow_str("X", n - 1), vars,
                           field_);
}

std::shared_ptr<const FqChart> PlanarTangoCurve::affine_model() const {
  const std::uint32_t n = degree();
  auto vars = make_vars({"x", "y"});
  auto f = algebra::parse_fq(pow_str("y", n) + " - y - " + pow_str("x", n - 1), vars, field_);
  return std::make_shared<const FqChart>(field_, vars, std::vector<std::pair<FqPoly, std::size_t>>{{f, 1}});
}

FqPoly PlanarTangoCurve::infinity_equation() const {
  const std::uint32_t n = degree();
  auto vars = make_vars({"v", "w"});
  return algebra::parse_fq(pow_str("v", n) + " - v*" + pow_str("w", n - 1) + " - w", vars, field_);
}

SmoothnessCertificate smoothness_certificate(const PlanarTangoCurve& C) {
  SmoothnessCertificate out;
  const auto A = C.affine_model();
  const FqPoly dfdy = A->relations()[0].poly.partial(1);
  out.dfdy = dfdy.to_string();
  out.affine_unit = dfdy.is_constant() && !dfdy.is_zero();

  const FqPoly F = C.infinity_equation();
  const std::vector<gf::Elem> origin{C.field().zero(), C.field().zero()};
  auto at_origin = [&](const FqPoly& g) {
    return g.template evaluate<gf::Elem>(origin, [](const gf::Elem& c) { return c; }, C.field().one());
  };
  out.infinity_passes_Q = at_origin(F).is_zero();
  const gf::Elem dw = at_origin(F.partial(1));
  out.dFdw_at_Q = dw.to_string();
  out.infinity_smooth = !dw.is_zero();

  const FqPoly P = C.projective_form();
  FqPoly boundary(P.field(), P.vars());
  for (const auto& [m, c] : P.terms())
    if (m[2] == 0) boundary.add_term(m, c);
  out.boundary = boundary.to_string();
  out.boundary_only_Q = boundary.size() == 1 && boundary.lead().first[0] == 0 &&
                        boundary.lead().first[1] == C.degree();
  return out;
}

DivisorOfDx divisor_of_dx(const PlanarTangoCurve& C, int precision) {
  const int n = static_cast<int>(C.degree());
  if (precision <= n * (n - 1))
    throw Error(ErrorCode::PrecisionExhausted,
                "precision " + std::to_string(precision) + " does not reach dp(dp-1) = " + std::to_string(n * (n - 1)));
  DivisorOfDx out;
  out.precision = precision;

  const auto A = C.affine_model();
  auto elim = differentials::eliminate_relations(A);
  out.affine_generator = elim.unreduced.empty() && elim.pivots.size() == 1 && elim.pivots[0] == 1;
  out.eliminated = (*A->vars())[elim.pivots.empty() ? 0 : elim.pivots[0]];

  auto w = series::implicit_series(C.infinity_equation(), 0, 1, precision);
  out.w_expansion = w.truncated(std::min(precision, n * (n - 1) + 2)).to_string("v");
  out.ord_Q = series::ord_of_differential(w.inverse());
  return out;
}

std::int64_t genus(const PlanarTangoCurve& C, const std::optional<DivisorOfDx>& div) {
  const std::int64_t n = C.degree();
  const std::int64_t g = (n - 1) * (n - 2) / 2;
  if (div && 2 * g - 2 != div->ord_Q)
    throw Error(ErrorCode::GenusMismatch, "degree-genus formula gives 2g-2 = " + std::to_string(2 * g - 2) +
                                              " but deg div(dx) = " + std::to_string(div->ord_Q));
  return g;
}

TangoReport verify_tango_structure(const PlanarTangoCurve& C, std::optional<int> precision) {
  TangoReport r;
  r.p = C.p();
  r.d = C.d();
  const std::int64_t n = C.degree();
  r.smooth = smoothness_certificate(C);
  r.divisor = divisor_of_dx(C, precision.value_or(C.default_precision()));
  r.ord_Q = r.divisor.ord_Q;
  r.g = genus(C, r.divisor);
  r.ord_formula = static_cast<int>(n * (n - 3));
  r.ord_matches = r.ord_Q == r.ord_formula;

  // dx = d(x): the form 1·dx has Cartier image zero.
  r.dx_exact = differentials::is_locally_exact(algebra::RatFunc::from_int(C.field(), 1));

  r.deg_N = n - 3;
  r.deg_L = static_cast<std::int64_t>(C.d()) * r.deg_N;
  r.divisor_is_pL = r.ord_Q == static_cast<std::int64_t>(C.p()) * r.deg_L;
  r.tango_equality = static_cast<std::int64_t>(C.p()) * r.deg_L == 2 * r.g - 2;
  r.index_d = r.deg_L == static_cast<std::int64_t>(C.d()) * r.deg_N;
  r.d_divides_p_plus_1 = (C.p() + 1) % C.d() == 0;
  return r;
}

}  // namespace charfol::tango
