#include "charfol/differentials.hpp"

namespace charfol::differentials {

using algebra::RatFunc;
using algebra::UPoly;

Split split_absolute(const OneForm<RatFunc>& w) {
  for (const auto& rel : w.chart().relations())
    for (const auto& [m, c] : rel.poly.terms())
      if (!descent::in_Kp(c))
        throw Error(ErrorCode::NoModel, "relation coefficient " + c.to_string() + " is not in K^p");
  auto reduced = reduce_form(w).form;
  auto rel = OneForm<RatFunc>(w.chart_ptr(), reduced.coeffs());
  return {std::move(rel), reduced.dt_coeff()};
}

CartierDecomposition cartier_decompose(const RatFunc& f) {
  const gf::Field& field = f.field();
  const std::size_t p = field.characteristic();
  // f = u/v = u v^{p-1} / v^p
  UPoly g = f.num();
  for (std::size_t k = 1; k < p; ++k) g = g * f.den();
  std::vector<std::vector<gf::Elem>> h(p);
  for (std::size_t k = 0; k < g.coeffs().size(); ++k) {
    const gf::Elem& c = g.coeffs()[k];
    auto& hi = h[k % p];
    if (hi.size() <= k / p) hi.resize(k / p + 1, field.zero());
    hi[k / p] = c.pth_root();
  }
  CartierDecomposition out;
  for (std::size_t i = 0; i < p; ++i) out.components.emplace_back(UPoly(field, h[i]), f.den());
  RatFunc recomposed(field);
  const RatFunc x = RatFunc::variable(field);
  for (std::size_t i = 0; i < p; ++i)
    recomposed = recomposed + out.components[i].frobenius() * x.pow(static_cast<std::int64_t>(i));
  ensure(recomposed == f, "Cartier recomposition");
  return out;
}

RatFunc cartier(const RatFunc& f) { return cartier_decompose(f).components.back(); }

bool is_locally_exact(const RatFunc& f) { return cartier(f).is_zero(); }

}  // namespace charfol::differentials
