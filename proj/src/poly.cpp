#include "charfol/poly.hpp"

#include <numeric>

namespace charfol::algebra {

VarList make_vars(std::vector<std::string> names) {
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

bool same_vars(const VarList& a, const VarList& b) { return a == b || *a == *b; }

std::uint32_t total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0u); }

KPoly to_k(const FqPoly& f) {
  KPoly r(f.field(), f.vars());
  for (const auto& [m, c] : f.terms()) r.add_term(m, RatFunc::constant(c));
  return r;
}

template class Poly<gf::Elem>;
template class Poly<RatFunc>;

}  // namespace charfol::algebra
