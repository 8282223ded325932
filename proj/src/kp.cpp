#include "charfol/kp.hpp"

namespace charfol::descent {

bool in_Kp(const algebra::RatFunc& r) { return r.derivative().is_zero(); }

algebra::RatFunc pth_root_K(const algebra::RatFunc& r) {
  auto num = r.num().pth_root();
  auto den = r.den().pth_root();
  if (!num || !den) throw Error(ErrorCode::NotAPthPower, r.to_string() + " is not in K^p");
  algebra::RatFunc s(*num, *den);
  ensure(s.frobenius() == r, "pth_root_K round trip");
  return s;
}

bool coefficients_in_Kp(const algebra::KPoly& f) {
  for (const auto& [m, c] : f.terms())
    if (!in_Kp(c)) return false;
  return true;
}

}  // namespace charfol::descent
