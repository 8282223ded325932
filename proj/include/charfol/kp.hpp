#pragma once

// Membership in K^p = F_q(t^p) and p-th roots in K = F_q(t).

#include "charfol/poly.hpp"
#include "charfol/ratfunc.hpp"

namespace charfol::descent {

// d r/dt = 0.
bool in_Kp(const algebra::RatFunc& r);

// The unique s with s^p = r. Throws NotAPthPower unless in_Kp(r).
algebra::RatFunc pth_root_K(const algebra::RatFunc& r);

// Every K-coefficient of f lies in K^p.
bool coefficients_in_Kp(const algebra::KPoly& f);

}  // namespace charfol::descent
