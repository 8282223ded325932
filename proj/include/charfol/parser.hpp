#pragma once

// Polynomial input grammar:
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := ('+' | '-') unary | power
//   power  := atom ('^' INTEGER)?
//   atom   := INTEGER | IDENT | '(' expr ')'
//
// Whitespace is insignificant and implicit multiplication is rejected.
// Identifiers resolve to the declared variables first, then to the field
// generator "u" (extension fields only) and, for K = F_q(t) coefficients, to
// "t". Division is accepted only by a nonzero constant (an element of the
// coefficient field), which is what the canonical printer emits for K.

#include <string_view>

#include "charfol/poly.hpp"

namespace charfol::algebra {

template <class C>
Poly<C> parse_poly(std::string_view text, const VarList& vars, const gf::Field& field);

inline FqPoly parse_fq(std::string_view text, const VarList& vars, const gf::Field& field) {
  return parse_poly<gf::Elem>(text, vars, field);
}
inline KPoly parse_k(std::string_view text, const VarList& vars, const gf::Field& field) {
  return parse_poly<RatFunc>(text, vars, field);
}

// A single element of K written in t (and u), e.g. "(t^3+1)/(t+2)".
RatFunc parse_ratfunc(std::string_view text, const gf::Field& field);

extern template FqPoly parse_poly<gf::Elem>(std::string_view, const VarList&, const gf::Field&);
extern template KPoly parse_poly<RatFunc>(std::string_view, const VarList&, const gf::Field&);

}  // namespace charfol::algebra
