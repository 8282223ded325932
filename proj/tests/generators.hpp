#pragma once

// Random inputs for property tests. Everything is driven by an explicit
// std::mt19937_64 so failures reproduce from the seed alone.

#include <random>
#include <vector>

#include "charfol/chart.hpp"
#include "charfol/gf.hpp"
#include "charfol/poly.hpp"
#include "charfol/ratfunc.hpp"

namespace testgen {

using namespace charfol;
using algebra::FqPoly;
using algebra::KPoly;
using algebra::Monomial;
using algebra::RatFunc;
using algebra::UPoly;
using algebra::VarList;

inline gf::Elem elem(std::mt19937_64& rng, const gf::Field& f) {
  return f.from_index(static_cast<std::uint32_t>(rng() % f.order()));
}

inline gf::Elem nonzero_elem(std::mt19937_64& rng, const gf::Field& f) {
  return f.from_index(1 + static_cast<std::uint32_t>(rng() % (f.order() - 1)));
}

inline UPoly upoly(std::mt19937_64& rng, const gf::Field& f, int max_deg) {
  std::vector<gf::Elem> c;
  int deg = static_cast<int>(rng() % static_cast<std::uint64_t>(max_deg + 1));
  for (int i = 0; i <= deg; ++i) c.push_back(elem(rng, f));
  return UPoly(f, std::move(c));
}

inline RatFunc ratfunc(std::mt19937_64& rng, const gf::Field& f, int max_deg) {
  UPoly den = upoly(rng, f, max_deg);
  while (den.is_zero()) den = upoly(rng, f, max_deg);
  return RatFunc(upoly(rng, f, max_deg), den);
}

// Random element of K^p = F_q(t^p).
inline RatFunc kp_elem(std::mt19937_64& rng, const gf::Field& f, int max_deg) {
  return ratfunc(rng, f, max_deg).frobenius();
}

inline Monomial monomial(std::mt19937_64& rng, std::size_t arity, std::uint32_t max_deg) {
  Monomial m(arity, 0);
  std::uint32_t budget = static_cast<std::uint32_t>(rng() % (max_deg + 1));
  for (std::uint32_t k = 0; k < budget; ++k) m[rng() % arity] += 1;
  return m;
}

inline FqPoly fq_poly(std::mt19937_64& rng, const gf::Field& f, const VarList& vars, int terms,
                      std::uint32_t max_deg) {
  FqPoly r(f, vars);
  int n = static_cast<int>(rng() % static_cast<std::uint64_t>(terms + 1));
  for (int i = 0; i < n; ++i) r.add_term(monomial(rng, vars->size(), max_deg), elem(rng, f));
  return r;
}

inline KPoly k_poly(std::mt19937_64& rng, const gf::Field& f, const VarList& vars, int terms, std::uint32_t max_deg,
                    int coeff_deg) {
  KPoly r(f, vars);
  int n = static_cast<int>(rng() % static_cast<std::uint64_t>(terms + 1));
  for (int i = 0; i < n; ++i) r.add_term(monomial(rng, vars->size(), max_deg), ratfunc(rng, f, coeff_deg));
  return r;
}

}  // namespace testgen
