#pragma once

// Sparse multivariate polynomials over a coefficient field C, where C is
// gf::Elem (F_q) or algebra::RatFunc (K = F_q(t)). Terms are kept in
// descending graded-lex order with respect to the declared variable order;
// no zero coefficient is ever stored.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "charfol/gf.hpp"
#include "charfol/ratfunc.hpp"

namespace charfol::algebra {

using Monomial = std::vector<std::uint32_t>;
using VarList = std::shared_ptr<const std::vector<std::string>>;

VarList make_vars(std::vector<std::string> names);
bool same_vars(const VarList& a, const VarList& b);
std::uint32_t total_degree(const Monomial& m);

// Orders monomials so that the grlex-larger one comes first.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    std::uint32_t da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

template <class C>
class Poly {
 public:
  using Coeff = C;
  using TermMap = std::map<Monomial, C, GrlexGreater>;

  Poly(gf::Field f, VarList vars) : field_(f), vars_(std::move(vars)) {}

  static Poly constant(gf::Field f, VarList vars, const C& c) {
    Poly r(f, std::move(vars));
    r.add_term(Monomial(r.arity(), 0), c);
    return r;
  }
  static Poly from_int(gf::Field f, VarList vars, std::int64_t n) {
    return constant(f, std::move(vars), C::from_int(f, n));
  }
  static Poly variable(gf::Field f, VarList vars, std::size_t i, std::uint32_t power = 1) {
    Poly r(f, std::move(vars));
    Monomial m(r.arity(), 0);
    m.at(i) = power;
    r.add_term(m, C::from_int(f, 1));
    return r;
  }
  static Poly monomial(gf::Field f, VarList vars, Monomial m, const C& c) {
    Poly r(f, std::move(vars));
    r.add_term(m, c);
    return r;
  }

  const gf::Field& field() const { return field_; }
  const VarList& vars() const { return vars_; }
  std::size_t arity() const { return vars_->size(); }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  C zero_coeff() const { return C::from_int(field_, 0); }
  C one_coeff() const { return C::from_int(field_, 1); }
  Poly zero() const { return Poly(field_, vars_); }
  Poly one() const { return from_int(field_, vars_, 1); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && algebra::total_degree(terms_.begin()->first) == 0);
  }
  C constant_term() const { return coeff(Monomial(arity(), 0)); }
  C coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? zero_coeff() : it->second;
  }
  // Leading term in grlex order. Requires a nonzero polynomial.
  const std::pair<const Monomial, C>& lead() const { return *terms_.begin(); }

  int total_degree() const { return terms_.empty() ? -1 : static_cast<int>(algebra::total_degree(terms_.begin()->first)); }
  std::uint32_t degree_in(std::size_t var) const {
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
    return d;
  }
  // Variables with a nonzero exponent in some term.
  std::vector<std::size_t> support_vars() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < arity(); ++i)
      if (degree_in(i) > 0) out.push_back(i);
    return out;
  }

  void add_term(const Monomial& m, const C& c) {
    if (m.size() != arity()) throw Error(ErrorCode::ArityMismatch, "monomial arity");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Poly operator+(const Poly& b) const {
    check_compatible(b);
    Poly r = *this;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
  }
  Poly operator-() const {
    Poly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  Poly operator-(const Poly& b) const {
    check_compatible(b);
    Poly r = *this;
    for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
  }
  Poly operator*(const Poly& b) const {
    check_compatible(b);
    Poly r(field_, vars_);
    Monomial m(arity());
    for (const auto& [ma, ca] : terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
        r.add_term(m, ca * cb);
      }
    }
    return r;
  }
  Poly operator*(const C& s) const {
    if (s.is_zero()) return zero();
    Poly r = *this;
    for (auto& [m, c] : r.terms_) c = c * s;
    return r;
  }
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  Poly pow(std::uint32_t n) const {
    Poly result = one(), base = *this;
    while (n > 0) {
      if (n & 1) result = result * base;
      n >>= 1;
      if (n > 0) base = base * base;
    }
    return result;
  }

  // Multiply by the monomial x^shift.
  Poly shifted(const Monomial& shift) const {
    Poly r(field_, vars_);
    for (const auto& [m, c] : terms_) {
      Monomial n = m;
      for (std::size_t i = 0; i < n.size(); ++i) n[i] += shift[i];
      r.terms_.emplace(std::move(n), c);
    }
    return r;
  }

  // Formal partial derivative; k x^{k-1} with k reduced mod p.
  Poly partial(std::size_t var) const {
    Poly r(field_, vars_);
    for (const auto& [m, c] : terms_) {
      if (m[var] == 0) continue;
      Monomial n = m;
      n[var] -= 1;
      r.add_term(n, c.scaled(m[var]));
    }
    return r;
  }

  // Differentiate the coefficients (d/dt for K coefficients, zero over F_q).
  Poly coeff_derivative() const {
    Poly r(field_, vars_);
    for (const auto& [m, c] : terms_) r.add_term(m, c.derivative());
    return r;
  }

  template <class F>
  Poly map_coeffs(F&& f) const {
    Poly r(field_, vars_);
    for (const auto& [m, c] : terms_) r.add_term(m, f(c));
    return r;
  }

  // Exponent vectors scaled by k, coefficients unchanged.
  Poly scale_exponents(std::uint32_t k) const {
    Poly r(field_, vars_);
    for (const auto& [m, c] : terms_) {
      Monomial n = m;
      for (auto& e : n) e *= k;
      r.terms_.emplace(std::move(n), c);
    }
    return r;
  }

  // Substitute x_i -> values[i]; the values share a (possibly different)
  // variable list.
  Poly compose(const std::vector<Poly>& values) const {
    if (values.size() != arity()) throw Error(ErrorCode::ArityMismatch, "compose: wrong number of values");
    if (values.empty()) throw Error(ErrorCode::ArityMismatch, "compose: no variables");
    return evaluate<Poly>(
        values, [&](const C& c) { return Poly::constant(field_, values.front().vars(), c); },
        Poly::from_int(field_, values.front().vars(), 1));
  }

  // Generic evaluation into a ring R given the images of the variables and of
  // the coefficients. Powers of each variable are cached.
  template <class R, class Lift>
  R evaluate(const std::vector<R>& values, Lift&& lift, const R& one) const {
    std::vector<std::vector<R>> powers(arity());
    auto power_of = [&](std::size_t i, std::uint32_t k) -> const R& {
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(one);
      while (cache.size() <= k) cache.push_back(cache.back() * values[i]);
      return cache[k];
    };
    R acc = one * lift(zero_coeff());
    for (const auto& [m, c] : terms_) {
      R term = lift(c);
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] > 0) term = term * power_of(i, m[i]);
      acc = acc + term;
    }
    return acc;
  }

  bool operator==(const Poly& b) const { return same_vars(vars_, b.vars_) && terms_ == b.terms_; }

  std::string monomial_string(const Monomial& m) const {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += (*vars_)[i];
      if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s;
  }

  // Canonical form: descending grlex, " + " separated, coefficients in their
  // canonical representatives (parenthesized when compound).
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      if (!out.empty()) out += " + ";
      std::string mono = monomial_string(m);
      std::string cs = c.to_string();
      if (mono.empty()) {
        out += cs;
      } else if (c.is_one()) {
        out += mono;
      } else {
        bool compound = cs.find_first_of("+/") != std::string::npos;
        out += (compound ? "(" + cs + ")" : cs) + "*" + mono;
      }
    }
    return out;
  }

 private:
  void check_compatible(const Poly& b) const {
    if (!(field_ == b.field_)) throw Error(ErrorCode::FieldMismatch, "polynomials over different fields");
    if (!same_vars(vars_, b.vars_)) throw Error(ErrorCode::ArityMismatch, "polynomials over different variables");
  }

  gf::Field field_;
  VarList vars_;
  TermMap terms_;
};

using FqPoly = Poly<gf::Elem>;
using KPoly = Poly<RatFunc>;

extern template class Poly<gf::Elem>;
extern template class Poly<RatFunc>;

// Embed an F_q polynomial into K[x].
KPoly to_k(const FqPoly& f);

}  // namespace charfol::algebra
