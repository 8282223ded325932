#pragma once

// Derivations on chart algebras and rank-1 foliations. A derivation is
// stored by its values on the generators; over K it kills t.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "charfol/chart.hpp"
#include "charfol/differentials.hpp"
#include "charfol/linalg.hpp"

namespace charfol::foliation {

using algebra::ChartAlgebra;
using algebra::Monomial;
using algebra::Poly;
using algebra::VarList;
using differentials::OneForm;

template <class C>
class Derivation {
 public:
  using Chart = ChartAlgebra<C>;

  // Throws RelationNotPreserved unless nf(D(r_j)) = 0 for every relation.
  Derivation(std::shared_ptr<const Chart> A, std::vector<Poly<C>> values) : A_(std::move(A)), g_(std::move(values)) {
    if (g_.size() != A_->arity()) throw Error(ErrorCode::ArityMismatch, "derivation has wrong number of values");
    for (auto& g : g_) g = A_->normal_form(g);
    for (const auto& rel : A_->relations()) {
      auto image = apply(rel.poly);
      if (!image.is_zero())
        throw Error(ErrorCode::RelationNotPreserved,
                    "D(" + rel.poly.to_string() + ") = " + image.to_string() + " is not zero in the chart");
    }
  }

  static Derivation zero(std::shared_ptr<const Chart> A) {
    std::vector<Poly<C>> g(A->arity(), A->zero());
    return Derivation(std::move(A), std::move(g));
  }
  // ∂/∂x_i; only valid when it preserves the relations.
  static Derivation partial(std::shared_ptr<const Chart> A, std::size_t i) {
    std::vector<Poly<C>> g(A->arity(), A->zero());
    g.at(i) = A->one();
    return Derivation(std::move(A), std::move(g));
  }

  const Chart& chart() const { return *A_; }
  const std::shared_ptr<const Chart>& chart_ptr() const { return A_; }
  const std::vector<Poly<C>>& values() const { return g_; }
  const Poly<C>& value(std::size_t i) const { return g_.at(i); }

  bool is_zero() const {
    return std::all_of(g_.begin(), g_.end(), [](const Poly<C>& g) { return g.is_zero(); });
  }

  // sum g_i ∂f/∂x_i in normal form.
  Poly<C> apply(const Poly<C>& f) const {
    Poly<C> acc = A_->zero();
    for (std::size_t i = 0; i < g_.size(); ++i) {
      if (g_[i].is_zero()) continue;
      auto df = f.partial(i);
      if (!df.is_zero()) acc += g_[i] * df;
    }
    return A_->normal_form(acc);
  }

  // D applied k times.
  Poly<C> iterate(const Poly<C>& f, std::uint32_t k) const {
    Poly<C> cur = A_->normal_form(f);
    for (std::uint32_t i = 0; i < k; ++i) cur = apply(cur);
    return cur;
  }

  Derivation operator+(const Derivation& b) const {
    std::vector<Poly<C>> g(g_.size(), A_->zero());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = g_[i] + b.g_[i];
    return Derivation(A_, std::move(g));
  }
  Derivation operator-(const Derivation& b) const {
    std::vector<Poly<C>> g(g_.size(), A_->zero());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = g_[i] - b.g_[i];
    return Derivation(A_, std::move(g));
  }
  Derivation operator*(const Poly<C>& f) const {
    std::vector<Poly<C>> g(g_.size(), A_->zero());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = g_[i] * f;
    return Derivation(A_, std::move(g));
  }
  bool operator==(const Derivation& b) const { return g_ == b.g_; }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < g_.size(); ++i) {
      if (g_[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      const std::string name = "d/d" + (*A_->vars())[i];
      if (g_[i].is_constant() && g_[i].constant_term().is_one()) {
        out += name;
      } else {
        std::string gs = g_[i].to_string();
        out += (g_[i].size() > 1 ? "(" + gs + ")" : gs) + " " + name;
      }
    }
    return out.empty() ? "0" : out;
  }

 private:
  std::shared_ptr<const Chart> A_;
  std::vector<Poly<C>> g_;
};

// [D1, D2](x_i) = D1(g2_i) - D2(g1_i)
template <class C>
Derivation<C> bracket(const Derivation<C>& a, const Derivation<C>& b) {
  std::vector<Poly<C>> g;
  for (std::size_t i = 0; i < a.values().size(); ++i) g.push_back(a.apply(b.value(i)) - b.apply(a.value(i)));
  return Derivation<C>(a.chart_ptr(), std::move(g));
}

// D^{[p]}: the derivation whose value on x_i is D^p(x_i).
template <class C>
Derivation<C> p_power(const Derivation<C>& D) {
  const std::uint32_t p = D.chart().field().characteristic();
  std::vector<Poly<C>> g;
  for (std::size_t i = 0; i < D.values().size(); ++i) g.push_back(D.iterate(D.chart().var(i), p));
  return Derivation<C>(D.chart_ptr(), std::move(g));
}

namespace detail {

// Quotient of a by b in the polynomial ring when the division is exact.
template <class C>
std::optional<Poly<C>> exact_divide(Poly<C> a, const Poly<C>& b) {
  if (b.is_zero()) return std::nullopt;
  Poly<C> q = a.zero();
  const auto& [lb, cb] = b.lead();
  const C inv = cb.inverse();
  while (!a.is_zero()) {
    const auto [la, ca] = a.lead();
    Monomial m(la.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (la[i] < lb[i]) return std::nullopt;
      m[i] = la[i] - lb[i];
    }
    const C c = ca * inv;
    q.add_term(m, c);
    a -= b.shifted(m) * c;
  }
  return q;
}

// Coefficients of f as a polynomial in x_v; f must involve no other variable.
template <class C>
std::vector<C> univariate_coeffs(const Poly<C>& f, std::size_t v) {
  std::vector<C> out(f.degree_in(v) + 1, f.zero_coeff());
  for (const auto& [m, c] : f.terms()) out[m[v]] = c;
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return out;
}

template <class C>
Poly<C> from_univariate(const std::vector<C>& c, const Poly<C>& like, std::size_t v) {
  Poly<C> out = like.zero();
  Monomial m(like.arity(), 0);
  for (std::size_t k = 0; k < c.size(); ++k) {
    m[v] = static_cast<std::uint32_t>(k);
    out.add_term(m, c[k]);
  }
  return out;
}

template <class C>
std::pair<std::vector<C>, std::vector<C>> udivmod(std::vector<C> a, const std::vector<C>& b) {
  const C zero = C::from_int(b.back().field(), 0);
  std::vector<C> q;
  if (a.size() >= b.size()) {
    q.assign(a.size() - b.size() + 1, zero);
    const C inv = b.back().inverse();
    for (std::size_t s = q.size(); s-- > 0;) {
      const C f = a[s + b.size() - 1] * inv;
      if (f.is_zero()) continue;
      q[s] = f;
      for (std::size_t j = 0; j < b.size(); ++j) a[s + j] = a[s + j] - f * b[j];
    }
  }
  while (!a.empty() && a.back().is_zero()) a.pop_back();
  while (!q.empty() && q.back().is_zero()) q.pop_back();
  return {q, a};
}

}  // namespace detail

template <class C>
struct PClosedness {
  bool closed = false;
  std::optional<Poly<C>> h;  // D^{[p]} = h D when found
};

// Rank-1 p-closedness: D^{[p]} and D proportional over Frac(A).
template <class C>
PClosedness<C> is_p_closed_rank1(const Derivation<C>& D) {
  if (D.is_zero()) throw Error(ErrorCode::InvalidParameters, "p-closedness of the zero derivation");
  const auto& A = D.chart();
  const Derivation<C> Dp = p_power(D);
  const std::size_t n = A.arity();
  PClosedness<C> out;
  out.closed = true;
  for (std::size_t i = 0; i < n && out.closed; ++i)
    for (std::size_t j = i + 1; j < n && out.closed; ++j)
      if (!A.normal_form(D.value(i) * Dp.value(j) - D.value(j) * Dp.value(i)).is_zero()) out.closed = false;
  if (!out.closed) return out;

  auto verify = [&](const Poly<C>& h) {
    for (std::size_t i = 0; i < n; ++i)
      if (!(A.normal_form(h * D.value(i)) == Dp.value(i))) return false;
    return true;
  };
  for (std::size_t i = 0; i < n && !out.h; ++i) {
    const auto& g = D.value(i);
    if (g.is_zero()) continue;
    std::optional<Poly<C>> cand;
    if (g.is_constant()) {
      cand = Dp.value(i) * g.constant_term().inverse();
    } else {
      cand = detail::exact_divide(Dp.value(i), g);
    }
    if (cand && verify(*cand)) out.h = A.normal_form(*cand);
  }
  return out;
}

// ω(D) = sum ω_i D(x_i); D(t) = 0, so a dt component contributes nothing.
template <class C>
Poly<C> pairing(const OneForm<C>& w, const Derivation<C>& D) {
  Poly<C> acc = D.chart().zero();
  for (std::size_t i = 0; i < w.coeffs().size(); ++i) acc += w.coeff(i) * D.value(i);
  return D.chart().normal_form(acc);
}

// Kernel of a relative 1-form on a surface chart: after reduction exactly
// two coordinates remain free, ω = a dx_i + b dx_j there, and
// D = b ∂_i - a ∂_j extended to the eliminated coordinates through the
// relation differentials.
template <class C>
Derivation<C> kernel_of_form(const OneForm<C>& w) {
  const auto& Aptr = w.chart_ptr();
  const auto& A = *Aptr;
  auto elim = differentials::eliminate_relations(Aptr);
  if (!elim.unreduced.empty())
    throw Error(ErrorCode::NotSurfaceChart, "relation without a unit partial derivative");
  auto red = differentials::reduce_form(w, elim).form;
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < A.arity(); ++i)
    if (std::find(elim.pivots.begin(), elim.pivots.end(), i) == elim.pivots.end()) free.push_back(i);
  if (free.size() != 2)
    throw Error(ErrorCode::NotSurfaceChart, "chart has " + std::to_string(free.size()) + " free coordinates, not 2");
  const std::size_t i = free[0], j = free[1];
  Poly<C> a = red.coeff(i), b = red.coeff(j);
  if (a.is_zero() && b.is_zero()) throw Error(ErrorCode::ZeroForm, "relative part of the form vanishes");

  // Content removal when a and b are univariate in a common variable.
  auto sa = a.support_vars(), sb = b.support_vars();
  std::vector<std::size_t> all = sa;
  all.insert(all.end(), sb.begin(), sb.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  if (all.size() == 1) {
    const std::size_t v = all[0];
    auto ca = detail::univariate_coeffs(a, v), cb = detail::univariate_coeffs(b, v);
    std::vector<C> x = ca, y = cb;
    while (!y.empty()) {
      auto r = detail::udivmod(x, y).second;
      x = std::move(y);
      y = std::move(r);
    }
    if (x.size() > 1) {
      a = detail::from_univariate(detail::udivmod(ca, x).first, a, v);
      b = detail::from_univariate(detail::udivmod(cb, x).first, b, v);
    }
  }

  std::vector<Poly<C>> g(A.arity(), A.zero());
  g[i] = b;
  g[j] = -a;
  for (std::size_t k = 0; k < elim.rows.size(); ++k) {
    Poly<C> acc = A.zero();
    acc += elim.rows[k].coeff(i) * g[i];
    acc += elim.rows[k].coeff(j) * g[j];
    g[elim.pivots[k]] = -acc;
  }
  for (const auto& gi : g) {
    if (gi.is_zero()) continue;
    const C lead = gi.lead().second;
    if (!lead.is_one())
      for (auto& gk : g) gk = gk * lead.inverse();
    break;
  }
  return Derivation<C>(Aptr, std::move(g));
}

template <class C>
struct PairingReport {
  Poly<C> omega_D;
  Poly<C> omega_Dp;
  Poly<C> d_omega;  // D1(ω(D2)) - D2(ω(D1)) - ω([D1, D2])
  bool all_vanish() const { return omega_D.is_zero() && omega_Dp.is_zero() && d_omega.is_zero(); }
};

// The pair for the dω identity defaults to (D, D^{[p]}).
template <class C>
PairingReport<C> pairing_checks(const OneForm<C>& w, const Derivation<C>& D,
                                std::type_identity_t<std::optional<std::pair<Derivation<C>, Derivation<C>>>> pair = std::nullopt) {
  auto Dp = p_power(D);
  const auto& [D1, D2] = pair ? *pair : std::pair<Derivation<C>, Derivation<C>>{D, Dp};
  Poly<C> domega = D1.apply(pairing(w, D2)) - D2.apply(pairing(w, D1)) - pairing(w, bracket(D1, D2));
  return {pairing(w, D), pairing(w, Dp), D.chart().normal_form(domega)};
}

// Basis of {f : deg f <= B, D(f) = 0} over the constants, from the kernel of
// D on the normal-form monomial basis. Each basis element has coefficient 1
// on a distinct monomial.
template <class C>
std::vector<Poly<C>> ring_of_constants(const Derivation<C>& D, std::uint32_t bound) {
  const auto& A = D.chart();
  const auto monos = A.basis_monomials(bound);
  std::map<Monomial, std::size_t> row_of;
  std::vector<Poly<C>> images;
  for (const auto& m : monos) {
    images.push_back(D.apply(Poly<C>::monomial(A.field(), A.vars(), m, A.one().constant_term())));
    for (const auto& [mm, c] : images.back().terms()) row_of.try_emplace(mm, row_of.size());
  }
  const C zero = A.zero().zero_coeff(), one = A.one().constant_term();
  linalg::Matrix<C> M(row_of.size(), std::vector<C>(monos.size(), zero));
  for (std::size_t col = 0; col < monos.size(); ++col)
    for (const auto& [mm, c] : images[col].terms()) M[row_of[mm]][col] = c;
  auto kernel = linalg::nullspace(M, monos.size(), zero, one);
  std::vector<Poly<C>> out;
  for (const auto& v : kernel) {
    Poly<C> f = A.zero();
    for (std::size_t col = 0; col < monos.size(); ++col) f.add_term(monos[col], v[col]);
    out.push_back(std::move(f));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Poly<C>& x, const Poly<C>& y) { return x.total_degree() < y.total_degree(); });
  return out;
}

namespace detail {

// Span of polynomials with Gauss-Jordan pivots on monomials; each row carries
// an expression (in some other ring) that maps to it.
template <class C>
class TrackedSpan {
 public:
  explicit TrackedSpan(Poly<C> expr_zero) : expr_zero_(std::move(expr_zero)) {}

  // Residual of v and the expression subtracted from it.
  std::pair<Poly<C>, Poly<C>> reduce(Poly<C> v) const {
    Poly<C> expr = expr_zero_;
    for (const auto& row : rows_) {
      const C f = v.coeff(row.pivot);
      if (f.is_zero()) continue;
      v -= row.vec * f;
      expr += row.expr * f;
    }
    return {std::move(v), std::move(expr)};
  }

  // Inserts vec (mapped from expr). Returns the residual expression when vec
  // was already in the span: expr - (combination) maps to zero.
  std::optional<Poly<C>> insert(const Poly<C>& vec, const Poly<C>& expr) {
    auto [res, comb] = reduce(vec);
    Poly<C> e = expr - comb;
    if (res.is_zero()) return e;
    const auto [piv, c] = res.lead();
    const C inv = c.inverse();
    Row row{piv, res * inv, e * inv};
    for (auto& r : rows_) {
      const C f = r.vec.coeff(piv);
      if (f.is_zero()) continue;
      r.vec -= row.vec * f;
      r.expr -= row.expr * f;
    }
    rows_.push_back(std::move(row));
    return std::nullopt;
  }

  bool contains(const Poly<C>& v) const { return reduce(v).first.is_zero(); }

 private:
  struct Row {
    Monomial pivot;
    Poly<C> vec;
    Poly<C> expr;
  };
  Poly<C> expr_zero_;
  std::vector<Row> rows_;
};

// Exponent vectors over k generators with sum(e_i * weight_i) <= bound, in
// increasing weight.
inline std::vector<Monomial> weighted_monomials(const std::vector<std::uint32_t>& weights, std::uint32_t bound) {
  std::vector<Monomial> out;
  Monomial m(weights.size(), 0);
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t used) {
    if (i == weights.size()) {
      out.push_back(m);
      return;
    }
    for (std::uint32_t e = 0; used + e * weights[i] <= bound; ++e) {
      m[i] = e;
      rec(i + 1, used + e * weights[i]);
      if (weights[i] == 0) break;
    }
    m[i] = 0;
  };
  rec(0, 0);
  auto weight = [&](const Monomial& x) {
    std::uint32_t w = 0;
    for (std::size_t i = 0; i < x.size(); ++i) w += x[i] * weights[i];
    return w;
  };
  std::stable_sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) {
    if (weight(a) != weight(b)) return weight(a) < weight(b);
    return a > b;
  });
  return out;
}

}  // namespace detail

// Presentation of the quotient chart A^D found up to a degree bound.
template <class C>
struct QuotientChart {
  VarList names;                     // quotient coordinates
  std::vector<Poly<C>> generators;   // their images in A
  std::vector<std::uint32_t> weights;  // total degree of each generator
  std::vector<Poly<C>> relations;    // in the quotient coordinates
  // certificates[i] expresses nf(x_i^p) in the quotient coordinates.
  std::vector<Poly<C>> certificates;
};

template <class C>
struct FactorizationReport {
  PClosedness<C> closedness;
  std::vector<Poly<C>> constants;
  QuotientChart<C> quotient;
  bool frobenius_factors = false;  // every x_i^p lies in the constants
  bool proper = false;             // some generator is not a constant
  std::optional<std::size_t> witness;  // such a generator
  bool generators_constant = false;  // D kills every emitted generator
  std::uint32_t bound = 0;
};

// A^p ⊆ A^D ⊊ A with explicit certificates, for rank-1 p-closed D.
template <class C>
FactorizationReport<C> frobenius_factorization_check(const Derivation<C>& D, std::optional<std::uint32_t> bound = {}) {
  const auto& A = D.chart();
  const std::uint32_t p = A.field().characteristic();
  FactorizationReport<C> rep;
  rep.bound = bound.value_or(3 * p);
  if (rep.bound < p) throw Error(ErrorCode::DegreeBoundTooSmall, "degree bound below p");
  rep.closedness = is_p_closed_rank1(D);
  if (!rep.closedness.closed) throw Error(ErrorCode::NotPClosed, "D^[p] is not proportional to D");

  rep.constants = ring_of_constants(D, rep.bound);
  for (const auto& c : rep.constants) ensure(D.apply(c).is_zero(), "constant not killed by D");

  // Greedy algebra generators among the constants.
  const Poly<C> one = A.one();
  std::vector<Poly<C>> gens;
  std::vector<std::uint32_t> weights;
  auto dummy = A.zero();
  detail::TrackedSpan<C> span(dummy);
  span.insert(one, dummy);
  for (const auto& c : rep.constants) {
    if (c.total_degree() <= 0 || span.contains(c)) continue;
    gens.push_back(c);
    weights.push_back(static_cast<std::uint32_t>(c.total_degree()));
    for (const auto& m : detail::weighted_monomials(weights, rep.bound)) {
      if (m.back() == 0) continue;
      Poly<C> prod = one;
      for (std::size_t k = 0; k < m.size(); ++k)
        if (m[k]) prod = A.normal_form(prod * gens[k].pow(m[k]));
      span.insert(prod, dummy);
    }
  }

  // Names: a bare coordinate keeps its name.
  std::vector<std::string> names;
  int fresh = 0;
  for (const auto& g : gens) {
    std::string name;
    if (g.size() == 1 && g.lead().second.is_one() && algebra::total_degree(g.lead().first) == 1) {
      for (std::size_t i = 0; i < A.arity(); ++i)
        if (g.lead().first[i] == 1) name = (*A.vars())[i];
    } else {
      name = "w" + std::to_string(++fresh);
    }
    names.push_back(name);
  }
  auto& Q = rep.quotient;
  Q.names = algebra::make_vars(names);
  Q.generators = gens;
  Q.weights = weights;

  // Tracked span of generator monomials; dependencies are relations.
  const Poly<C> qzero(A.field(), Q.names);
  detail::TrackedSpan<C> tracked(qzero);
  std::vector<Poly<C>> candidates;
  for (const auto& m : detail::weighted_monomials(weights, rep.bound)) {
    Poly<C> prod = one;
    for (std::size_t k = 0; k < m.size(); ++k)
      if (m[k]) prod = A.normal_form(prod * gens[k].pow(m[k]));
    auto rel = tracked.insert(prod, Poly<C>::monomial(A.field(), Q.names, m, one.constant_term()));
    if (rel) candidates.push_back(*rel);
  }
  // Keep relations not generated by earlier ones within the bound.
  auto weight_of = [&](const Poly<C>& f) {
    std::uint32_t w = 0;
    for (const auto& [m, c] : f.terms()) {
      std::uint32_t s = 0;
      for (std::size_t k = 0; k < m.size(); ++k) s += m[k] * weights[k];
      w = std::max(w, s);
    }
    return w;
  };
  detail::TrackedSpan<C> ideal(qzero);
  for (const auto& rel : candidates) {
    if (ideal.contains(rel)) continue;
    Q.relations.push_back(rel);
    const std::uint32_t w = weight_of(rel);
    for (const auto& m : detail::weighted_monomials(weights, rep.bound - std::min(w, rep.bound)))
      ideal.insert(rel.shifted(m), qzero);
  }

  // Certificates for x_i^p.
  rep.frobenius_factors = true;
  for (std::size_t i = 0; i < A.arity(); ++i) {
    Poly<C> xp = A.normal_form(A.var(i).pow(p));
    bool in_constants = D.apply(xp).is_zero();
    auto [res, expr] = tracked.reduce(xp);
    if (!in_constants || !res.is_zero()) {
      rep.frobenius_factors = false;
      throw Error(ErrorCode::DegreeBoundTooSmall,
                  "x_" + (*A.vars())[i] + "^p is not generated by the constants found up to degree " +
                      std::to_string(rep.bound));
    }
    // Substitute the generators back as a final check.
    ensure(A.normal_form(expr.compose(gens)) == xp, "certificate does not reproduce x^p");
    Q.certificates.push_back(expr);
  }

  rep.generators_constant = true;
  for (const auto& g : gens) rep.generators_constant = rep.generators_constant && D.apply(g).is_zero();
  for (std::size_t i = 0; i < A.arity(); ++i) {
    if (!D.value(i).is_zero()) {
      rep.witness = i;
      break;
    }
  }
  rep.proper = rep.witness.has_value();
  return rep;
}

}  // namespace charfol::foliation
