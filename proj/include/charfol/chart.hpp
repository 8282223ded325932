#pragma once

// Affine chart algebras C[x_1..x_n]/(r_1..r_m) with monic triangular
// relations. Relation r_j is monic of degree d_j in its designated variable
// v_j; the tail r_j - v_j^{d_j} has v_j-degree < d_j and does not involve the
// variables designated by later relations. Normal form reduces by r_m first
// and r_1 last, so reduced monomials (exponent of v_j below d_j) form a
// C-basis of the quotient.

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "charfol/poly.hpp"

namespace charfol::algebra {

template <class C>
struct Relation {
  Poly<C> poly;       // monic in var
  std::size_t var;    // designated variable
  std::uint32_t degree;
};

template <class C>
class ChartAlgebra {
 public:
  // Designated variables chosen automatically: each relation picks the
  // variable whose pure power has coefficient 1 and maximal degree (later
  // variables win ties). Failing that, any constant coefficient is accepted
  // and the relation is scaled to be monic.
  ChartAlgebra(gf::Field f, VarList vars, std::vector<Poly<C>> relations)
      : field_(f), vars_(std::move(vars)) {
    for (auto& r : relations) add_relation(std::move(r), std::nullopt);
    cache_ = std::make_shared<Cache>(relations_.size());
  }

  ChartAlgebra(gf::Field f, VarList vars, std::vector<std::pair<Poly<C>, std::size_t>> designated)
      : field_(f), vars_(std::move(vars)) {
    for (auto& [r, v] : designated) add_relation(std::move(r), v);
    cache_ = std::make_shared<Cache>(relations_.size());
  }

  static ChartAlgebra affine_space(gf::Field f, VarList vars) {
    return ChartAlgebra(f, std::move(vars), std::vector<Poly<C>>{});
  }

  const gf::Field& field() const { return field_; }
  const VarList& vars() const { return vars_; }
  std::size_t arity() const { return vars_->size(); }
  const std::vector<Relation<C>>& relations() const { return relations_; }

  std::optional<std::size_t> var_index(const std::string& name) const {
    for (std::size_t i = 0; i < arity(); ++i)
      if ((*vars_)[i] == name) return i;
    return std::nullopt;
  }
  std::size_t require_var(const std::string& name) const {
    auto i = var_index(name);
    if (!i) throw Error(ErrorCode::UnknownVariable, "no variable '" + name + "' in chart");
    return *i;
  }

  // Relation index designating var, if any.
  std::optional<std::size_t> designating(std::size_t var) const {
    for (std::size_t j = 0; j < relations_.size(); ++j)
      if (relations_[j].var == var) return j;
    return std::nullopt;
  }

  Poly<C> zero() const { return Poly<C>(field_, vars_); }
  Poly<C> one() const { return Poly<C>::from_int(field_, vars_, 1); }
  Poly<C> constant(const C& c) const { return Poly<C>::constant(field_, vars_, c); }
  Poly<C> var(std::size_t i) const { return Poly<C>::variable(field_, vars_, i); }
  Poly<C> var(const std::string& name) const { return var(require_var(name)); }

  bool is_reduced(const Monomial& m) const {
    for (const auto& r : relations_)
      if (m[r.var] >= r.degree) return false;
    return true;
  }

  Poly<C> normal_form(const Poly<C>& f) const {
    if (!same_vars(f.vars(), vars_)) throw Error(ErrorCode::ArityMismatch, "polynomial not over chart variables");
    Poly<C> cur = f;
    for (std::size_t j = relations_.size(); j-- > 0;) cur = reduce_by(cur, j);
    return cur;
  }

  // Reduced monomials of total degree <= bound, by increasing degree and
  // then increasing grlex.
  std::vector<Monomial> basis_monomials(std::uint32_t bound) const {
    std::vector<Monomial> out;
    Monomial m(arity(), 0);
    for (std::uint32_t deg = 0; deg <= bound; ++deg) {
      std::vector<Monomial> level;
      enumerate(m, 0, deg, level);
      std::sort(level.begin(), level.end(), [](const Monomial& a, const Monomial& b) { return a < b; });
      out.insert(out.end(), level.begin(), level.end());
    }
    return out;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < arity(); ++i) s += (i ? "," : "") + (*vars_)[i];
    s += "]";
    if (relations_.empty()) return s;
    s += "/(";
    for (std::size_t j = 0; j < relations_.size(); ++j) s += (j ? ", " : "") + relations_[j].poly.to_string();
    return s + ")";
  }

 private:
  struct Cache {
    explicit Cache(std::size_t n) : powers(n) {}
    std::mutex mu;
    // powers[j][k] = x_{v_j}^{d_j + k} reduced by r_j alone.
    std::vector<std::vector<Poly<C>>> powers;
  };

  void enumerate(Monomial& m, std::size_t i, std::uint32_t left, std::vector<Monomial>& out) const {
    if (i + 1 == arity()) {
      m[i] = left;
      if (is_reduced(m)) out.push_back(m);
      m[i] = 0;
      return;
    }
    if (arity() == 0) {
      if (left == 0) out.push_back(m);
      return;
    }
    for (std::uint32_t e = 0; e <= left; ++e) {
      m[i] = e;
      enumerate(m, i + 1, left - e, out);
    }
    m[i] = 0;
  }

  void add_relation(Poly<C> r, std::optional<std::size_t> designated) {
    if (!same_vars(r.vars(), vars_)) throw Error(ErrorCode::ArityMismatch, "relation not over chart variables");
    if (r.is_zero()) throw Error(ErrorCode::NotTriangular, "zero relation");
    std::size_t v;
    if (designated) {
      v = *designated;
      if (v >= arity()) throw Error(ErrorCode::ArityMismatch, "designated variable out of range");
    } else {
      auto pick = auto_designate(r);
      if (!pick) throw Error(ErrorCode::NotTriangular, "no monic variable in relation " + r.to_string());
      v = *pick;
    }
    for (const auto& prev : relations_)
      if (prev.var == v) throw Error(ErrorCode::NotTriangular, "variable designated twice: " + (*vars_)[v]);
    const std::uint32_t d = r.degree_in(v);
    if (d == 0) throw Error(ErrorCode::NotTriangular, "designated variable absent from relation");
    Monomial pure(arity(), 0);
    pure[v] = d;
    C lead = r.coeff(pure);
    if (lead.is_zero() || !lead.is_constant())
      throw Error(ErrorCode::NotTriangular, "relation not monic in " + (*vars_)[v] + ": " + r.to_string());
    r = r * lead.inverse();
    for (const auto& [m, c] : r.terms()) {
      if (m == pure) continue;
      if (m[v] >= d) throw Error(ErrorCode::NotTriangular, "relation not monic in " + (*vars_)[v]);
    }
    // Earlier relations must not involve this designated variable in their
    // tails, or reduction order would not terminate in one pass.
    for (const auto& prev : relations_)
      if (prev.poly.degree_in(v) > 0)
        throw Error(ErrorCode::NotTriangular, "earlier relation involves later designated variable " + (*vars_)[v]);
    relations_.push_back({std::move(r), v, d});
  }

  std::optional<std::size_t> auto_designate(const Poly<C>& r) const {
    if (auto v = auto_designate(r, true)) return v;
    return auto_designate(r, false);
  }

  std::optional<std::size_t> auto_designate(const Poly<C>& r, bool coefficient_one) const {
    std::optional<std::size_t> best;
    std::uint32_t best_deg = 0;
    for (const auto& [m, c] : r.terms()) {
      if (coefficient_one ? !c.is_one() : !c.is_constant()) continue;
      std::size_t nz = 0, var = 0;
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] > 0) ++nz, var = i;
      if (nz != 1) continue;
      if (m[var] != r.degree_in(var)) continue;
      bool taken = false;
      for (const auto& prev : relations_) taken = taken || prev.var == var || prev.poly.degree_in(var) > 0;
      if (taken) continue;
      // Monic in var: no other term reaches the same var-degree.
      bool monic = true;
      for (const auto& [m2, c2] : r.terms())
        if (m2 != m && m2[var] >= m[var]) monic = false;
      if (!monic) continue;
      if (!best || m[var] > best_deg || (m[var] == best_deg && var > *best)) {
        best = var;
        best_deg = m[var];
      }
    }
    return best;
  }

  // x_v^{d+k} reduced by relation j alone.
  const Poly<C>& reduced_power(std::size_t j, std::uint32_t k) const {
    auto& powers = cache_->powers[j];
    const auto& rel = relations_[j];
    if (powers.empty()) {
      Monomial pure(arity(), 0);
      pure[rel.var] = rel.degree;
      Poly<C> tail = rel.poly - Poly<C>::monomial(field_, vars_, pure, rel.poly.one_coeff());
      powers.push_back(-tail);
    }
    while (powers.size() <= k) {
      Monomial step(arity(), 0);
      step[rel.var] = 1;
      Poly<C> next = powers.back().shifted(step);
      powers.push_back(reduce_once(next, j));
    }
    return powers[k];
  }

  // Replace a single occurrence of x_v^d (all terms have v-degree <= d).
  Poly<C> reduce_once(const Poly<C>& f, std::size_t j) const {
    const auto& rel = relations_[j];
    Poly<C> out(field_, vars_);
    for (const auto& [m, c] : f.terms()) {
      if (m[rel.var] < rel.degree) {
        out.add_term(m, c);
        continue;
      }
      Monomial rest = m;
      rest[rel.var] -= rel.degree;
      out += cache_->powers[j][0].shifted(rest) * c;
    }
    return out;
  }

  Poly<C> reduce_by(const Poly<C>& f, std::size_t j) const {
    const auto& rel = relations_[j];
    bool needed = false;
    for (const auto& [m, c] : f.terms()) needed = needed || m[rel.var] >= rel.degree;
    if (!needed) return f;
    std::lock_guard<std::mutex> lock(cache_->mu);
    Poly<C> out(field_, vars_);
    for (const auto& [m, c] : f.terms()) {
      if (m[rel.var] < rel.degree) {
        out.add_term(m, c);
        continue;
      }
      Monomial rest = m;
      std::uint32_t k = m[rel.var] - rel.degree;
      rest[rel.var] = 0;
      out += reduced_power(j, k).shifted(rest) * c;
    }
    return out;
  }

  gf::Field field_;
  VarList vars_;
  std::vector<Relation<C>> relations_;
  std::shared_ptr<Cache> cache_;
};

using FqChart = ChartAlgebra<gf::Elem>;
using KChart = ChartAlgebra<RatFunc>;

}  // namespace charfol::algebra
