#pragma once

// Kähler 1-forms on chart algebras. A form over a chart with constants K
// carries an extra dt component (absolute differentials); over F_q it does
// not. Coefficients are kept in normal form.

#include <memory>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "charfol/chart.hpp"
#include "charfol/kp.hpp"

namespace charfol::differentials {

using algebra::ChartAlgebra;
using algebra::Poly;

template <class C>
inline constexpr bool kHasDt = std::is_same_v<C, algebra::RatFunc>;

template <class C>
class OneForm {
 public:
  using Chart = ChartAlgebra<C>;

  OneForm(std::shared_ptr<const Chart> A, std::vector<Poly<C>> coeffs, std::optional<Poly<C>> dt = std::nullopt)
      : A_(std::move(A)), c_(std::move(coeffs)), dt_(dt ? std::move(*dt) : A_->zero()) {
    if (c_.size() != A_->arity()) throw Error(ErrorCode::ArityMismatch, "form has wrong number of components");
    if (!kHasDt<C> && !dt_.is_zero()) throw Error(ErrorCode::ArityMismatch, "dt component over a finite field");
    for (auto& c : c_) c = A_->normal_form(c);
    dt_ = A_->normal_form(dt_);
  }

  static OneForm zero(std::shared_ptr<const Chart> A) {
    std::vector<Poly<C>> c(A->arity(), A->zero());
    return OneForm(std::move(A), std::move(c));
  }
  // dx_i
  static OneForm basis(std::shared_ptr<const Chart> A, std::size_t i) {
    std::vector<Poly<C>> c(A->arity(), A->zero());
    c.at(i) = A->one();
    return OneForm(std::move(A), std::move(c));
  }
  static OneForm dt(std::shared_ptr<const Chart> A) {
    static_assert(kHasDt<C>, "dt exists only over K");
    std::vector<Poly<C>> c(A->arity(), A->zero());
    auto one = A->one();
    return OneForm(std::move(A), std::move(c), one);
  }

  const Chart& chart() const { return *A_; }
  const std::shared_ptr<const Chart>& chart_ptr() const { return A_; }
  const std::vector<Poly<C>>& coeffs() const { return c_; }
  const Poly<C>& coeff(std::size_t i) const { return c_.at(i); }
  const Poly<C>& dt_coeff() const { return dt_; }

  bool is_zero() const {
    for (const auto& c : c_)
      if (!c.is_zero()) return false;
    return dt_.is_zero();
  }

  OneForm operator+(const OneForm& b) const {
    std::vector<Poly<C>> c(c_.size(), A_->zero());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = c_[i] + b.c_[i];
    return OneForm(A_, std::move(c), dt_ + b.dt_);
  }
  OneForm operator-(const OneForm& b) const { return *this + b * Poly<C>::from_int(A_->field(), A_->vars(), -1); }
  OneForm operator*(const Poly<C>& f) const {
    std::vector<Poly<C>> c(c_.size(), A_->zero());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = c_[i] * f;
    return OneForm(A_, std::move(c), dt_ * f);
  }
  // Componentwise equality of representatives (not modulo relations).
  bool operator==(const OneForm& b) const { return c_ == b.c_ && dt_ == b.dt_; }

  std::string to_string() const {
    std::string out;
    auto emit = [&](const Poly<C>& c, const std::string& name) {
      if (c.is_zero()) return;
      if (!out.empty()) out += " + ";
      if (c.is_constant() && c.constant_term().is_one()) {
        out += name;
        return;
      }
      std::string cs = c.to_string();
      out += (c.size() > 1 ? "(" + cs + ")" : cs) + " " + name;
    };
    for (std::size_t i = 0; i < c_.size(); ++i) emit(c_[i], "d" + (*A_->vars())[i]);
    emit(dt_, "dt");
    return out.empty() ? "0" : out;
  }

 private:
  std::shared_ptr<const Chart> A_;
  std::vector<Poly<C>> c_;
  Poly<C> dt_;
};

// df = sum (∂f/∂x_i) dx_i (+ (∂f/∂t) dt over K).
template <class C>
OneForm<C> d(const std::shared_ptr<const ChartAlgebra<C>>& A, const Poly<C>& f) {
  std::vector<Poly<C>> c;
  for (std::size_t i = 0; i < A->arity(); ++i) c.push_back(f.partial(i));
  if constexpr (kHasDt<C>) return OneForm<C>(A, std::move(c), f.coeff_derivative());
  return OneForm<C>(A, std::move(c));
}

// Gauss-Jordan data for the relation differentials dr_j. Each row that found
// a unit pivot has coefficient 1 in its pivot column and 0 in every other
// pivot column, so dx_pivot = -(rest of row).
template <class C>
struct RelationElimination {
  std::vector<OneForm<C>> rows;      // reduced relation differentials with a pivot
  std::vector<std::size_t> pivots;   // eliminated variable of each row
  std::vector<std::size_t> unreduced;  // relations with no unit partial left
};

template <class C>
RelationElimination<C> eliminate_relations(const std::shared_ptr<const ChartAlgebra<C>>& A) {
  RelationElimination<C> out;
  const auto& rels = A->relations();
  for (std::size_t j = 0; j < rels.size(); ++j) {
    OneForm<C> row = d(A, rels[j].poly);
    for (std::size_t k = 0; k < out.rows.size(); ++k) {
      const Poly<C> f = row.coeff(out.pivots[k]);
      if (!f.is_zero()) row = row + out.rows[k] * (-f);
    }
    auto is_unit = [&](std::size_t i) { return row.coeff(i).is_constant() && !row.coeff(i).is_zero(); };
    std::optional<std::size_t> piv;
    if (is_unit(rels[j].var)) {
      piv = rels[j].var;
    } else {
      for (std::size_t i = 0; i < A->arity() && !piv; ++i)
        if (is_unit(i)) piv = i;
    }
    if (!piv) {
      out.unreduced.push_back(j);
      continue;
    }
    row = row * A->constant(row.coeff(*piv).constant_term().inverse());
    for (std::size_t k = 0; k < out.rows.size(); ++k) {
      const Poly<C> f = out.rows[k].coeff(*piv);
      if (!f.is_zero()) out.rows[k] = out.rows[k] + row * (-f);
    }
    out.rows.push_back(std::move(row));
    out.pivots.push_back(*piv);
  }
  return out;
}

template <class C>
struct ReducedForm {
  OneForm<C> form;
  std::vector<std::size_t> eliminated;  // variables whose dx component was removed
  std::vector<std::size_t> unreduced;   // relations left in place (no unit partial)
};

// Canonical representative modulo the A-span of the dr_j.
template <class C>
ReducedForm<C> reduce_form(const OneForm<C>& w, const RelationElimination<C>& elim) {
  OneForm<C> cur = w;
  for (std::size_t k = 0; k < elim.rows.size(); ++k) {
    const Poly<C> f = cur.coeff(elim.pivots[k]);
    if (!f.is_zero()) cur = cur + elim.rows[k] * (-f);
  }
  return {std::move(cur), elim.pivots, elim.unreduced};
}

template <class C>
ReducedForm<C> reduce_form(const OneForm<C>& w) {
  return reduce_form(w, eliminate_relations(w.chart_ptr()));
}

// Equality in Ω¹ of the chart, decided by reduction.
template <class C>
bool equivalent(const OneForm<C>& a, const OneForm<C>& b) {
  return reduce_form(a - b).form.is_zero();
}

// ω = relative + base·dt, with the relative part having no dt component in the
// model coordinates.
struct Split {
  OneForm<algebra::RatFunc> relative;
  Poly<algebra::RatFunc> base;
};

// Requires every relation coefficient in K^p, so that the dr_j have no dt
// component; throws NoModel otherwise.
Split split_absolute(const OneForm<algebra::RatFunc>& w);

// f = sum_{i<p} f_i^p x^i over F_q(x).
struct CartierDecomposition {
  std::vector<algebra::RatFunc> components;  // f_0 .. f_{p-1}
};

CartierDecomposition cartier_decompose(const algebra::RatFunc& f);
// The component f_{p-1}, i.e. C(f dx) = f_{p-1} dx.
algebra::RatFunc cartier(const algebra::RatFunc& f);
bool is_locally_exact(const algebra::RatFunc& f);

}  // namespace charfol::differentials
