#pragma once

// Dense Gaussian elimination over a coefficient field C (gf::Elem or
// RatFunc). Matrices are row-major vectors of rows.

#include <optional>
#include <vector>

#include "charfol/error.hpp"

namespace charfol::linalg {

template <class C>
using Matrix = std::vector<std::vector<C>>;

template <class C>
struct Echelon {
  Matrix<C> rows;                  // reduced row echelon form, nonzero rows only
  std::vector<std::size_t> pivots;  // pivot column of each row
};

// Reduced row echelon form; every pivot entry is 1.
template <class C>
Echelon<C> rref(Matrix<C> m, std::size_t cols) {
  Echelon<C> out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    const C inv = m[r][c].inverse();
    for (auto& x : m[r]) x = x * inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      const C f = m[i][c];
      for (std::size_t k = c; k < cols; ++k)
        if (!m[r][k].is_zero()) m[i][k] = m[i][k] - f * m[r][k];
    }
    out.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

// Basis of {v : M v = 0}; one vector per free column, with a 1 in that
// column.
template <class C>
std::vector<std::vector<C>> nullspace(const Matrix<C>& m, std::size_t cols, const C& zero, const C& one) {
  Echelon<C> e = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<std::vector<C>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<C> v(cols, zero);
    v[free] = one;
    for (std::size_t i = 0; i < e.rows.size(); ++i) v[e.pivots[i]] = -e.rows[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Incremental span membership: vectors are reduced against the rows kept so
// far. reduce() returns the residual; insert() adds a new independent row.
template <class C>
class SpanBuilder {
 public:
  explicit SpanBuilder(std::size_t cols) : cols_(cols) {}

  std::vector<C> reduce(std::vector<C> v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const C f = v[pivots_[i]];
      if (f.is_zero()) continue;
      for (std::size_t k = 0; k < cols_; ++k)
        if (!rows_[i][k].is_zero()) v[k] = v[k] - f * rows_[i][k];
    }
    return v;
  }

  bool contains(const std::vector<C>& v) const {
    for (const auto& x : reduce(v))
      if (!x.is_zero()) return false;
    return true;
  }

  // Returns false when v is already in the span.
  bool insert(const std::vector<C>& v) {
    std::vector<C> r = reduce(v);
    std::size_t piv = 0;
    while (piv < cols_ && r[piv].is_zero()) ++piv;
    if (piv == cols_) return false;
    const C inv = r[piv].inverse();
    for (auto& x : r) x = x * inv;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const C f = rows_[i][piv];
      if (f.is_zero()) continue;
      for (std::size_t k = 0; k < cols_; ++k)
        if (!r[k].is_zero()) rows_[i][k] = rows_[i][k] - f * r[k];
    }
    rows_.push_back(std::move(r));
    pivots_.push_back(piv);
    return true;
  }

  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t cols_;
  Matrix<C> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace charfol::linalg
