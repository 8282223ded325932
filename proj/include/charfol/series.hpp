#pragma once

// Truncated Laurent series over F_q with absolute precision: the value
// sum_{k >= start} c_k t^k + O(t^N) knows every coefficient below N and
// nothing at or above it. Leading zeros are stripped, so start() is the
// valuation unless the series is zero to its precision (then start() == N).
//
// Precision propagates pessimistically:
//   a + b     min(Na, Nb)
//   a * b     min(Na + vb, Nb + va)
//   1 / b     Nb - 2 vb
//   d/dt a    Na - 1

#include <optional>
#include <string>
#include <vector>

#include "charfol/gf.hpp"
#include "charfol/poly.hpp"
#include "charfol/ratfunc.hpp"

namespace charfol::series {

class LaurentSeries {
 public:
  LaurentSeries(gf::Field f, int start, std::vector<gf::Elem> coeffs, int precision);

  static LaurentSeries zero(const gf::Field& f, int precision);
  static LaurentSeries constant(const gf::Elem& c, int precision);
  static LaurentSeries from_int(const gf::Field& f, std::int64_t n, int precision);
  static LaurentSeries monomial(const gf::Elem& c, int k, int precision);
  static LaurentSeries variable(const gf::Field& f, int precision);  // t
  static LaurentSeries from_upoly(const algebra::UPoly& p, int precision);
  // Expansion at t = 0; the denominator may vanish there.
  static LaurentSeries from_ratfunc(const algebra::RatFunc& r, int precision);

  const gf::Field& field() const { return field_; }
  int start() const { return start_; }
  int precision() const { return precision_; }
  // Coefficients c_start .. c_{N-1}.
  const std::vector<gf::Elem>& coeffs() const { return c_; }
  // Throws PrecisionExhausted for k >= precision().
  gf::Elem coeff(int k) const;

  bool is_zero() const { return c_.empty(); }  // zero to the known precision
  // Throws PrecisionExhausted when the series is zero to its precision.
  int valuation() const;
  std::optional<int> try_valuation() const;

  LaurentSeries operator+(const LaurentSeries& b) const;
  LaurentSeries operator-(const LaurentSeries& b) const;
  LaurentSeries operator-() const;
  LaurentSeries operator*(const LaurentSeries& b) const;
  LaurentSeries operator*(const gf::Elem& s) const;
  LaurentSeries operator/(const LaurentSeries& b) const;
  LaurentSeries& operator+=(const LaurentSeries& b) { return *this = *this + b; }
  LaurentSeries& operator*=(const LaurentSeries& b) { return *this = *this * b; }

  LaurentSeries inverse() const;
  LaurentSeries pow(std::int64_t n) const;
  LaurentSeries derivative() const;
  // (sum c_k t^k)^p = sum c_k^p t^{pk}.
  LaurentSeries frobenius() const;
  // Defined iff every known nonzero exponent is divisible by p.
  bool is_pth_power() const;
  std::optional<LaurentSeries> pth_root() const;
  LaurentSeries truncated(int precision) const;

  // Same coefficients and precision.
  bool operator==(const LaurentSeries& b) const;
  // Agreement on all exponents below n; both must know them.
  bool agrees_with(const LaurentSeries& b, int n) const;

  // Duck-typed ring interface for polynomial evaluation.
  bool is_one() const;
  std::string to_string(std::string_view var = "t") const;

 private:
  void normalize();
  gf::Field field_;
  int start_;
  std::vector<gf::Elem> c_;
  int precision_;
};

// Evaluate a polynomial with F_q coefficients at series values.
LaurentSeries evaluate(const algebra::FqPoly& f, const std::vector<LaurentSeries>& values, int precision);
// Evaluate a polynomial with K = F_q(t) coefficients, expanding each
// coefficient at t = 0.
LaurentSeries evaluate(const algebra::KPoly& f, const std::vector<LaurentSeries>& values, int precision);

// Simple root of sum_k coeffs[k] W^k with W(0) = w0 by Newton iteration with
// precision doubling. Coefficients must be integral (valuation >= 0). The
// result is checked by substitution to precision N before returning.
LaurentSeries newton_root(const std::vector<LaurentSeries>& coeffs, const gf::Elem& w0, int N);

// w(v) with F(v, w(v)) = 0 mod v^N and w(0) = w0 (default 0), where F is a
// polynomial in the variables named v and w.
LaurentSeries implicit_series(const algebra::FqPoly& F, std::size_t v, std::size_t w, int N,
                              std::optional<gf::Elem> w0 = std::nullopt);

// Valuation of dx = x'(v) dv.
int ord_of_differential(const LaurentSeries& x);

}  // namespace charfol::series
