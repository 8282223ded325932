#pragma once

// Dense univariate polynomials over F_q and the rational function field
// K = F_q(t) built on them.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "charfol/gf.hpp"

namespace charfol::algebra {

class UPoly {
 public:
  explicit UPoly(gf::Field f) : field_(f) {}
  UPoly(gf::Field f, std::vector<gf::Elem> coeffs);

  static UPoly constant(const gf::Elem& c);
  static UPoly monomial(const gf::Elem& c, std::size_t k);

  const gf::Field& field() const { return field_; }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<gf::Elem>& coeffs() const { return c_; }
  gf::Elem coeff(std::size_t k) const { return k < c_.size() ? c_[k] : field_.zero(); }
  gf::Elem lead() const { return c_.empty() ? field_.zero() : c_.back(); }

  UPoly operator+(const UPoly& b) const;
  UPoly operator-(const UPoly& b) const;
  UPoly operator-() const;
  UPoly operator*(const UPoly& b) const;
  UPoly operator*(const gf::Elem& s) const;
  bool operator==(const UPoly& b) const { return field_ == b.field_ && c_ == b.c_; }

  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
  // Monic gcd; gcd(0, 0) = 0.
  static UPoly gcd(const UPoly& a, const UPoly& b);

  UPoly monic() const;
  UPoly derivative() const;
  // (sum c_k t^k)^p = sum c_k^p t^{pk}
  UPoly frobenius() const;
  // Defined iff every nonzero exponent is divisible by p.
  std::optional<UPoly> pth_root() const;
  gf::Elem eval(const gf::Elem& x) const;

  std::string to_string(std::string_view var = "t") const;

 private:
  void trim();
  gf::Field field_;
  std::vector<gf::Elem> c_;
};

// Element of F_q(t): numerator / denominator with monic denominator and
// gcd(numerator, denominator) = 1, so equality is structural.
class RatFunc {
 public:
  explicit RatFunc(gf::Field f) : num_(f), den_(UPoly::constant(f.one())) {}
  explicit RatFunc(UPoly num);
  RatFunc(UPoly num, UPoly den);

  static RatFunc from_int(const gf::Field& f, std::int64_t n);
  static RatFunc constant(const gf::Elem& c);
  static RatFunc variable(const gf::Field& f);  // t

  const gf::Field& field() const { return num_.field(); }
  const UPoly& num() const { return num_; }
  const UPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.degree() == 0 && num_.degree() == 0 && num_.lead().is_one(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  gf::Elem constant_value() const { return num_.coeff(0); }
  bool is_polynomial() const { return den_.degree() == 0; }

  RatFunc operator+(const RatFunc& b) const;
  RatFunc operator-(const RatFunc& b) const;
  RatFunc operator-() const;
  RatFunc operator*(const RatFunc& b) const;
  RatFunc operator/(const RatFunc& b) const;
  RatFunc& operator+=(const RatFunc& b) { return *this = *this + b; }
  RatFunc& operator-=(const RatFunc& b) { return *this = *this - b; }
  RatFunc& operator*=(const RatFunc& b) { return *this = *this * b; }
  bool operator==(const RatFunc& b) const { return num_ == b.num_ && den_ == b.den_; }

  RatFunc inverse() const;
  RatFunc pow(std::int64_t n) const;
  RatFunc scaled(std::int64_t n) const { return *this * from_int(field(), n); }
  // d/dt by the quotient rule.
  RatFunc derivative() const;
  // r^p, computed coefficientwise: t -> t^p and c -> c^p.
  RatFunc frobenius() const;

  // "(t^2+1)/(t+2)", or just the numerator when the denominator is 1.
  std::string to_string(std::string_view var = "t") const;

 private:
  void normalize();
  UPoly num_;
  UPoly den_;
};

}  // namespace charfol::algebra
