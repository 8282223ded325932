#pragma once

// Exact arithmetic in F_q = F_p[u]/(m(u)), q <= 2^16.
//
// Fields are interned: Field::make returns a handle to process-lifetime data,
// so two handles compare equal iff they describe the same (p, m). Elements are
// 16-byte trivially copyable values holding a pointer to that data plus the
// packed coefficient vector c_0 + c_1 p + ... + c_{e-1} p^{e-1}.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "charfol/error.hpp"

namespace charfol::gf {

namespace detail {
struct FieldData;
}

class Elem;

inline constexpr std::uint32_t kMaxFieldOrder = 1u << 16;

bool is_prime(std::uint64_t n);

class Field {
 public:
  // Builds F_{p^e}. When e > 1 and no modulus is given, the first irreducible
  // monic polynomial of degree e in lexicographic order of (c_{e-1}, ..., c_0)
  // is used. A supplied modulus lists c_0..c_{e-1} (the leading 1 implied) or
  // c_0..c_e with c_e == 1.
  static Field make(std::uint32_t p, std::uint32_t e = 1,
                    std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

  // F_q for a prime power q, with the default modulus.
  static Field of_order(std::uint32_t q);

  std::uint32_t characteristic() const;
  std::uint32_t degree() const;
  std::uint32_t order() const;
  // Monic modulus coefficients c_0..c_e (c_e == 1); {0, 1} for prime fields.
  const std::vector<std::uint32_t>& modulus() const;

  Elem zero() const;
  Elem one() const;
  // The class of u; equals from_int(0) + 1*u. For e == 1 this is 0.
  Elem gen() const;
  Elem from_int(std::int64_t n) const;
  Elem from_coeffs(std::span<const std::uint32_t> coeffs) const;
  Elem from_index(std::uint32_t packed) const;
  std::vector<Elem> elements() const;

  // "F_9 = F_3[u]/(u^2+1)"
  std::string describe() const;

  const detail::FieldData* data() const { return data_; }
  bool operator==(const Field& other) const { return data_ == other.data_; }

 private:
  explicit Field(const detail::FieldData* d) : data_(d) {}
  friend class Elem;
  const detail::FieldData* data_ = nullptr;
};

class Elem {
 public:
  Elem() = default;  // detached zero; only assignable

  Field field() const { return Field(f_); }
  std::uint32_t index() const { return v_; }
  std::vector<std::uint32_t> coeffs() const;

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  Elem operator+(const Elem& b) const;
  Elem operator-(const Elem& b) const;
  Elem operator-() const;
  Elem operator*(const Elem& b) const;
  Elem operator/(const Elem& b) const;
  Elem& operator+=(const Elem& b) { return *this = *this + b; }
  Elem& operator-=(const Elem& b) { return *this = *this - b; }
  Elem& operator*=(const Elem& b) { return *this = *this * b; }

  Elem inverse() const;
  Elem pow(std::int64_t n) const;
  Elem frobenius() const;  // a^p
  Elem pth_root() const;   // the unique b with b^p = a

  // Integer multiple n * a, n taken mod p.
  Elem scaled(std::int64_t n) const;

  bool operator==(const Elem& b) const { return f_ == b.f_ && v_ == b.v_; }
  bool operator<(const Elem& b) const { return v_ < b.v_; }

  // Polynomial in u with coefficients 0..p-1, e.g. "2*u+1".
  std::string to_string() const;

  // Uniform interface shared with RatFunc so that polynomials can be generic
  // over their coefficient ring.
  static Elem from_int(const Field& f, std::int64_t n) { return f.from_int(n); }
  Elem derivative() const { return Field(f_).zero(); }
  bool is_constant() const { return true; }
  Elem constant_value() const { return *this; }

 private:
  friend class Field;
  Elem(const detail::FieldData* f, std::uint32_t v) : f_(f), v_(v) {}
  const detail::FieldData* f_ = nullptr;
  std::uint32_t v_ = 0;
};

}  // namespace charfol::gf
