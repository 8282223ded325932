#include "charfol/ratfunc.hpp"

#include <sstream>

namespace charfol::algebra {

UPoly::UPoly(gf::Field f, std::vector<gf::Elem> coeffs) : field_(f), c_(std::move(coeffs)) {
  for (const auto& c : c_)
    if (!(c.field() == field_)) throw Error(ErrorCode::FieldMismatch, "coefficient outside UPoly field");
  trim();
}

UPoly UPoly::constant(const gf::Elem& c) { return UPoly(c.field(), {c}); }

UPoly UPoly::monomial(const gf::Elem& c, std::size_t k) {
  std::vector<gf::Elem> v(k + 1, c.field().zero());
  v[k] = c;
  return UPoly(c.field(), std::move(v));
}

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UPoly UPoly::operator+(const UPoly& b) const {
  std::vector<gf::Elem> out(std::max(c_.size(), b.c_.size()), field_.zero());
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
  return UPoly(field_, std::move(out));
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

UPoly UPoly::operator-(const UPoly& b) const { return *this + (-b); }

UPoly UPoly::operator*(const UPoly& b) const {
  if (is_zero() || b.is_zero()) return UPoly(field_);
  std::vector<gf::Elem> out(c_.size() + b.c_.size() - 1, field_.zero());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += c_[i] * b.c_[j];
  }
  return UPoly(field_, std::move(out));
}

UPoly UPoly::operator*(const gf::Elem& s) const {
  UPoly r = *this;
  for (auto& c : r.c_) c *= s;
  r.trim();
  return r;
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  std::vector<gf::Elem> rem = a.c_;
  if (a.degree() < b.degree()) return {UPoly(a.field_), a};
  std::vector<gf::Elem> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1), a.field_.zero());
  const gf::Elem inv_lead = b.lead().inverse();
  const std::size_t db = static_cast<std::size_t>(b.degree());
  for (std::size_t i = rem.size(); i-- > db;) {
    if (rem[i].is_zero()) continue;
    gf::Elem factor = rem[i] * inv_lead;
    quo[i - db] = factor;
    for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] -= factor * b.c_[j];
  }
  rem.resize(db);
  return {UPoly(a.field_, std::move(quo)), UPoly(a.field_, std::move(rem))};
}

UPoly UPoly::gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.is_zero() ? x : x.monic();
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return *this * lead().inverse();
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return UPoly(field_);
  std::vector<gf::Elem> out(c_.size() - 1, field_.zero());
  for (std::size_t k = 1; k < c_.size(); ++k) out[k - 1] = c_[k].scaled(static_cast<std::int64_t>(k));
  return UPoly(field_, std::move(out));
}

UPoly UPoly::frobenius() const {
  if (is_zero()) return *this;
  const std::size_t p = field_.characteristic();
  std::vector<gf::Elem> out((c_.size() - 1) * p + 1, field_.zero());
  for (std::size_t k = 0; k < c_.size(); ++k) out[k * p] = c_[k].frobenius();
  return UPoly(field_, std::move(out));
}

std::optional<UPoly> UPoly::pth_root() const {
  const std::size_t p = field_.characteristic();
  if (is_zero()) return *this;
  std::vector<gf::Elem> out((c_.size() - 1) / p + 1, field_.zero());
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    if (k % p != 0) return std::nullopt;
    out[k / p] = c_[k].pth_root();
  }
  return UPoly(field_, std::move(out));
}

gf::Elem UPoly::eval(const gf::Elem& x) const {
  gf::Elem acc = field_.zero();
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

std::string UPoly::to_string(std::string_view var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    if (c_[k].is_zero()) continue;
    if (!first) os << "+";
    first = false;
    std::string cs = c_[k].to_string();
    bool compound = cs.find('+') != std::string::npos;
    if (k == 0) {
      os << cs;
      continue;
    }
    if (!c_[k].is_one()) os << (compound ? "(" + cs + ")" : cs) << "*";
    os << var;
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

RatFunc::RatFunc(UPoly num) : num_(std::move(num)), den_(UPoly::constant(num_.field().one())) {}

RatFunc::RatFunc(UPoly num, UPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorCode::DivisionByZero, "rational function with zero denominator");
  if (!(num_.field() == den_.field())) throw Error(ErrorCode::FieldMismatch, "numerator/denominator fields");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = UPoly::constant(num_.field().one());
    return;
  }
  if (den_.degree() > 0) {
    UPoly g = UPoly::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = UPoly::divmod(num_, g).first;
      den_ = UPoly::divmod(den_, g).first;
    }
  }
  gf::Elem lead = den_.lead();
  if (!lead.is_one()) {
    gf::Elem inv = lead.inverse();
    num_ = num_ * inv;
    den_ = den_ * inv;
  }
}

RatFunc RatFunc::from_int(const gf::Field& f, std::int64_t n) { return constant(f.from_int(n)); }
RatFunc RatFunc::constant(const gf::Elem& c) { return RatFunc(UPoly::constant(c)); }
RatFunc RatFunc::variable(const gf::Field& f) { return RatFunc(UPoly::monomial(f.one(), 1)); }

RatFunc RatFunc::operator+(const RatFunc& b) const {
  if (den_ == b.den_) return RatFunc(num_ + b.num_, den_);
  return RatFunc(num_ * b.den_ + b.num_ * den_, den_ * b.den_);
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::operator-(const RatFunc& b) const { return *this + (-b); }

RatFunc RatFunc::operator*(const RatFunc& b) const {
  if (is_zero() || b.is_zero()) return RatFunc(field());
  if (den_.degree() == 0 && b.den_.degree() == 0) return RatFunc(num_ * b.num_);
  return RatFunc(num_ * b.num_, den_ * b.den_);
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero rational function");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::operator/(const RatFunc& b) const { return *this * b.inverse(); }

RatFunc RatFunc::pow(std::int64_t n) const {
  if (n < 0) return inverse().pow(-n);
  RatFunc result = from_int(field(), 1), base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

RatFunc RatFunc::derivative() const {
  // (n/d)' = (n' d - n d') / d^2
  if (den_.degree() == 0) return RatFunc(num_.derivative());
  return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RatFunc RatFunc::frobenius() const { return RatFunc(num_.frobenius(), den_.frobenius()); }

std::string RatFunc::to_string(std::string_view var) const {
  if (den_.degree() == 0) return num_.to_string(var);
  auto wrap = [](const std::string& s) {
    return s.find_first_of("+*^") != std::string::npos ? "(" + s + ")" : s;
  };
  return wrap(num_.to_string(var)) + "/" + wrap(den_.to_string(var));
}

}  // namespace charfol::algebra
