#include "charfol/series.hpp"

#include <algorithm>
#include <sstream>

#include "charfol/kernels.hpp"

namespace charfol::series {

namespace {

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

}  // namespace

LaurentSeries::LaurentSeries(gf::Field f, int start, std::vector<gf::Elem> coeffs, int precision)
    : field_(f), start_(start), c_(std::move(coeffs)), precision_(precision) {
  for (const auto& c : c_)
    if (!(c.field() == field_)) throw Error(ErrorCode::FieldMismatch, "series coefficient outside field");
  normalize();
}

void LaurentSeries::normalize() {
  if (start_ >= precision_) {
    c_.clear();
    start_ = precision_;
    return;
  }
  c_.resize(static_cast<std::size_t>(precision_ - start_), field_.zero());
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead].is_zero()) ++lead;
  if (lead == c_.size()) {
    c_.clear();
    start_ = precision_;
    return;
  }
  if (lead > 0) c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
  start_ += static_cast<int>(lead);
}

LaurentSeries LaurentSeries::zero(const gf::Field& f, int precision) { return LaurentSeries(f, precision, {}, precision); }

LaurentSeries LaurentSeries::constant(const gf::Elem& c, int precision) {
  return LaurentSeries(c.field(), 0, {c}, precision);
}

LaurentSeries LaurentSeries::from_int(const gf::Field& f, std::int64_t n, int precision) {
  return constant(f.from_int(n), precision);
}

LaurentSeries LaurentSeries::monomial(const gf::Elem& c, int k, int precision) {
  return LaurentSeries(c.field(), k, {c}, precision);
}

LaurentSeries LaurentSeries::variable(const gf::Field& f, int precision) { return monomial(f.one(), 1, precision); }

LaurentSeries LaurentSeries::from_upoly(const algebra::UPoly& p, int precision) {
  return LaurentSeries(p.field(), 0, p.coeffs(), precision);
}

LaurentSeries LaurentSeries::from_ratfunc(const algebra::RatFunc& r, int precision) {
  if (r.is_polynomial()) return from_upoly(r.num() * r.den().lead().inverse(), precision);
  int vd = 0;
  while (r.den().coeff(static_cast<std::size_t>(vd)).is_zero()) ++vd;
  LaurentSeries num = from_upoly(r.num(), precision + vd);
  LaurentSeries den = from_upoly(r.den(), precision + 2 * vd);
  return (num / den).truncated(precision);
}

gf::Elem LaurentSeries::coeff(int k) const {
  if (k >= precision_) throw Error(ErrorCode::PrecisionExhausted, "coefficient beyond known precision");
  if (k < start_) return field_.zero();
  return c_[static_cast<std::size_t>(k - start_)];
}

int LaurentSeries::valuation() const {
  if (is_zero())
    throw Error(ErrorCode::PrecisionExhausted,
                "series vanishes to its precision O(t^" + std::to_string(precision_) + ")");
  return start_;
}

std::optional<int> LaurentSeries::try_valuation() const {
  if (is_zero()) return std::nullopt;
  return start_;
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& b) const {
  if (!(field_ == b.field_)) throw Error(ErrorCode::FieldMismatch, "series over different fields");
  const int n = std::min(precision_, b.precision_);
  const int lo = std::min(start_, b.start_);
  if (lo >= n) return zero(field_, n);
  std::vector<gf::Elem> out(static_cast<std::size_t>(n - lo), field_.zero());
  for (std::size_t i = 0; i < c_.size() && start_ + static_cast<int>(i) < n; ++i)
    out[static_cast<std::size_t>(start_ - lo) + i] = c_[i];
  for (std::size_t i = 0; i < b.c_.size() && b.start_ + static_cast<int>(i) < n; ++i)
    out[static_cast<std::size_t>(b.start_ - lo) + i] += b.c_[i];
  return LaurentSeries(field_, lo, std::move(out), n);
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

LaurentSeries LaurentSeries::operator-(const LaurentSeries& b) const { return *this + (-b); }

LaurentSeries LaurentSeries::operator*(const LaurentSeries& b) const {
  if (!(field_ == b.field_)) throw Error(ErrorCode::FieldMismatch, "series over different fields");
  const int n = std::min(precision_ + b.start_, b.precision_ + start_);
  const int s = start_ + b.start_;
  if (s >= n) return zero(field_, n);
  auto out = kernels::convolve(c_, b.c_, static_cast<std::size_t>(n - s), field_);
  return LaurentSeries(field_, s, std::move(out), n);
}

LaurentSeries LaurentSeries::operator*(const gf::Elem& s) const {
  LaurentSeries r = *this;
  for (auto& c : r.c_) c *= s;
  r.normalize();
  return r;
}

LaurentSeries LaurentSeries::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZeroSeries, "division by a series that vanishes to its precision");
  const std::size_t len = c_.size();
  // Newton iteration h <- h (2 - u h) on the unit part u.
  std::vector<gf::Elem> h{c_[0].inverse()};
  std::size_t m = 1;
  while (m < len) {
    const std::size_t m2 = std::min(2 * m, len);
    std::span<const gf::Elem> u(c_.data(), m2);
    auto uh = kernels::convolve(u, h, m2, field_);
    for (auto& x : uh) x = -x;
    uh[0] += field_.from_int(2);
    h = kernels::convolve(h, uh, m2, field_);
    m = m2;
  }
  return LaurentSeries(field_, -start_, std::move(h), precision_ - 2 * start_);
}

LaurentSeries LaurentSeries::operator/(const LaurentSeries& b) const { return *this * b.inverse(); }

LaurentSeries LaurentSeries::pow(std::int64_t n) const {
  if (n < 0) return inverse().pow(-n);
  if (n == 0) return from_int(field_, 1, precision_ - start_);
  std::optional<LaurentSeries> result;
  LaurentSeries base = *this;
  while (n > 0) {
    if (n & 1) result = result ? *result * base : base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return *result;
}

LaurentSeries LaurentSeries::derivative() const {
  std::vector<gf::Elem> out(c_.size(), field_.zero());
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i].scaled(start_ + static_cast<int>(i));
  // Coefficient of t^k moves to t^{k-1}.
  if (is_zero()) return zero(field_, precision_ - 1);
  return LaurentSeries(field_, start_ - 1, std::move(out), precision_ - 1);
}

LaurentSeries LaurentSeries::frobenius() const {
  const int p = static_cast<int>(field_.characteristic());
  if (is_zero()) return zero(field_, p * precision_);
  std::vector<gf::Elem> out((c_.size() - 1) * static_cast<std::size_t>(p) + 1, field_.zero());
  for (std::size_t i = 0; i < c_.size(); ++i) out[i * static_cast<std::size_t>(p)] = c_[i].frobenius();
  return LaurentSeries(field_, p * start_, std::move(out), p * precision_);
}

bool LaurentSeries::is_pth_power() const {
  const int p = static_cast<int>(field_.characteristic());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    int k = start_ + static_cast<int>(i);
    if (((k % p) + p) % p != 0) return false;
  }
  return true;
}

std::optional<LaurentSeries> LaurentSeries::pth_root() const {
  if (!is_pth_power()) return std::nullopt;
  const int p = static_cast<int>(field_.characteristic());
  // Exponent p*j is known iff p*j < N.
  const int n = floor_div(precision_ - 1, p) + 1;
  if (is_zero()) return zero(field_, n);
  const int s = floor_div(start_, p);
  std::vector<gf::Elem> out(static_cast<std::size_t>(n - s), field_.zero());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    int k = start_ + static_cast<int>(i);
    out[static_cast<std::size_t>(k / p - s)] = c_[i].pth_root();
  }
  LaurentSeries r(field_, s, std::move(out), n);
  ensure(r.frobenius().agrees_with(*this, precision_), "series pth_root round trip");
  return r;
}

LaurentSeries LaurentSeries::truncated(int precision) const {
  if (precision >= precision_) return *this;
  return LaurentSeries(field_, start_, c_, precision);
}

bool LaurentSeries::operator==(const LaurentSeries& b) const {
  return field_ == b.field_ && start_ == b.start_ && precision_ == b.precision_ && c_ == b.c_;
}

bool LaurentSeries::agrees_with(const LaurentSeries& b, int n) const {
  if (precision_ < n || b.precision_ < n) return false;
  for (int k = std::min(start_, b.start_); k < n; ++k)
    if (!(coeff(k) == b.coeff(k))) return false;
  return true;
}

bool LaurentSeries::is_one() const {
  if (start_ != 0 || c_.empty() || !c_[0].is_one()) return false;
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return false;
  return true;
}

std::string LaurentSeries::to_string(std::string_view var) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    const int k = start_ + static_cast<int>(i);
    if (!first) os << " + ";
    first = false;
    std::string cs = c_[i].to_string();
    if (k == 0) {
      os << cs;
      continue;
    }
    if (!c_[i].is_one()) os << (cs.find('+') != std::string::npos ? "(" + cs + ")" : cs) << "*";
    os << var;
    if (k != 1) os << "^" << k;
  }
  if (!first) os << " + ";
  os << "O(" << var << "^" << precision_ << ")";
  return os.str();
}

LaurentSeries evaluate(const algebra::FqPoly& f, const std::vector<LaurentSeries>& values, int precision) {
  const auto& field = f.field();
  return f.evaluate<LaurentSeries>(
      values, [&](const gf::Elem& c) { return LaurentSeries::constant(c, precision); },
      LaurentSeries::from_int(field, 1, precision));
}

LaurentSeries evaluate(const algebra::KPoly& f, const std::vector<LaurentSeries>& values, int precision) {
  const auto& field = f.field();
  return f.evaluate<LaurentSeries>(
      values, [&](const algebra::RatFunc& c) { return LaurentSeries::from_ratfunc(c, precision); },
      LaurentSeries::from_int(field, 1, precision));
}

namespace {

// Horner evaluation of sum coeffs[k] W^k and of its W-derivative.
std::pair<LaurentSeries, LaurentSeries> eval_with_derivative(const std::vector<LaurentSeries>& coeffs,
                                                             const LaurentSeries& w, int precision) {
  const gf::Field& f = w.field();
  LaurentSeries val = LaurentSeries::zero(f, precision), der = LaurentSeries::zero(f, precision);
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    der = der * w + val;
    val = val * w + coeffs[k].truncated(precision);
  }
  return {val, der};
}

}  // namespace

LaurentSeries newton_root(const std::vector<LaurentSeries>& coeffs, const gf::Elem& w0, int N) {
  if (coeffs.empty()) throw Error(ErrorCode::NotSimpleRoot, "empty equation");
  const gf::Field f = w0.field();
  for (const auto& c : coeffs) {
    if (!c.is_zero() && c.start() < 0) throw Error(ErrorCode::NotSimpleRoot, "equation coefficients must be integral");
    if (c.precision() < N) throw Error(ErrorCode::PrecisionExhausted, "equation known to lower precision than requested");
  }
  // Residue check: w0 must be a simple root of the reduced equation.
  gf::Elem r0 = f.zero(), d0 = f.zero(), pw = f.one();
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const gf::Elem ck = coeffs[k].coeff(0);
    r0 += ck * pw;
    if (k + 1 < coeffs.size()) d0 += coeffs[k + 1].coeff(0).scaled(static_cast<std::int64_t>(k + 1)) * pw;
    pw *= w0;
  }
  if (!r0.is_zero()) throw Error(ErrorCode::NotSimpleRoot, "initial value is not a root of the reduced equation");
  if (d0.is_zero()) throw Error(ErrorCode::NotSimpleRoot, "derivative vanishes at the initial value");

  LaurentSeries w = LaurentSeries::constant(w0, 1);
  int prec = 1;
  while (prec < N) {
    prec = std::min(2 * prec, N);
    w = LaurentSeries(f, w.start(), w.coeffs(), prec);
    auto [val, der] = eval_with_derivative(coeffs, w, prec);
    w = w - val / der;
  }
  auto [residual, unused] = eval_with_derivative(coeffs, w, N);
  (void)unused;
  if (w.precision() < N || !residual.is_zero() || residual.precision() < N)
    throw Error(ErrorCode::InternalError, "Newton iteration failed its substitution check");
  return w;
}

LaurentSeries implicit_series(const algebra::FqPoly& F, std::size_t v, std::size_t w, int N,
                              std::optional<gf::Elem> w0) {
  const gf::Field& f = F.field();
  std::vector<LaurentSeries> coeffs(F.degree_in(w) + 1, LaurentSeries::zero(f, N));
  for (const auto& [m, c] : F.terms()) {
    for (std::size_t i = 0; i < m.size(); ++i)
      if (i != v && i != w && m[i] != 0) throw Error(ErrorCode::ArityMismatch, "equation involves a third variable");
    coeffs[m[w]] += LaurentSeries::monomial(c, static_cast<int>(m[v]), N);
  }
  return newton_root(coeffs, w0.value_or(f.zero()), N);
}

int ord_of_differential(const LaurentSeries& x) { return x.derivative().valuation(); }

}  // namespace charfol::series
