#include "charfol/gf.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

namespace charfol::gf {

namespace detail {

struct FieldData {
  std::uint32_t p = 0;
  std::uint32_t e = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;  // c_0..c_e, c_e == 1
  std::vector<std::uint32_t> exp;      // exp[k] = g^k, k in [0, q-1)
  std::vector<std::uint32_t> log;      // log[exp[k]] = k; log[0] unused
  std::uint32_t generator = 0;         // packed index of u
};

}  // namespace detail

namespace {

using Digits = std::vector<std::uint32_t>;

Digits unpack(std::uint32_t v, std::uint32_t p, std::uint32_t e) {
  Digits d(e);
  for (std::uint32_t i = 0; i < e; ++i) {
    d[i] = v % p;
    v /= p;
  }
  return d;
}

std::uint32_t pack(const Digits& d, std::uint32_t p) {
  std::uint32_t v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
  return v;
}

// Remainder of a by the monic b, over F_p. Both are coefficient vectors, low
// degree first; trailing zeros allowed.
Digits poly_rem(Digits a, const Digits& b, std::uint32_t p) {
  std::size_t db = b.size() - 1;
  while (db > 0 && b[db] == 0) --db;
  for (std::size_t i = a.size(); i-- > db;) {
    std::uint32_t c = a[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) {
      a[i - db + j] = static_cast<std::uint32_t>((a[i - db + j] + std::uint64_t(p - c) * b[j] % p) % p);
    }
  }
  a.resize(std::min(a.size(), db));
  return a;
}

Digits mulmod(const Digits& a, const Digits& b, const Digits& m, std::uint32_t p) {
  Digits prod(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    }
  }
  Digits r = poly_rem(prod, m, p);
  r.resize(m.size() - 1, 0);
  return r;
}

bool is_zero_poly(const Digits& d) {
  return std::all_of(d.begin(), d.end(), [](std::uint32_t c) { return c == 0; });
}

// Trial division by every monic polynomial of degree 1..e/2.
bool is_irreducible(const Digits& m, std::uint32_t p) {
  const std::uint32_t e = static_cast<std::uint32_t>(m.size() - 1);
  for (std::uint32_t deg = 1; deg <= e / 2; ++deg) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < deg; ++i) count *= p;
    for (std::uint64_t k = 0; k < count; ++k) {
      Digits divisor = unpack(static_cast<std::uint32_t>(k), p, deg);
      divisor.push_back(1);
      if (is_zero_poly(poly_rem(m, divisor, p))) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

Digits powmod(Digits base, std::uint64_t n, const Digits& m, std::uint32_t p) {
  Digits result(m.size() - 1, 0);
  result[0] = 1;
  while (n > 0) {
    if (n & 1) result = mulmod(result, base, m, p);
    base = mulmod(base, base, m, p);
    n >>= 1;
  }
  return result;
}

std::unique_ptr<detail::FieldData> build(std::uint32_t p, std::uint32_t e, Digits modulus) {
  auto data = std::make_unique<detail::FieldData>();
  data->p = p;
  data->e = e;
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) q *= p;
  data->q = static_cast<std::uint32_t>(q);
  data->modulus = std::move(modulus);

  const std::uint32_t order = data->q - 1;
  const auto factors = prime_factors(order);
  Digits primitive;
  for (std::uint32_t cand = 1; cand < data->q; ++cand) {
    Digits g = unpack(cand, p, e);
    bool ok = true;
    for (std::uint32_t r : factors) {
      Digits h = powmod(g, order / r, data->modulus, p);
      if (pack(h, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      primitive = g;
      break;
    }
  }
  ensure(!primitive.empty() || data->q == 2, "no primitive element");
  if (primitive.empty()) primitive = Digits{1};

  data->exp.resize(order);
  data->log.assign(data->q, 0);
  Digits cur(e, 0);
  cur[0] = 1;
  for (std::uint32_t k = 0; k < order; ++k) {
    std::uint32_t v = pack(cur, p);
    data->exp[k] = v;
    data->log[v] = k;
    cur = mulmod(cur, primitive, data->modulus, p);
  }
  data->generator = e > 1 ? p : 0;
  return data;
}

struct Registry {
  std::mutex mu;
  std::map<std::tuple<std::uint32_t, std::uint32_t, Digits>, std::unique_ptr<detail::FieldData>> fields;
};

Registry& registry() {
  static Registry r;
  return r;
}

std::uint32_t add_packed(const detail::FieldData* f, std::uint32_t a, std::uint32_t b) {
  if (f->e == 1) return (a + b) % f->p;
  std::uint32_t out = 0, scale = 1;
  for (std::uint32_t i = 0; i < f->e; ++i) {
    std::uint32_t da = a % f->p, db = b % f->p;
    out += ((da + db) % f->p) * scale;
    a /= f->p;
    b /= f->p;
    scale *= f->p;
  }
  return out;
}

std::uint32_t neg_packed(const detail::FieldData* f, std::uint32_t a) {
  if (f->e == 1) return (f->p - a) % f->p;
  std::uint32_t out = 0, scale = 1;
  for (std::uint32_t i = 0; i < f->e; ++i) {
    std::uint32_t da = a % f->p;
    out += ((f->p - da) % f->p) * scale;
    a /= f->p;
    scale *= f->p;
  }
  return out;
}

void check_same(const detail::FieldData* a, const detail::FieldData* b) {
  if (a != b) throw Error(ErrorCode::FieldMismatch, "operands live in different fields");
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::make(std::uint32_t p, std::uint32_t e, std::optional<std::vector<std::uint32_t>> modulus) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (e < 1) throw Error(ErrorCode::InvalidParameters, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    q *= p;
    if (q > kMaxFieldOrder) throw Error(ErrorCode::FieldTooLarge, "field order exceeds 2^16");
  }

  Digits m;
  if (modulus) {
    m = *modulus;
    for (auto& c : m) c %= p;
    if (m.size() == e) m.push_back(1);
    if (m.size() != e + 1 || m.back() != 1)
      throw Error(ErrorCode::InvalidParameters, "modulus must be monic of degree e");
    if (!is_irreducible(m, p)) throw Error(ErrorCode::ReducibleModulus, "modulus is reducible over F_p");
  } else if (e == 1) {
    m = {0, 1};
  } else {
    for (std::uint32_t k = 0; k < q; ++k) {
      // Lexicographic in (c_{e-1}, ..., c_0) is increasing packed index.
      Digits cand = unpack(k, p, e);
      cand.push_back(1);
      if (is_irreducible(cand, p)) {
        m = cand;
        break;
      }
    }
    if (m.empty()) throw Error(ErrorCode::NoModulusFound, "no irreducible modulus found");
  }

  auto& reg = registry();
  std::lock_guard lock(reg.mu);
  auto key = std::make_tuple(p, e, m);
  auto it = reg.fields.find(key);
  if (it == reg.fields.end()) it = reg.fields.emplace(key, build(p, e, m)).first;
  return Field(it->second.get());
}

Field Field::of_order(std::uint32_t q) {
  if (q < 2) throw Error(ErrorCode::NotPrime, "field order must be a prime power");
  std::uint32_t p = prime_factors(q).front();
  std::uint32_t e = 0;
  std::uint32_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1) throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not a prime power");
  return make(p, e);
}

std::uint32_t Field::characteristic() const { return data_->p; }
std::uint32_t Field::degree() const { return data_->e; }
std::uint32_t Field::order() const { return data_->q; }
const std::vector<std::uint32_t>& Field::modulus() const { return data_->modulus; }

Elem Field::zero() const { return Elem(data_, 0); }
Elem Field::one() const { return Elem(data_, 1); }
Elem Field::gen() const { return Elem(data_, data_->generator); }

Elem Field::from_int(std::int64_t n) const {
  std::int64_t p = data_->p;
  return Elem(data_, static_cast<std::uint32_t>(((n % p) + p) % p));
}

Elem Field::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  // Reduce an arbitrary-length coefficient vector modulo m(u).
  Digits d(coeffs.begin(), coeffs.end());
  for (auto& c : d) c %= data_->p;
  if (d.size() > data_->e) d = poly_rem(d, data_->modulus, data_->p);
  d.resize(data_->e, 0);
  return Elem(data_, pack(d, data_->p));
}

Elem Field::from_index(std::uint32_t packed) const {
  if (packed >= data_->q) throw Error(ErrorCode::InvalidParameters, "element index out of range");
  return Elem(data_, packed);
}

std::vector<Elem> Field::elements() const {
  std::vector<Elem> out;
  out.reserve(data_->q);
  for (std::uint32_t v = 0; v < data_->q; ++v) out.push_back(Elem(data_, v));
  return out;
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "F_" << data_->q;
  if (data_->e > 1) {
    os << " = F_" << data_->p << "[u]/(";
    bool first = true;
    for (std::size_t i = data_->modulus.size(); i-- > 0;) {
      std::uint32_t c = data_->modulus[i];
      if (c == 0) continue;
      if (!first) os << "+";
      first = false;
      if (i == 0) {
        os << c;
      } else {
        if (c != 1) os << c << "*";
        os << "u";
        if (i > 1) os << "^" << i;
      }
    }
    os << ")";
  }
  return os.str();
}

std::vector<std::uint32_t> Elem::coeffs() const { return unpack(v_, f_->p, f_->e); }

Elem Elem::operator+(const Elem& b) const {
  check_same(f_, b.f_);
  return Elem(f_, add_packed(f_, v_, b.v_));
}

Elem Elem::operator-(const Elem& b) const {
  check_same(f_, b.f_);
  return Elem(f_, add_packed(f_, v_, neg_packed(f_, b.v_)));
}

Elem Elem::operator-() const { return Elem(f_, neg_packed(f_, v_)); }

Elem Elem::operator*(const Elem& b) const {
  check_same(f_, b.f_);
  if (v_ == 0 || b.v_ == 0) return Elem(f_, 0);
  if (f_->e == 1) return Elem(f_, static_cast<std::uint32_t>(std::uint64_t(v_) * b.v_ % f_->p));
  std::uint32_t k = f_->log[v_] + f_->log[b.v_];
  std::uint32_t n = f_->q - 1;
  if (k >= n) k -= n;
  return Elem(f_, f_->exp[k]);
}

Elem Elem::inverse() const {
  if (v_ == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero in " + Field(f_).describe());
  std::uint32_t n = f_->q - 1;
  std::uint32_t k = f_->log[v_];
  return Elem(f_, f_->exp[k == 0 ? 0 : n - k]);
}

Elem Elem::operator/(const Elem& b) const {
  check_same(f_, b.f_);
  return *this * b.inverse();
}

Elem Elem::pow(std::int64_t n) const {
  if (v_ == 0) {
    if (n < 0) throw Error(ErrorCode::DivisionByZero, "negative power of zero");
    return n == 0 ? Elem(f_, 1) : *this;
  }
  std::int64_t order = f_->q - 1;
  std::int64_t k = (static_cast<std::int64_t>(f_->log[v_]) * (((n % order) + order) % order)) % order;
  return Elem(f_, f_->exp[static_cast<std::size_t>(k)]);
}

Elem Elem::frobenius() const { return pow(f_->p); }

Elem Elem::pth_root() const {
  // a^{p^e} = a, so a^{p^{e-1}} is the p-th root.
  std::int64_t exponent = 1;
  for (std::uint32_t i = 1; i < f_->e; ++i) exponent *= f_->p;
  Elem r = pow(exponent);
  ensure(r.frobenius() == *this, "pth_root postcondition");
  return r;
}

Elem Elem::scaled(std::int64_t n) const { return Field(f_).from_int(n) * *this; }

std::string Elem::to_string() const {
  if (f_ == nullptr) return "0";
  if (f_->e == 1) return std::to_string(v_);
  Digits d = coeffs();
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d[i] == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0) {
      os << d[i];
    } else {
      if (d[i] != 1) os << d[i] << "*";
      os << "u";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace charfol::gf
