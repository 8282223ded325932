#include "charfol/raynaud.hpp"

namespace charfol::raynaud {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Params make_params(std::uint32_t p, std::uint32_t d, std::int64_t deg_N) {
  if (p < 2) throw Error(ErrorCode::InvalidParameters, "p must be a prime");
  for (std::uint32_t k = 2; k * k <= p; ++k)
    if (p % k == 0) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (d < 1) throw Error(ErrorCode::InvalidParameters, "d must be positive");
  if (deg_N < 1) throw Error(ErrorCode::InvalidParameters, "deg N must be positive");
  const std::int64_t two_g_minus_2 = static_cast<std::int64_t>(p) * d * deg_N;
  if (two_g_minus_2 % 2 != 0)
    throw Error(ErrorCode::InvalidParameters, "p d deg N = " + std::to_string(two_g_minus_2) + " is odd");
  return {p, d, deg_N, two_g_minus_2 / 2 + 1};
}

std::shared_ptr<const SurfaceLattice> SurfaceLattice::make(Surface kind, const Params& params) {
  const std::int64_t lhs = 2 * params.g - 2;
  const std::int64_t rhs = static_cast<std::int64_t>(params.p) * params.d * params.deg_N;
  if (lhs != rhs)
    throw Error(ErrorCode::LatticeMismatch,
                "2g - 2 = " + std::to_string(lhs) + " but p d deg N = " + std::to_string(rhs));
  return std::shared_ptr<const SurfaceLattice>(new SurfaceLattice(kind, params));
}

Rational SurfaceLattice::section_square() const {
  return kind_ == Surface::Ruled ? Rational(params_.deg_L()) : Rational(params_.deg_N);
}

DivClass SurfaceLattice::cls(Rational a, Rational b) const { return DivClass{shared_from_this(), a, b}; }

namespace {

void same_lattice(const DivClass& x, const DivClass& y) {
  if (!x.lattice || !y.lattice) throw Error(ErrorCode::LatticeMismatch, "class without a lattice");
  if (x.lattice == y.lattice) return;
  if (x.lattice->kind() != y.lattice->kind() || !(x.lattice->params() == y.lattice->params()))
    throw Error(ErrorCode::LatticeMismatch, "classes live on different surfaces");
}

}  // namespace

Rational SurfaceLattice::intersect(const DivClass& x, const DivClass& y) const {
  same_lattice(x, y);
  // [[s, 1], [1, 0]] in the basis (section, fiber).
  return x.a * y.a * section_square() + x.a * y.b + x.b * y.a;
}

Rational intersect(const DivClass& x, const DivClass& y) { return x.lattice->intersect(x, y); }

DivClass DivClass::operator+(const DivClass& o) const {
  same_lattice(*this, o);
  return {lattice, a + o.a, b + o.b};
}
DivClass DivClass::operator-(const DivClass& o) const {
  same_lattice(*this, o);
  return {lattice, a - o.a, b - o.b};
}
DivClass DivClass::operator*(const Rational& s) const { return {lattice, a * s, b * s}; }
bool DivClass::operator==(const DivClass& o) const {
  same_lattice(*this, o);
  return a == o.a && b == o.b;
}
std::string DivClass::to_string() const {
  return "(" + raynaud::to_string(a) + ")" + lattice->section_name() + " + (" + raynaud::to_string(b) + ")F";
}

bool Ledger::passed() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

void Ledger::require() const {
  for (const auto& c : checks)
    if (!c.pass) throw Error(ErrorCode::FormulaMismatch, c.name + ": " + c.lhs + " != " + c.rhs);
}

namespace {

void add(Ledger& L, std::string name, const Rational& lhs, const Rational& rhs) {
  L.checks.push_back({std::move(name), to_string(lhs), to_string(rhs), lhs == rhs});
}
void add(Ledger& L, std::string name, const DivClass& lhs, const DivClass& rhs) {
  L.checks.push_back({std::move(name), lhs.to_string(), rhs.to_string(), lhs == rhs});
}

const char* kH2Assumption = "H^2 = deg E = deg L, from the extension 0 -> O_C -> E -> L -> 0";

}  // namespace

Ledger verify_ruled_formulas(const Params& P) {
  auto lat = SurfaceLattice::make(Surface::Ruled, P);
  const Rational p = P.p, degL = P.deg_L(), twog2 = 2 * P.g - 2;
  const DivClass H = lat->section(), F = lat->fiber();
  const DivClass S = H;
  const DivClass Gamma = lat->cls(p, -p * degL);
  const DivClass K = lat->cls(-2, (p + 1) * degL);
  Ledger L;
  L.assumptions.push_back(kH2Assumption);
  add(L, "S^2 = deg N_{S} = deg L", intersect(S, S), degL);
  add(L, "S.F = 1", intersect(S, F), 1);
  add(L, "Gamma.F = p", intersect(Gamma, F), p);
  // K_P = -2H + (2g - 2 + deg E)F for a projective bundle.
  add(L, "K via projective-bundle formula", K, lat->cls(-2, twog2 + degL));
  add(L, "(K+S).S = 2g-2", intersect(K + S, S), twog2);
  add(L, "(K+F).F = -2", intersect(K + F, F), -2);
  add(L, "S.Gamma = 0", intersect(S, Gamma), 0);
  add(L, "Gamma^2 = -p^2 deg L", intersect(Gamma, Gamma), -p * p * degL);
  return L;
}

Ledger verify_raynaud_formulas(const Params& P) {
  if ((P.p + 1) % P.d != 0)
    throw Error(ErrorCode::HypothesisViolated,
                "d = " + std::to_string(P.d) + " does not divide p + 1 = " + std::to_string(P.p + 1));
  auto ruled = SurfaceLattice::make(Surface::Ruled, P);
  auto lat = SurfaceLattice::make(Surface::Raynaud, P);
  const Rational p = P.p, d = P.d, degN = P.deg_N, degL = P.deg_L(), twog2 = 2 * P.g - 2;
  const DivClass T = lat->section(), F = lat->fiber();
  const DivClass Sigma = lat->cls(p, -p * degN);
  const DivClass K = lat->cls(p * d - p - d - 1, (d + p) * degN);
  Ledger L;
  L.assumptions.push_back(kH2Assumption);

  // π* on numerical classes: π*H = dT (π*S = dT), π*F = F.
  auto pullback = [&](const DivClass& c) { return lat->cls(c.a * d, c.b); };
  const DivClass H = ruled->section();
  add(L, "projection formula (pi*H)^2 = d H^2", intersect(pullback(H), pullback(H)), d * intersect(H, H));
  // S + Gamma = M^d with M = ((p+1)/d)H - p deg N F integral.
  const DivClass M = ruled->cls((p + 1) / d, -p * degN);
  add(L, "M = ((p+1)/d)H - p deg N F is integral", M.a.denominator() * M.b.denominator(), 1);
  add(L, "dM = S + Gamma", M * d, H + ruled->cls(p, -p * degL));
  add(L, "pi*Gamma = d Sigma", pullback(ruled->cls(p, -p * degL)), Sigma * d);

  const DivClass K_hurwitz = pullback(ruled->cls(-2, (p + 1) * degL)) + (T + Sigma) * (d - 1);
  add(L, "K_X = (pd-p-d-1)T + (d+p)deg N F (Hurwitz)", K, K_hurwitz);
  const DivClass K_alt = Sigma * (d - 1) - T * (d + 1) + lat->cls(0, (p + 1) * degL);
  add(L, "K_X = (d-1)Sigma - (d+1)T + (p+1)deg L F", K, K_alt);
  add(L, "deg K_F = (K_X+F).F = dp-p-d-1", intersect(K + F, F), d * p - p - d - 1);
  add(L, "Sigma.T = 0", intersect(Sigma, T), 0);
  add(L, "Sigma^2 = -p^2 deg N", intersect(Sigma, Sigma), -p * p * degN);
  add(L, "Sigma.F = p", intersect(Sigma, F), p);
  add(L, "(K_X+T).T = 2g-2", intersect(K + T, T), twog2);
  return L;
}

AmpleReport ample_class_A(const Params& P) {
  auto lat = SurfaceLattice::make(Surface::Raynaud, P);
  const Rational p = P.p, d = P.d, degN = P.deg_N;
  const DivClass T = lat->section(), F = lat->fiber();
  const DivClass Sigma = lat->cls(p, -p * degN);
  AmpleReport r{lat->cls(d - 1, degN), 0, 0, 0, 0, {"F", "T", "Sigma"},
                "Nakai-Moishezon verified on the test set {F, T, Sigma} only, not on every curve"};
  r.A2 = intersect(r.A, r.A);
  r.AT = intersect(r.A, T);
  r.AF = intersect(r.A, F);
  r.ASigma = intersect(r.A, Sigma);
  auto positive = [](const char* name, const Rational& v) {
    if (v <= 0) throw Error(ErrorCode::NonPositive, std::string(name) + " = " + to_string(v) + " is not positive");
  };
  positive("A^2", r.A2);
  positive("A.F", r.AF);
  positive("A.T", r.AT);
  positive("A.Sigma", r.ASigma);
  return r;
}

Ledger global_generation_numerics(const Params& P) {
  auto lat = SurfaceLattice::make(Surface::Raynaud, P);
  const Rational p = P.p, d = P.d, degN = P.deg_N;
  const DivClass T = lat->section(), F = lat->fiber();
  const DivClass Sigma = lat->cls(p, -p * degN);
  const DivClass A = lat->cls(d - 1, degN);
  Ledger L;
  const DivClass first = T * (p * (d - 1)) + F * (p * degN);
  const DivClass second = Sigma * (d - 1) + F * (p * d * degN);
  add(L, "pA = p(d-1)T + p deg N F", A * p, first);
  add(L, "pA = (d-1)Sigma + pd deg N F", A * p, second);
  add(L, "base loci disjoint: T.Sigma = 0", intersect(T, Sigma), 0);
  add(L, "degree of psi on fibers pA.F = p(d-1)", intersect(A * p, F), p * (d - 1));
  L.assumptions.push_back("N^p is globally generated on C");
  L.assumptions.push_back("C is not hyperelliptic");
  L.assumptions.push_back("d = 2 for the separation statement");
  return L;
}

}  // namespace charfol::raynaud
