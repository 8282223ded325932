#pragma once

// Numerical Picard lattices of the ruled surface P_C(E) (basis H, F) and of
// the Raynaud cover X (basis T, F), with exact rational intersection forms.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "charfol/error.hpp"

namespace charfol::raynaud {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& r);

struct Params {
  std::uint32_t p = 0;
  std::uint32_t d = 0;
  std::int64_t deg_N = 0;
  std::int64_t g = 0;

  std::int64_t deg_L() const { return static_cast<std::int64_t>(d) * deg_N; }
  bool operator==(const Params&) const = default;
};

// g from 2g - 2 = p d deg N; throws InvalidParameters when that is odd or
// the inputs are out of range.
Params make_params(std::uint32_t p, std::uint32_t d, std::int64_t deg_N);

enum class Surface { Ruled, Raynaud };

class SurfaceLattice;

// aH + bF on the ruled surface, aT + bF on X.
struct DivClass {
  std::shared_ptr<const SurfaceLattice> lattice;
  Rational a, b;

  DivClass operator+(const DivClass& o) const;
  DivClass operator-(const DivClass& o) const;
  DivClass operator*(const Rational& s) const;
  bool operator==(const DivClass& o) const;
  std::string to_string() const;
};

class SurfaceLattice : public std::enable_shared_from_this<SurfaceLattice> {
 public:
  // Throws LatticeMismatch unless 2g - 2 = p d deg N.
  static std::shared_ptr<const SurfaceLattice> make(Surface kind, const Params& params);

  Surface kind() const { return kind_; }
  const Params& params() const { return params_; }
  // H^2 (= deg L) on the ruled surface, T^2 (= deg N) on X.
  Rational section_square() const;
  const char* section_name() const { return kind_ == Surface::Ruled ? "H" : "T"; }

  DivClass cls(Rational a, Rational b) const;
  DivClass section() const { return cls(1, 0); }
  DivClass fiber() const { return cls(0, 1); }

  // Throws LatticeMismatch for classes from different lattices.
  Rational intersect(const DivClass& x, const DivClass& y) const;

 private:
  SurfaceLattice(Surface kind, Params params) : kind_(kind), params_(params) {}
  Surface kind_;
  Params params_;
};

Rational intersect(const DivClass& x, const DivClass& y);

struct FormulaCheck {
  std::string name;
  std::string lhs;
  std::string rhs;
  bool pass = false;
};

struct Ledger {
  std::vector<FormulaCheck> checks;
  std::vector<std::string> assumptions;  // inputs the lattice cannot check

  bool passed() const;
  // Throws FormulaMismatch naming the first failed identity.
  void require() const;
};

Ledger verify_ruled_formulas(const Params& params);
// Throws HypothesisViolated when d does not divide p + 1.
Ledger verify_raynaud_formulas(const Params& params);

struct AmpleReport {
  DivClass A;
  Rational A2, AT, AF, ASigma;
  std::vector<std::string> test_set;
  std::string caveat;
};

// A = (d-1)T + deg N F; throws NonPositive naming the failing pairing.
AmpleReport ample_class_A(const Params& params);

Ledger global_generation_numerics(const Params& params);

}  // namespace charfol::raynaud
