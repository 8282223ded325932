#pragma once

// Planar Tango curves C: Y^{dp} - Y Z^{dp-1} - Z X^{dp-1} = 0 over F_q, with
// distinguished point Q = [1:0:0] at infinity.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "charfol/chart.hpp"
#include "charfol/series.hpp"

namespace charfol::tango {

class PlanarTangoCurve {
 public:
  // Requires p prime >= 3, d >= 2 and q a power of p (default q = p).
  PlanarTangoCurve(std::uint32_t p, std::uint32_t d, std::optional<std::uint32_t> q = std::nullopt);

  std::uint32_t p() const { return p_; }
  std::uint32_t d() const { return d_; }
  std::uint32_t degree() const { return p_ * d_; }
  const gf::Field& field() const { return field_; }

  // Homogeneous form in X, Y, Z.
  algebra::FqPoly projective_form() const;
  // F_q[x,y]/(y^{dp} - y - x^{dp-1}), designated variable y.
  std::shared_ptr<const algebra::FqChart> affine_model() const;
  // F(v, w) = v^{dp} - v w^{dp-1} - w around Q, with v = Y/X and w = Z/X.
  algebra::FqPoly infinity_equation() const;

  int default_precision() const { return 4 * static_cast<int>(degree() * degree()); }

 private:
  std::uint32_t p_, d_;
  gf::Field field_;
};

struct SmoothnessCertificate {
  std::string dfdy;               // ∂f/∂y on the affine chart
  bool affine_unit = false;       // ∂f/∂y is a nonzero constant
  bool infinity_passes_Q = false;  // F(0,0) = 0
  std::string dFdw_at_Q;
  bool infinity_smooth = false;   // ∂F/∂w(0,0) is nonzero
  std::string boundary;           // restriction of the form to Z = 0
  bool boundary_only_Q = false;   // restriction is a unit times Y^{dp}
  bool all() const { return affine_unit && infinity_passes_Q && infinity_smooth && boundary_only_Q; }
};

SmoothnessCertificate smoothness_certificate(const PlanarTangoCurve& C);

struct DivisorOfDx {
  int ord_Q = 0;
  int precision = 0;
  std::string w_expansion;   // leading part of w(v) on the infinity chart
  bool affine_generator = false;  // dx generates Ω¹ on the affine chart
  std::string eliminated;    // coordinate whose differential the relation removes
};

// Throws PrecisionExhausted when precision <= dp(dp-1).
DivisorOfDx divisor_of_dx(const PlanarTangoCurve& C, int precision);

// (dp-1)(dp-2)/2, checked against 2g-2 = ord_Q(dx) when a divisor is given;
// throws GenusMismatch on disagreement.
std::int64_t genus(const PlanarTangoCurve& C, const std::optional<DivisorOfDx>& div = std::nullopt);

struct TangoReport {
  std::uint32_t p = 0, d = 0;
  std::int64_t g = 0;
  std::int64_t deg_L = 0, deg_N = 0;
  int ord_Q = 0;
  int ord_formula = 0;
  bool dx_exact = false;        // dx = d(x), confirmed by the Cartier operator
  bool ord_matches = false;     // ord_Q(dx) = dp(dp-3)
  bool divisor_is_pL = false;   // dp(dp-3) = p * deg L
  bool tango_equality = false;  // p deg L = 2g - 2
  bool index_d = false;         // deg L = d deg N
  bool d_divides_p_plus_1 = false;
  SmoothnessCertificate smooth;
  DivisorOfDx divisor;
  bool passed() const { return dx_exact && ord_matches && divisor_is_pL && tango_equality && index_d && smooth.all(); }
};

TangoReport verify_tango_structure(const PlanarTangoCurve& C, std::optional<int> precision = std::nullopt);

}  // namespace charfol::tango
