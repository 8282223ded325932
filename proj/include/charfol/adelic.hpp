#pragma once

// Local points over F_q((t)) on chart algebras over K = F_q(t), pullback of
// 1-forms, condition (⋆), and lifting through the quotient of a descended
// chart by a p-closed foliation.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "charfol/chart.hpp"
#include "charfol/descent.hpp"
#include "charfol/differentials.hpp"
#include "charfol/foliation.hpp"
#include "charfol/series.hpp"

namespace charfol::adelic {

using algebra::KChart;
using algebra::KPoly;
using algebra::RatFunc;
using series::LaurentSeries;
using KForm = differentials::OneForm<RatFunc>;
using KDerivation = foliation::Derivation<RatFunc>;

inline constexpr int kDefaultPrecision = 64;

struct LocalPoint {
  std::shared_ptr<const KChart> chart;
  std::vector<LaurentSeries> coords;
  int precision = 0;  // every relation vanishes below this exponent
};

// Throws NotOnVariety naming the relation and the valuation of its residual.
LocalPoint make_point(std::shared_ptr<const KChart> A, std::vector<LaurentSeries> coords, int N);

// Coefficient of dt in x^*ω.
LaurentSeries pullback_form(const LocalPoint& x, const KForm& w);

struct StarResult {
  bool holds = false;                  // some section pulls back nonzero
  std::optional<std::size_t> witness;  // first such section
  std::vector<LaurentSeries> pullbacks;
};

StarResult star_condition(const LocalPoint& x, const std::vector<KForm>& sections);

// Y -> X at chart level: images[i] is φ*(x_i) in the source coordinates.
struct QuotientPresentation {
  std::shared_ptr<const KChart> source;
  std::shared_ptr<const KChart> target;
  std::vector<KPoly> images;
  bool inseparable = false;  // w_k^p is the image of a target function for every k
  std::string to_string() const;
};

// Source: quotient of the descended chart by the descended foliation. The
// map sends x_i to the certificate of x̃_i^p. Verifies that the p-th power of
// every source coordinate is the image of a target function.
QuotientPresentation build_presentation(const descent::ModelPair& model,
                                        const foliation::FactorizationReport<RatFunc>& quotient);

struct LiftResult {
  bool lifted = false;
  std::optional<LocalPoint> lift;
  std::string obstruction;  // when not lifted
};

// Solves φ*(x_i)(W) = x_i(t) by triangular substitution with p^a-th roots.
// Throws UnsupportedPresentation when no equation has a single unknown
// entering as c·W^{p^a}.
LiftResult lift_point(const LocalPoint& x, const QuotientPresentation& phi);

// Random point of A: free coordinates uniform integral series, the rest
// solved by Newton iteration. Free coordinate i is drawn as a p-th power when
// the mask says so; the first overload flips a coin per coordinate.
LocalPoint random_point(const std::shared_ptr<const KChart>& A, std::mt19937_64& rng, int N);
LocalPoint random_point(const std::shared_ptr<const KChart>& A, std::mt19937_64& rng, int N, bool pth_powers);
LocalPoint random_point(const std::shared_ptr<const KChart>& A, std::mt19937_64& rng, int N,
                        const std::vector<bool>& pth_powers);

struct TrialRecord {
  std::uint64_t trial = 0;
  std::vector<bool> pth_power_coords;  // mask passed to random_point
  bool lifted = false;
  bool star = false;
  bool determined = true;  // pullbacks known to precision >= N/2
  bool agrees() const { return !determined || lifted == !star; }
};

struct EquivalenceOptions {
  std::uint64_t trials = 200;
  std::uint64_t seed = 7;
  int precision = kDefaultPrecision;
  int jobs = 1;
  bool generation_asserted = false;
};

struct EquivalenceReport {
  std::vector<TrialRecord> records;
  std::uint64_t lifted = 0, not_lifted = 0, counterexamples = 0, undetermined = 0;
  bool sections_generate = false;   // some section has a unit coefficient, or asserted
  bool sections_annihilate = true;  // every section kills D
  QuotientPresentation presentation;
  std::string status;  // pass | fail | inconclusive; disagreements only fail when the sections generate
  std::vector<std::string> notes;
};

EquivalenceReport verify_equivalence(const std::shared_ptr<const KChart>& A, const KDerivation& D,
                                     const std::vector<KForm>& sections, const EquivalenceOptions& opts);

}  // namespace charfol::adelic
