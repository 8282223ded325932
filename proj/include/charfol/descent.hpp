#pragma once

// Descent of chart algebras and derivations over K = F_q(t) to K^p: a chart
// whose relation coefficients all lie in K^p has the model Ã obtained by
// taking p-th roots of the coefficients (variables untouched), and twisting Ã
// back along t -> t^p recovers A.

#include <memory>
#include <string>
#include <vector>

#include "charfol/chart.hpp"
#include "charfol/foliation.hpp"
#include "charfol/kp.hpp"
#include "json.hpp"

namespace charfol::descent {

using algebra::KChart;
using algebra::KPoly;

struct CoefficientProvenance {
  std::size_t relation;
  std::string monomial;
  std::string before;
  std::string after;
};

struct ModelPair {
  std::shared_ptr<const KChart> original;
  std::shared_ptr<const KChart> descended;
  std::vector<CoefficientProvenance> provenance;

  nlohmann::ordered_json to_json() const;
};

// Roots every K-coefficient; throws NotAPthPower naming the first offender.
KPoly root_coefficients(const KPoly& f);
// Independent path: clear denominators, root the polynomial in (t, x) as a
// whole, divide by the root of the common denominator.
KPoly root_whole(const KPoly& f);
// t -> t^p on the coefficients.
KPoly twist(const KPoly& f);

// Throws NoDescent listing every coefficient outside K^p.
ModelPair descend_algebra(const std::shared_ptr<const KChart>& A);

// Throws NoDerivationDescent naming the offending coefficient.
foliation::Derivation<algebra::RatFunc> descend_derivation(const foliation::Derivation<algebra::RatFunc>& D,
                                                           const ModelPair& model);

// Both root paths agree on every relation and the twist of Ã is A.
bool verify_model(const ModelPair& model);

}  // namespace charfol::descent
