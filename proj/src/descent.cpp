#include "charfol/descent.hpp"

namespace charfol::descent {

using algebra::FqPoly;
using algebra::Monomial;
using algebra::RatFunc;
using algebra::UPoly;

KPoly root_coefficients(const KPoly& f) {
  KPoly out(f.field(), f.vars());
  for (const auto& [m, c] : f.terms()) {
    if (!in_Kp(c))
      throw Error(ErrorCode::NotAPthPower,
                  "coefficient " + c.to_string() + " of " + f.monomial_string(m) + " is not in K^p");
    out.add_term(m, pth_root_K(c));
  }
  return out;
}

namespace {

UPoly lcm(const UPoly& a, const UPoly& b) { return UPoly::divmod(a * b, UPoly::gcd(a, b)).first.monic(); }

}  // namespace

KPoly root_whole(const KPoly& f) {
  const gf::Field& field = f.field();
  const std::uint32_t p = field.characteristic();
  if (f.is_zero()) return f;
  UPoly L = UPoly::constant(field.one());
  for (const auto& [m, c] : f.terms()) L = lcm(L, c.den());
  // L*f as a polynomial over F_q in (t, x_1..x_n), with t first.
  std::vector<std::string> names{"t"};
  names.insert(names.end(), f.vars()->begin(), f.vars()->end());
  auto tx = algebra::make_vars(names);
  FqPoly big(field, tx);
  for (const auto& [m, c] : f.terms()) {
    UPoly num = UPoly::divmod(L, c.den()).first * c.num();
    for (std::size_t k = 0; k < num.coeffs().size(); ++k) {
      if (num.coeffs()[k].is_zero()) continue;
      Monomial mm{static_cast<std::uint32_t>(k)};
      mm.insert(mm.end(), m.begin(), m.end());
      big.add_term(mm, num.coeffs()[k]);
    }
  }
  // Root the t-part: c t^{pk} x^J -> c^{1/p} t^k x^J.
  KPoly out(field, f.vars());
  for (const auto& [mm, c] : big.terms()) {
    if (mm[0] % p != 0) throw Error(ErrorCode::NotAPthPower, "t-exponent not divisible by p");
    Monomial m(mm.begin() + 1, mm.end());
    out.add_term(m, RatFunc(UPoly::monomial(c.pth_root(), mm[0] / p)));
  }
  auto Lroot = L.pth_root();
  if (!Lroot) throw Error(ErrorCode::NotAPthPower, "common denominator not in K^p");
  return out * RatFunc(*Lroot).inverse();
}

KPoly twist(const KPoly& f) {
  return f.map_coeffs([](const RatFunc& c) { return c.frobenius(); });
}

ModelPair descend_algebra(const std::shared_ptr<const KChart>& A) {
  std::vector<std::string> offenders;
  ModelPair out;
  std::vector<std::pair<KPoly, std::size_t>> rooted;
  for (std::size_t j = 0; j < A->relations().size(); ++j) {
    const auto& rel = A->relations()[j];
    for (const auto& [m, c] : rel.poly.terms()) {
      std::string mono = rel.poly.monomial_string(m);
      if (mono.empty()) mono = "1";
      if (!in_Kp(c)) {
        offenders.push_back(c.to_string() + " (coefficient of " + mono + " in relation " + std::to_string(j + 1) + ")");
        continue;
      }
      out.provenance.push_back({j, mono, c.to_string(), pth_root_K(c).to_string()});
    }
    if (offenders.empty()) rooted.emplace_back(root_coefficients(rel.poly), rel.var);
  }
  if (!offenders.empty()) {
    std::string msg = "coefficients outside K^p:";
    for (const auto& o : offenders) msg += " " + o + ";";
    msg.pop_back();
    throw Error(ErrorCode::NoDescent, msg);
  }
  out.original = A;
  out.descended = std::make_shared<const KChart>(A->field(), A->vars(), std::move(rooted));
  ensure(verify_model(out), "descended model failed its own checks");
  return out;
}

foliation::Derivation<RatFunc> descend_derivation(const foliation::Derivation<RatFunc>& D, const ModelPair& model) {
  std::vector<KPoly> g;
  for (std::size_t i = 0; i < D.values().size(); ++i) {
    const auto& gi = D.value(i);
    for (const auto& [m, c] : gi.terms()) {
      if (!in_Kp(c)) {
        std::string mono = gi.monomial_string(m);
        throw Error(ErrorCode::NoDerivationDescent, "coefficient " + c.to_string() + (mono.empty() ? "" : " of " + mono) +
                                                        " in D(" + (*D.chart().vars())[i] + ") is not in K^p");
      }
    }
    g.push_back(root_coefficients(gi));
  }
  return foliation::Derivation<RatFunc>(model.descended, std::move(g));
}

bool verify_model(const ModelPair& model) {
  const auto& a = model.original->relations();
  const auto& b = model.descended->relations();
  if (a.size() != b.size()) return false;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (!(root_whole(a[j].poly) == b[j].poly)) return false;
    if (!(twist(b[j].poly) == a[j].poly)) return false;
    if (a[j].var != b[j].var) return false;
  }
  return true;
}

nlohmann::ordered_json ModelPair::to_json() const {
  nlohmann::ordered_json j;
  j["variables"] = *original->vars();
  auto rels = [](const KChart& A) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : A.relations()) arr.push_back(r.poly.to_string());
    return arr;
  };
  j["relations_before"] = rels(*original);
  j["relations_after"] = rels(*descended);
  nlohmann::ordered_json prov = nlohmann::ordered_json::array();
  for (const auto& p : provenance)
    prov.push_back({{"relation", p.relation + 1}, {"monomial", p.monomial}, {"before", p.before}, {"after", p.after}});
  j["provenance"] = prov;
  return j;
}

}  // namespace charfol::descent
