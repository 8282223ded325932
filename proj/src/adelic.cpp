#include "charfol/adelic.hpp"

#include <exception>
#include <map>

namespace charfol::adelic {

using algebra::Monomial;

namespace {

LaurentSeries eval(const KPoly& f, const std::vector<LaurentSeries>& values, int N) {
  if (f.arity() == 0 || values.empty()) {
    // Constant polynomial in no variables.
    return LaurentSeries::from_ratfunc(f.is_zero() ? RatFunc(f.field()) : f.constant_term(), N);
  }
  return series::evaluate(f, values, N);
}

std::string relation_name(const KChart& A, std::size_t j) {
  return "relation " + std::to_string(j + 1) + " (" + A.relations()[j].poly.to_string() + ")";
}

}  // namespace

LocalPoint make_point(std::shared_ptr<const KChart> A, std::vector<LaurentSeries> coords, int N) {
  if (coords.size() != A->arity()) throw Error(ErrorCode::ArityMismatch, "point has wrong number of coordinates");
  int certified = N;
  for (const auto& c : coords) certified = std::min(certified, c.precision());
  for (std::size_t j = 0; j < A->relations().size(); ++j) {
    auto r = eval(A->relations()[j].poly, coords, N);
    if (!r.is_zero())
      throw Error(ErrorCode::NotOnVariety,
                  relation_name(*A, j) + " has residual of valuation " + std::to_string(r.valuation()));
    certified = std::min(certified, r.precision());
  }
  return {std::move(A), std::move(coords), certified};
}

LaurentSeries pullback_form(const LocalPoint& x, const KForm& w) {
  const gf::Field& f = x.chart->field();
  const int N = x.precision;
  LaurentSeries acc = LaurentSeries::zero(f, N);
  for (std::size_t i = 0; i < w.coeffs().size(); ++i) {
    if (w.coeff(i).is_zero()) continue;
    acc = acc + eval(w.coeff(i), x.coords, N) * x.coords[i].derivative();
  }
  if (!w.dt_coeff().is_zero()) acc = acc + eval(w.dt_coeff(), x.coords, N);
  return acc;
}

StarResult star_condition(const LocalPoint& x, const std::vector<KForm>& sections) {
  StarResult out;
  for (std::size_t k = 0; k < sections.size(); ++k) {
    out.pullbacks.push_back(pullback_form(x, sections[k]));
    if (!out.holds && !out.pullbacks.back().is_zero()) {
      out.holds = true;
      out.witness = k;
    }
  }
  return out;
}

std::string QuotientPresentation::to_string() const {
  std::string s = source->to_string() + " -> " + target->to_string() + ":";
  for (std::size_t i = 0; i < images.size(); ++i)
    s += (i ? ", " : " ") + (*target->vars())[i] + " |-> " + images[i].to_string();
  return s;
}

QuotientPresentation build_presentation(const descent::ModelPair& model,
                                        const foliation::FactorizationReport<RatFunc>& quotient) {
  const auto& Q = quotient.quotient;
  const gf::Field& f = model.original->field();
  QuotientPresentation out;
  try {
    out.source = std::make_shared<const KChart>(f, Q.names, Q.relations);
  } catch (const Error& e) {
    throw Error(ErrorCode::UnsupportedPresentation, std::string("quotient relations are not triangular: ") + e.what());
  }
  out.target = model.original;
  for (const auto& c : Q.certificates) out.images.push_back(out.source->normal_form(c));

  // g_k^p = sum c^p x̃^{pJ} is the image of sum c^p x^J.
  const std::uint32_t p = f.characteristic();
  out.inseparable = true;
  for (std::size_t k = 0; k < Q.generators.size(); ++k) {
    const KPoly image = out.source->normal_form(descent::twist(Q.generators[k]).compose(out.images));
    const KPoly wp = out.source->normal_form(out.source->var(k).pow(p));
    if (!(image == wp)) out.inseparable = false;
  }
  return out;
}

LiftResult lift_point(const LocalPoint& x, const QuotientPresentation& phi) {
  const KChart& Y = *phi.source;
  const gf::Field& f = Y.field();
  const std::uint32_t p = f.characteristic();
  const int N = x.precision;
  const std::size_t n = Y.arity();

  struct Equation {
    KPoly lhs;
    LaurentSeries rhs;
    std::string name;
  };
  std::vector<Equation> eqs;
  for (std::size_t i = 0; i < phi.images.size(); ++i)
    eqs.push_back({phi.images[i], x.coords[i], "coordinate " + (*phi.target->vars())[i]});
  for (std::size_t j = 0; j < Y.relations().size(); ++j)
    eqs.push_back({Y.relations()[j].poly, LaurentSeries::zero(f, N), relation_name(Y, j)});

  std::vector<std::optional<LaurentSeries>> W(n);
  auto values = [&]() {
    std::vector<LaurentSeries> v;
    for (const auto& w : W) v.push_back(w ? *w : LaurentSeries::zero(f, N));
    return v;
  };
  std::vector<bool> used(eqs.size(), false);
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t e = 0; e < eqs.size(); ++e) {
      if (used[e]) continue;
      std::vector<std::size_t> unknown;
      for (auto v : eqs[e].lhs.support_vars())
        if (!W[v]) unknown.push_back(v);
      if (unknown.size() != 1) continue;
      const std::size_t u = unknown[0];
      // The unknown must appear in a single term c·W_u^{p^a}.
      std::optional<std::pair<Monomial, RatFunc>> term;
      bool ok = true;
      for (const auto& [m, c] : eqs[e].lhs.terms()) {
        if (m[u] == 0) continue;
        if (term) ok = false;
        term = {m, c};
      }
      if (!ok || !term) continue;
      const auto& [m, c] = *term;
      if (algebra::total_degree(m) != m[u]) continue;
      std::uint32_t e_pow = m[u], a = 0;
      while (e_pow % p == 0) {
        e_pow /= p;
        ++a;
      }
      if (e_pow != 1) continue;

      KPoly rest = eqs[e].lhs;
      rest.add_term(m, -c);
      LaurentSeries value = (eqs[e].rhs - eval(rest, values(), N)) / LaurentSeries::from_ratfunc(c, N);
      for (std::uint32_t k = 0; k < a; ++k) {
        auto r = value.pth_root();
        if (!r) {
          LiftResult out;
          out.obstruction = eqs[e].name + " requires a p^" + std::to_string(a) + "-th root of " +
                            value.truncated(std::min(value.precision(), value.start() + 8)).to_string() +
                            " for " + (*Y.vars())[u];
          return out;
        }
        value = *r;
      }
      W[u] = value;
      used[e] = true;
      progress = true;
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    if (!W[k])
      throw Error(ErrorCode::UnsupportedPresentation,
                  "coordinate " + (*Y.vars())[k] + " is not reached by triangular substitution");

  // Solutions above are forced, so any failing equation rules out a lift.
  std::vector<LaurentSeries> sol = values();
  int certified = N;
  for (const auto& s : sol) certified = std::min(certified, s.precision());
  for (const auto& eq : eqs) {
    LaurentSeries r = eval(eq.lhs, sol, N) - eq.rhs;
    if (!r.is_zero()) {
      LiftResult out;
      out.obstruction = eq.name + " fails with residual of valuation " + std::to_string(r.valuation());
      return out;
    }
    certified = std::min(certified, r.precision());
  }
  LiftResult out;
  out.lifted = true;
  out.lift = LocalPoint{phi.source, std::move(sol), certified};
  return out;
}

namespace {

LaurentSeries random_series(std::mt19937_64& rng, const gf::Field& f, int N) {
  std::vector<gf::Elem> c;
  for (int k = 0; k < N; ++k) c.push_back(f.from_index(static_cast<std::uint32_t>(rng() % f.order())));
  return LaurentSeries(f, 0, std::move(c), N);
}

}  // namespace

LocalPoint random_point(const std::shared_ptr<const KChart>& A, std::mt19937_64& rng, int N) {
  std::vector<bool> mask(A->arity());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = rng() % 2 == 0;
  return random_point(A, rng, N, mask);
}

LocalPoint random_point(const std::shared_ptr<const KChart>& A, std::mt19937_64& rng, int N, bool pth_powers) {
  return random_point(A, rng, N, std::vector<bool>(A->arity(), pth_powers));
}

LocalPoint random_point(const std::shared_ptr<const KChart>& A, std::mt19937_64& rng, int N,
                        const std::vector<bool>& pth_powers) {
  if (pth_powers.size() != A->arity()) throw Error(ErrorCode::InvalidParameters, "mask length differs from arity");
  const gf::Field& f = A->field();
  const int p = static_cast<int>(f.characteristic());
  auto elim = differentials::eliminate_relations(A);
  if (!elim.unreduced.empty())
    throw Error(ErrorCode::UnsupportedPresentation, "relation without a unit partial derivative");
  std::vector<bool> solved(A->arity(), false);
  for (auto v : elim.pivots) solved[v] = true;

  for (int attempt = 0; attempt < 32; ++attempt) {
    std::vector<LaurentSeries> coords(A->arity(), LaurentSeries::zero(f, N));
    std::vector<bool> known(A->arity(), false);
    for (std::size_t i = 0; i < A->arity(); ++i) {
      if (solved[i]) continue;
      coords[i] = pth_powers[i] ? random_series(rng, f, (N + p - 1) / p).frobenius().truncated(N) : random_series(rng, f, N);
      known[i] = true;
    }
    bool failed = false;
    for (std::size_t j = 0; j < A->relations().size() && !failed; ++j) {
      const std::size_t v = elim.pivots[j];
      const KPoly& r = A->relations()[j].poly;
      for (auto u : r.support_vars())
        if (u != v && !known[u])
          throw Error(ErrorCode::UnsupportedPresentation, "relations cannot be solved in order");
      std::map<std::uint32_t, KPoly> by_degree;
      for (const auto& [m, c] : r.terms()) {
        Monomial mm = m;
        const std::uint32_t k = mm[v];
        mm[v] = 0;
        by_degree.try_emplace(k, f, A->vars()).first->second.add_term(mm, c);
      }
      const std::uint32_t top = by_degree.rbegin()->first;
      std::vector<LaurentSeries> coeffs(top + 1, LaurentSeries::zero(f, N));
      for (const auto& [k, poly] : by_degree) coeffs[k] = eval(poly, coords, N);
      std::optional<gf::Elem> w0;
      for (const auto& cand : f.elements()) {
        gf::Elem val = f.zero(), der = f.zero();
        for (std::size_t k = coeffs.size(); k-- > 0;) {
          der = der * cand + val;
          val = val * cand + coeffs[k].coeff(0);
        }
        if (val.is_zero() && !der.is_zero()) {
          w0 = cand;
          break;
        }
      }
      if (!w0) {
        failed = true;
        break;
      }
      coords[v] = series::newton_root(coeffs, *w0, N);
      known[v] = true;
    }
    if (failed) continue;
    return make_point(A, std::move(coords), N);
  }
  throw Error(ErrorCode::UnsupportedPresentation, "no simple root found for the solved coordinates");
}

EquivalenceReport verify_equivalence(const std::shared_ptr<const KChart>& A, const KDerivation& D,
                                     const std::vector<KForm>& sections, const EquivalenceOptions& opts) {
  EquivalenceReport rep;
  auto model = descent::descend_algebra(A);
  auto Dt = descent::descend_derivation(D, model);
  auto fact = foliation::frobenius_factorization_check(Dt);
  rep.presentation = build_presentation(model, fact);
  if (!rep.presentation.inseparable) rep.notes.push_back("presentation failed the inseparability check");

  for (const auto& w : sections)
    if (!foliation::pairing(w, D).is_zero()) rep.sections_annihilate = false;
  bool unit = false;
  for (const auto& w : sections)
    for (const auto& c : w.coeffs())
      if (c.is_constant() && !c.is_zero()) unit = true;
  rep.sections_generate = !sections.empty() && (unit || opts.generation_asserted);
  if (sections.empty()) rep.notes.push_back("no sections supplied: the (*) side is vacuous");
  else if (!rep.sections_generate) rep.notes.push_back("generation of the kernel sheaf is neither certified nor asserted");
  if (!rep.sections_annihilate) rep.notes.push_back("some section does not vanish on D");

  const int N = opts.precision;
  rep.records.resize(opts.trials);
  std::vector<std::exception_ptr> errors(opts.trials);
  const auto trials = static_cast<std::int64_t>(opts.trials);
#pragma omp parallel for schedule(dynamic) num_threads(opts.jobs > 0 ? opts.jobs : 1) if (opts.jobs > 1)
  for (std::int64_t i = 0; i < trials; ++i) {
    try {
      std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                        static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(static_cast<std::uint64_t>(i) >> 32)};
      std::mt19937_64 rng(seq);
      TrialRecord& rec = rep.records[static_cast<std::size_t>(i)];
      rec.trial = static_cast<std::uint64_t>(i);
      rec.pth_power_coords.resize(A->arity());
      for (std::size_t k = 0; k < A->arity(); ++k) rec.pth_power_coords[k] = rng() % 2 == 0;
      LocalPoint x = random_point(A, rng, N, rec.pth_power_coords);
      rec.lifted = lift_point(x, rep.presentation).lifted;
      StarResult s = star_condition(x, sections);
      rec.star = s.holds;
      rec.determined = true;
      if (!s.holds)
        for (const auto& pb : s.pullbacks)
          if (pb.precision() < N / 2) rec.determined = false;
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (const auto& r : rep.records) {
    if (!r.determined) {
      ++rep.undetermined;
      continue;
    }
    if (r.lifted) ++rep.lifted;
    else ++rep.not_lifted;
    if (!r.agrees()) ++rep.counterexamples;
  }
  if (rep.counterexamples > 0 && rep.sections_generate) rep.status = "fail";
  else if (!rep.sections_generate || !rep.sections_annihilate || !rep.presentation.inseparable) rep.status = "inconclusive";
  else if (rep.lifted == 0 || rep.not_lifted == 0) {
    rep.status = "inconclusive";
    rep.notes.push_back("only one side of the dichotomy was sampled");
  } else {
    rep.status = "pass";
  }
  return rep;
}

}  // namespace charfol::adelic
