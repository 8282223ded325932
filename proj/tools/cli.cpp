#include "charfol/cli.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <regex>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "charfol/adelic.hpp"
#include "charfol/descent.hpp"
#include "charfol/differentials.hpp"
#include "charfol/error.hpp"
#include "charfol/foliation.hpp"
#include "charfol/parser.hpp"
#include "charfol/raynaud.hpp"
#include "charfol/tango.hpp"

namespace charfol::cli {

using algebra::KChart;
using algebra::KPoly;
using algebra::RatFunc;
using nlohmann::ordered_json;
using report::RunReport;
using report::Status;
using KDer = foliation::Derivation<RatFunc>;
using KForm = differentials::OneForm<RatFunc>;

namespace {

std::int64_t default_deg_N(const Options& o) { return static_cast<std::int64_t>(o.d) * o.p - 3; }

ordered_json base_parameters(const Options& o) {
  ordered_json j;
  j["p"] = o.p;
  j["d"] = o.d;
  j["q"] = o.q.value_or(o.p);
  return j;
}

gf::Field field_of(const Options& o) {
  gf::Field f = gf::Field::of_order(o.q.value_or(o.p));
  if (f.characteristic() != o.p)
    throw Error(ErrorCode::InvalidParameters, "q = " + std::to_string(f.order()) + " is not a power of p = " +
                                                  std::to_string(o.p));
  return f;
}

std::string error_name(const Error& e) { return std::string(to_string(e.code())); }

void add_error(RunReport& r, const std::string& name, const Error& e) {
  r.add(name, Status::Fail, ordered_json{{"error", error_name(e)}}, e.what());
}

struct LocalSetup {
  std::shared_ptr<const KChart> A;
  KDer D;
  std::vector<KForm> sections;
};

// "raynaud-local": z^d - y^p - x with D = ker(dz); "a2": the plane with d/dy.
LocalSetup local_setup(const Options& o) {
  const gf::Field f = field_of(o);
  if (o.chart == "a2") {
    auto vars = algebra::make_vars({"x", "y"});
    auto A = std::make_shared<const KChart>(KChart::affine_space(f, vars));
    return {A, KDer::partial(A, 1), {differentials::d(A, A->var("x"))}};
  }
  if (o.chart != "raynaud-local") throw Error(ErrorCode::InvalidParameters, "unknown chart '" + o.chart + "'");
  if (o.d < 2) throw Error(ErrorCode::InvalidParameters, "d must be at least 2");
  auto vars = algebra::make_vars({"x", "y", "z"});
  const std::string rel = "z^" + std::to_string(o.d) + " - y^" + std::to_string(o.p) + " - x";
  auto A = std::make_shared<const KChart>(f, vars, std::vector<KPoly>{algebra::parse_k(rel, vars, f)});
  auto dz = differentials::d(A, A->var("z"));
  return {A, foliation::kernel_of_form(dz), {dz}};
}

KPoly random_poly(std::mt19937_64& rng, const KChart& A, int terms, std::uint32_t max_deg) {
  const gf::Field& f = A.field();
  KPoly r(f, A.vars());
  for (int i = 0; i < terms; ++i) {
    algebra::Monomial m(A.arity());
    for (auto& e : m) e = static_cast<std::uint32_t>(rng() % (max_deg + 1));
    r.add_term(m, RatFunc::constant(f.from_index(static_cast<std::uint32_t>(rng() % f.order()))));
  }
  return A.normal_form(r);
}

// Derivations preserving the chart relation.
KDer random_derivation(std::mt19937_64& rng, const Options& o, const std::shared_ptr<const KChart>& A) {
  auto g = random_poly(rng, *A, 3, 2);
  auto h = random_poly(rng, *A, 3, 2);
  if (o.chart == "a2") return KDer(A, {g, h});
  auto z = A->var("z");
  auto dzd = z.pow(o.d - 1) * A->constant(RatFunc::from_int(A->field(), o.d));
  return KDer(A, {dzd * h, g, h});
}

std::vector<std::string> strings(const std::vector<KPoly>& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(x.to_string());
  return out;
}

template <class F>
RunReport timed(const std::string& command, ordered_json params, F&& body) {
  const auto start = std::chrono::steady_clock::now();
  RunReport r;
  r.command = command;
  r.parameters = std::move(params);
  try {
    body(r);
  } catch (const Error& e) {
    add_error(r, "error", e);
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

RunReport cmd_tango_verify(const Options& o) {
  auto params = base_parameters(o);
  if (o.precision) params["precision"] = *o.precision;
  return timed("tango-verify", params, [&](RunReport& r) {
    tango::PlanarTangoCurve C(o.p, o.d, o.q);
    auto t = tango::verify_tango_structure(C, o.precision);
    r.add("smooth plane curve", t.smooth.all(),
          {{"dfdy", t.smooth.dfdy}, {"dFdw_at_Q", t.smooth.dFdw_at_Q}, {"boundary", t.smooth.boundary}});
    r.add("dx exact (Cartier)", t.dx_exact);
    r.add("ord_Q(dx) = dp(dp-3)", t.ord_matches,
          {{"ord_Q", t.ord_Q}, {"formula", t.ord_formula}, {"precision", t.divisor.precision},
           {"w", t.divisor.w_expansion}});
    r.add("dx generates on the affine chart", t.divisor.affine_generator, {{"eliminated", t.divisor.eliminated}});
    r.add("div(dx) = p deg L", t.divisor_is_pL, {{"deg_L", t.deg_L}});
    r.add("deg L = d deg N", t.index_d, {{"deg_N", t.deg_N}});
    r.add("p deg L = 2g-2", t.tango_equality, {{"g", t.g}, {"p_deg_L", static_cast<std::int64_t>(o.p) * t.deg_L}});
    try {
      auto g = tango::genus(C, t.divisor);
      r.add("genus cross-check", true, {{"plane", g}, {"series", t.ord_Q / 2 + 1}});
    } catch (const Error& e) {
      add_error(r, "genus cross-check", e);
    }
    r.checks.back().values["d_divides_p_plus_1"] = t.d_divides_p_plus_1;
  });
}

RunReport cmd_raynaud_ledger(const Options& o) {
  auto params = base_parameters(o);
  params.erase("q");
  params["degN"] = o.deg_N.value_or(default_deg_N(o));
  return timed("raynaud-ledger", params, [&](RunReport& r) {
    auto P = raynaud::make_params(o.p, o.d, o.deg_N.value_or(default_deg_N(o)));
    auto put = [&](const std::string& prefix, const raynaud::Ledger& L) {
      for (const auto& c : L.checks) r.add(prefix + "/" + c.name, c.pass, {{"lhs", c.lhs}, {"rhs", c.rhs}});
      for (const auto& a : L.assumptions) r.add(prefix + "/" + a, Status::Asserted);
    };
    put("ruled", raynaud::verify_ruled_formulas(P));
    try {
      put("raynaud", raynaud::verify_raynaud_formulas(P));
    } catch (const Error& e) {
      add_error(r, "raynaud/d | p+1", e);
      return;
    }
    try {
      auto a = raynaud::ample_class_A(P);
      r.add("ample/A^2 > 0", a.A2 > 0, {{"A", a.A.to_string()}, {"A^2", raynaud::to_string(a.A2)}});
      r.add("ample/A.F > 0", a.AF > 0, {{"value", raynaud::to_string(a.AF)}});
      r.add("ample/A.T > 0", a.AT > 0, {{"value", raynaud::to_string(a.AT)}});
      r.add("ample/A.Sigma > 0", a.ASigma > 0, {{"value", raynaud::to_string(a.ASigma)}});
      r.add("ample/Nakai-Moishezon on curves beyond the test set", Status::Asserted, {{"test_set", a.test_set}},
            a.caveat);
    } catch (const Error& e) {
      add_error(r, "ample", e);
    }
    put("generation", raynaud::global_generation_numerics(P));
  });
}

RunReport cmd_foliation(const Options& o) {
  auto params = base_parameters(o);
  params["chart"] = o.chart;
  params["trials"] = o.trials;
  params["seed"] = o.seed;
  return timed("foliation", params, [&](RunReport& r) {
    auto s = local_setup(o);
    r.add("chart", Status::Pass, {{"chart", s.A->to_string()}, {"D", s.D.to_string()}});
    const auto& w = s.sections.front();
    auto pc = foliation::pairing_checks(w, s.D);
    r.add("omega(D) = 0", pc.omega_D.is_zero(), {{"form", w.to_string()}, {"value", pc.omega_D.to_string()}});
    r.add("omega(D^[p]) = 0", pc.omega_Dp.is_zero(), {{"value", pc.omega_Dp.to_string()}});
    r.add("d omega(D, D^[p]) = 0", pc.d_omega.is_zero(), {{"value", pc.d_omega.to_string()}});
    auto closed = foliation::is_p_closed_rank1(s.D);
    ordered_json cv{{"closed", closed.closed}};
    if (closed.h) cv["h"] = closed.h->to_string();
    r.add("p-closed", closed.closed, cv);

    std::mt19937_64 rng(o.seed);
    const std::uint32_t p = s.A->field().characteristic();
    std::uint64_t agree = 0, bracket_ok = 0;
    const std::uint64_t samples = std::max<std::uint64_t>(o.trials, 1);
    for (std::uint64_t i = 0; i < samples; ++i) {
      auto E = random_derivation(rng, o, s.A);
      auto Ep = foliation::p_power(E);
      bool ok = true;
      for (std::size_t k = 0; k < s.A->arity(); ++k)
        if (!(Ep.value(k) == E.iterate(s.A->var(k), p))) ok = false;
      agree += ok;
      // [fD, gD] = (f D(g) - g D(f)) D
      auto f1 = random_poly(rng, *s.A, 2, 2), f2 = random_poly(rng, *s.A, 2, 2);
      auto lhs = foliation::bracket(s.D * f1, s.D * f2);
      auto rhs = s.D * s.A->normal_form(f1 * s.D.apply(f2) - f2 * s.D.apply(f1));
      bracket_ok += lhs == rhs;
    }
    r.add("D^[p] equals the p-fold iterate on generators", agree == samples,
          {{"samples", samples}, {"agree", agree}});
    r.add("closed under brackets", bracket_ok == samples, {{"samples", samples}, {"closed", bracket_ok}});
  });
}

RunReport cmd_quotient(const Options& o) {
  auto params = base_parameters(o);
  params["chart"] = o.chart;
  return timed("quotient", params, [&](RunReport& r) {
    auto s = local_setup(o);
    auto fact = foliation::frobenius_factorization_check(s.D);
    const auto& Q = fact.quotient;
    r.add("A^p in A^D", fact.frobenius_factors,
          {{"generators", strings(Q.generators)}, {"names", *Q.names}, {"bound", fact.bound}});
    r.add("A^D is proper", fact.proper,
          {{"witness", fact.witness ? ordered_json(Q.generators[*fact.witness].to_string()) : ordered_json()}});
    bool constant = true;
    for (const auto& g : Q.generators)
      if (!s.D.apply(g).is_zero()) constant = false;
    r.add("generators are D-constant", constant && fact.generators_constant);
    bool certified = Q.certificates.size() == s.A->arity();
    for (std::size_t i = 0; certified && i < Q.certificates.size(); ++i) {
      auto back = s.A->normal_form(Q.certificates[i].compose(Q.generators));
      if (!(back == s.A->normal_form(s.A->var(i).pow(s.A->field().characteristic())))) certified = false;
    }
    r.add("certificates recompose to x_i^p", certified,
          {{"certificates", strings(Q.certificates)}, {"relations", strings(Q.relations)}});
    auto model = descent::descend_algebra(s.A);
    auto phi = adelic::build_presentation(model, foliation::frobenius_factorization_check(
                                                     descent::descend_derivation(s.D, model)));
    r.add("presentation is purely inseparable", phi.inseparable, {{"map", phi.to_string()}});
  });
}

RunReport cmd_descend(const Options& o) {
  auto params = base_parameters(o);
  params.erase("d");
  params["poly"] = o.poly;
  return timed("descend", params, [&](RunReport& r) {
    if (o.poly.empty()) throw Error(ErrorCode::InvalidParameters, "--poly is required");
    const gf::Field f = field_of(o);
    std::set<std::string> names;
    static const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");
    for (auto it = std::sregex_iterator(o.poly.begin(), o.poly.end(), ident); it != std::sregex_iterator(); ++it)
      if (it->str() != "t") names.insert(it->str());
    if (names.empty()) throw Error(ErrorCode::InvalidParameters, "polynomial has no variables besides t");
    auto vars = algebra::make_vars({names.begin(), names.end()});
    auto A = std::make_shared<const KChart>(f, vars, std::vector<KPoly>{algebra::parse_k(o.poly, vars, f)});
    try {
      auto model = descent::descend_algebra(A);
      r.add("descends to K^p", true, model.to_json());
      r.add("model verified by both root paths", descent::verify_model(model));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoDescent) throw;
      add_error(r, "descends to K^p", e);
    }
  });
}

RunReport cmd_star_check(const Options& o) {
  auto params = base_parameters(o);
  params["chart"] = o.chart;
  params["trials"] = o.trials;
  params["seed"] = o.seed;
  params["precision"] = o.precision.value_or(adelic::kDefaultPrecision);
  return timed("star-check", params, [&](RunReport& r) {
    auto s = local_setup(o);
    const int N = o.precision.value_or(adelic::kDefaultPrecision);
    std::mt19937_64 rng(o.seed);
    std::uint64_t holds = 0, fails = 0, undetermined = 0;
    auto points = ordered_json::array();
    for (std::uint64_t i = 0; i < o.trials; ++i) {
      auto x = adelic::random_point(s.A, rng, N);
      auto st = adelic::star_condition(x, s.sections);
      bool determined = st.holds;
      if (!st.holds) {
        determined = true;
        for (const auto& pb : st.pullbacks)
          if (pb.precision() < N / 2) determined = false;
      }
      if (!determined) ++undetermined;
      else if (st.holds) ++holds;
      else ++fails;
      ordered_json e{{"trial", i}, {"star", st.holds}};
      if (st.witness) e["witness"] = s.sections[*st.witness].to_string();
      points.push_back(std::move(e));
    }
    r.add("pullbacks evaluated", undetermined == 0 ? Status::Pass : Status::Inconclusive,
          {{"star_holds", holds}, {"star_fails", fails}, {"undetermined", undetermined}});
    r.checks.back().values["points"] = std::move(points);
  });
}

RunReport cmd_equiv_check(const Options& o) {
  auto params = base_parameters(o);
  params["chart"] = o.chart;
  params["trials"] = o.trials;
  params["seed"] = o.seed;
  params["precision"] = o.precision.value_or(adelic::kDefaultPrecision);
  return timed("equiv-check", params, [&](RunReport& r) {
    auto s = local_setup(o);
    adelic::EquivalenceOptions eo;
    eo.trials = o.trials;
    eo.seed = o.seed;
    eo.precision = o.precision.value_or(adelic::kDefaultPrecision);
    eo.jobs = o.jobs;
    auto rep = adelic::verify_equivalence(s.A, s.D, s.sections, eo);
    r.add("presentation is purely inseparable", rep.presentation.inseparable,
          {{"map", rep.presentation.to_string()}});
    r.add("sections annihilate D", rep.sections_annihilate);
    r.add("sections generate the kernel sheaf", rep.sections_generate ? Status::Pass : Status::Inconclusive);
    const std::uint64_t n = rep.lifted + rep.not_lifted;
    const bool balanced = n > 0 && 10 * rep.lifted >= 3 * n && 10 * rep.not_lifted >= 3 * n;
    r.add("both sides sampled (>= 30% each)", balanced ? Status::Pass : Status::Inconclusive,
          {{"lifted", rep.lifted}, {"not_lifted", rep.not_lifted}, {"undetermined", rep.undetermined}});
    Status cx = rep.counterexamples == 0 ? Status::Pass : (rep.sections_generate ? Status::Fail : Status::Inconclusive);
    r.add("lift fails iff (*) holds", cx, {{"counterexamples", rep.counterexamples}, {"trials", o.trials}});
    for (const auto& note : rep.notes) r.notes.push_back(note);
  });
}

RunReport cmd_pipeline(const Options& o) {
  auto params = base_parameters(o);
  params["degN"] = o.deg_N.value_or(default_deg_N(o));
  params["trials"] = o.trials;
  params["seed"] = o.seed;
  params["precision"] = o.precision.value_or(adelic::kDefaultPrecision);
  return timed("pipeline", params, [&](RunReport& r) {
    const bool prime = [&] {
      if (o.p < 2) return false;
      for (std::uint32_t k = 2; k * k <= o.p; ++k)
        if (o.p % k == 0) return false;
      return true;
    }();
    const bool ok = prime && o.p >= 3 && o.d >= 2 && (o.p + 1) % o.d == 0;
    r.add("hypotheses: p >= 3 prime, d >= 2, d | p+1", ok,
          {{"p_prime", prime}, {"d_divides_p_plus_1", o.d != 0 && (o.p + 1) % o.d == 0}});
    if (!ok) {
      r.notes.push_back("rejected before any computation");
      return;
    }
    Options local = o;
    local.chart = "raynaud-local";
    Options ledger = o;
    ledger.q.reset();

    auto t = cmd_tango_verify(o);
    r.merge(t, "tango");
    r.merge(cmd_raynaud_ledger(ledger), "raynaud");
    const std::int64_t degN = o.deg_N.value_or(default_deg_N(o));
    const std::int64_t tango_degN = [&] {
      for (const auto& c : t.checks)
        if (c.name == "deg L = d deg N" && c.values.contains("deg_N")) return c.values["deg_N"].get<std::int64_t>();
      return std::int64_t{-1};
    }();
    r.add("deg N of the Tango curve matches the ledger", tango_degN == degN, {{"tango", tango_degN}, {"ledger", degN}});

    Options fol = local;
    fol.trials = std::max<std::uint64_t>(o.trials, 200);
    r.merge(cmd_foliation(fol), "foliation");
    r.merge(cmd_quotient(local), "quotient");

    try {
      auto s = local_setup(local);
      auto model = descent::descend_algebra(s.A);
      r.add("descent/chart descends", descent::verify_model(model), model.to_json());
      auto Dt = descent::descend_derivation(s.D, model);
      r.add("descent/derivation descends", true, {{"D", Dt.to_string()}});
    } catch (const Error& e) {
      add_error(r, "descent", e);
    }
    auto eq = cmd_equiv_check(local);
    r.merge(eq, "equiv");

    r.add("X is smooth and A descends with X", Status::Asserted);
    r.add("H^0(X, B^1 (x) A^-1) != 0 globally (checked on the local chart)", Status::Asserted);
    r.add("A^p globally generated and separates points (numerics only)", Status::Asserted);

    auto value = [&](const std::string& check, const std::string& key) -> ordered_json {
      for (const auto& c : r.checks)
        if (c.name == check && c.values.contains(key)) return c.values[key];
      return "?";
    };
    const std::int64_t KF = static_cast<std::int64_t>(o.d) * o.p - o.p - o.d - 1;
    std::ostringstream os;
    os << "For (p, d) = (" << o.p << ", " << o.d << ") with deg N = " << degN << ": g(C) = "
       << value("tango/p deg L = 2g-2", "g").dump() << ", ord_Q(dx) = " << value("tango/ord_Q(dx) = dp(dp-3)", "ord_Q").dump()
       << ", fiber genus " << KF / 2 + 1 << " (deg K_F = "
       << value("raynaud/raynaud/deg K_F = (K_X+F).F = dp-p-d-1", "lhs").get<std::string>() << ")"
       << ", A^2 = " << value("raynaud/ample/A^2 > 0", "A^2").get<std::string>() << ", "
       << value("equiv/lift fails iff (*) holds", "counterexamples").dump() << " equivalence counterexamples in "
       << o.trials << " trials. Hence, subject to the asserted items: if (x_v) in X(A_K)^{Br(X)[p]} does not lift"
       << " to an adelic point of Y = X~/ker(A^p), then (x_v) in X(K).";
    r.conclusion = os.str();
  });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"charfol: Tango curves, Raynaud surfaces and p-closed foliations over F_q(t)"};
  app.require_subcommand(1);
  Options o;
  bool json = false, verbose = false;
  std::int64_t degN = 0;
  std::uint32_t q = 0;
  int precision = 0;

  using Cmd = std::function<RunReport(const Options&)>;
  std::vector<std::pair<CLI::App*, Cmd>> cmds;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--p", o.p, "characteristic (prime)")->check(CLI::PositiveNumber);
    sub->add_option("--d", o.d, "index d")->check(CLI::PositiveNumber);
    sub->add_option("--degN", degN, "deg N (default dp-3)");
    sub->add_option("--q", q, "order of the constant field (power of p)");
    sub->add_option("--precision", precision, "series precision")->check(CLI::PositiveNumber);
    sub->add_option("--trials", o.trials, "random trials");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--json", json, "print the JSON report");
    sub->add_flag("--verbose", verbose, "print check values in the table");
  };
  auto add = [&](const char* name, const char* help, Cmd fn) {
    auto* sub = app.add_subcommand(name, help);
    common(sub);
    cmds.emplace_back(sub, std::move(fn));
    return sub;
  };
  add("tango-verify", "smoothness, ord_Q(dx) and the Tango equality for the plane curve", cmd_tango_verify);
  add("raynaud-ledger", "intersection-number ledger of the ruled and Raynaud surfaces", cmd_raynaud_ledger);
  add("foliation", "kernel of dz on the local chart: pairings and p-closedness", cmd_foliation)
      ->add_option("--chart", o.chart, "raynaud-local or a2");
  add("quotient", "ring of constants and Frobenius factorization", cmd_quotient)
      ->add_option("--chart", o.chart, "raynaud-local or a2");
  add("descend", "descent of a one-relation chart to K^p", cmd_descend)
      ->add_option("--poly", o.poly, "relation in x, y, ... with coefficients in F_q(t)")
      ->required();
  add("star-check", "condition (*) at random local points", cmd_star_check)
      ->add_option("--chart", o.chart, "raynaud-local or a2");
  add("equiv-check", "lift through the quotient versus condition (*)", cmd_equiv_check)
      ->add_option("--chart", o.chart, "raynaud-local or a2");
  add("pipeline", "the whole chain of hypotheses for (p, d)", cmd_pipeline);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 64;
  }
  if (degN != 0) o.deg_N = degN;
  if (q != 0) o.q = q;
  if (precision != 0) o.precision = precision;
  if (o.chart != "raynaud-local" && o.chart != "a2") {
    err << "error: --chart must be raynaud-local or a2\n";
    return 64;
  }

  for (auto& [sub, fn] : cmds) {
    if (!sub->parsed()) continue;
    RunReport r = fn(o);
    if (json) out << r.to_json().dump(2) << "\n";
    else out << r.table(verbose);
    return report::exit_code(r.overall());
  }
  return 64;
}

}  // namespace charfol::cli
