// Command-line front end for the tropical critical point solver.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "tropcrit/tropcrit.hpp"

using namespace tropcrit;

namespace {

enum ExitCode { kOk = 0, kParse = 1, kNotComplete = 2, kSolver = 3 };

int log_level() {
  const char* env = std::getenv("TROPCRIT_LOG");
  if (!env) return 0;
  std::string s(env);
  if (s == "debug" || s == "2") return 2;
  if (s == "info" || s == "1") return 1;
  return 0;
}

void log(int level, const std::string& msg) {
  if (log_level() >= level) std::cerr << "[tropcrit] " << msg << "\n";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotComplete:
    case ErrorCode::Unbounded:
      return kNotComplete;
    case ErrorCode::InvariantViolation:
    case ErrorCode::MaxIterExceeded:
    case ErrorCode::StalledProgress:
      return kSolver;
    default:
      return kParse;
  }
}

struct Settings {
  std::string command;
  std::vector<std::string> files;
  std::string order = "3";
  double tol = 1e-9;
  unsigned jobs = 1;
  bool certify = false;
  std::string format = "json";
  unsigned seed = 0;
};

struct Outcome {
  int code = kOk;
  Json report;
  std::string text;
  std::string error;
};

std::string join(const RatVector& v) { return to_string(v); }

std::string series_line(const std::vector<PuiseuxSeries>& xs) {
  std::string out;
  for (std::size_t j = 0; j < xs.size(); ++j) out += (j ? ", " : "") + xs[j].str(10);
  return "(" + out + ")";
}

Outcome run_crit(const Instance& inst, const Settings& s) {
  if (!inst.laurent) throw Error(ErrorCode::ParseError, "crit needs a laurent instance");
  const LaurentPoly& w = *inst.laurent;
  LiftOptions opt;
  opt.tol = inst.options.tol.value_or(s.tol);
  Rational order = inst.options.order.value_or(parse_rational(s.order));
  unsigned seed = inst.options.seed.value_or(s.seed);
  log(1, "solving " + w.str() + " to order " + to_string(order));
  CritResult res = solve_critical(w, order, opt);
  std::optional<Certificates> certs;
  if (s.certify) certs = certify(w, res, 10, seed);
  Outcome out;
  out.report = crit_report(inst, w, res, certs);
  std::ostringstream os;
  os << "W = " << w.str() << "\n"
     << "tau = " << to_string(res.tau) << "\n"
     << "d_crit = " << join(res.d_crit) << "\n"
     << "d_coeff = " << out.report["coefficient"]["d_coeff"].dump() << "\n"
     << "w_crit = " << series_line(res.w_crit) << "\n";
  TorusPoint p = res.point();
  std::vector<PuiseuxSeries> coords;
  for (std::size_t j = 0; j < w.dim(); ++j) coords.push_back(p.coordinate(j, ExtendedRational(res.trunc_order)));
  os << "p_crit = " << series_line(coords) << "\n"
     << "residual valuation >= " << res.residual_valuation.str() << "\n";
  if (certs) {
    os << "certificates: " << (certs->ok() ? "pass" : "FAIL") << "\n";
    if (!certs->ok()) out.code = kSolver;
  }
  out.text = os.str();
  return out;
}

Outcome run_trop(const Instance& inst, const Settings&) {
  if (!inst.laurent) throw Error(ErrorCode::ParseError, "trop needs a laurent instance");
  const LaurentPoly& w = *inst.laurent;
  CanonicalPoint cp = canonical_point(w);
  Outcome out;
  out.report = trop_report(inst, w, cp);
  std::ostringstream os;
  os << "tau = " << to_string(trop_eval(w, cp.d_crit)) << "\n"
     << "d_crit = " << join(cp.d_crit) << "\n";
  for (const auto& q : inst.options.query_points)
    os << "Trop(W)" << join(q) << " = " << to_string(trop_eval(w, q))
       << (polytope_membership(w, q) ? " (in P_W)" : " (outside P_W)") << "\n";
  out.text = os.str();
  return out;
}

Outcome run_toric(const Instance& inst, const Settings&) {
  if (!inst.toric) throw Error(ErrorCode::ParseError, "toric needs a toric instance");
  ToricReport rep = toric_analyze(*inst.toric);
  Outcome out;
  out.report = toric_report(inst, rep);
  std::ostringstream os;
  os << "d_crit = " << join(rep.d_crit) << "\n"
     << "integrally balanced: " << (rep.integrally_balanced ? "yes" : "no") << "\n"
     << "distinguished divisor = " << join(rep.distinguished) << "\n";
  out.text = os.str();
  return out;
}

Outcome run_delzant(const Instance& inst, const Settings& s) {
  if (!inst.delzant) throw Error(ErrorCode::ParseError, "delzant needs a delzant instance");
  Rational order = s.certify ? inst.options.order.value_or(parse_rational(s.order)) : Rational(0);
  DelzantReport rep = delzant_analyze(*inst.delzant, order, 10, inst.options.seed.value_or(s.seed));
  Outcome out;
  out.report = delzant_report(inst, rep);
  std::ostringstream os;
  os << "d_crit = " << join(rep.d_crit) << "\n"
     << "interior: " << (rep.interior ? "yes" : "no") << "\n";
  if (rep.nondegeneracy) os << "nondegenerate: " << (rep.nondegeneracy->ok ? "yes" : "no") << "\n";
  os << "note: the Delzant smoothness condition is not verified\n";
  if (!rep.interior || (rep.nondegeneracy && !rep.nondegeneracy->ok)) out.code = kSolver;
  out.text = os.str();
  return out;
}

Outcome run_mutate(const Instance& inst, const Settings& s) {
  if (!inst.mutation || !inst.laurent) throw Error(ErrorCode::ParseError, "mutate needs a mutation instance");
  Rational order = inst.options.order.value_or(parse_rational(s.order));
  MutationReport rep = check_mutation_invariance(*inst.laurent, *inst.mutation, order);
  Outcome out;
  out.report = mutation_report(inst, rep);
  std::ostringstream os;
  os << "pullback = " << rep.pullback.str() << "\n"
     << "d_crit = " << join(rep.d_crit) << ", d'_crit = " << join(rep.d_crit_pullback) << "\n"
     << "Trop(phi)(d'_crit) = " << join(rep.trop_image) << (rep.tropical_ok ? " (match)" : " (MISMATCH)") << "\n"
     << "series transport to order " << to_string(rep.compared_order) << ": "
     << (rep.series_ok ? "agree" : "DISAGREE") << " (max deviation " << rep.max_deviation << ")\n";
  if (!rep.tropical_ok || !rep.series_ok) out.code = kSolver;
  out.text = os.str();
  return out;
}

Outcome run_file(const std::string& path, const Settings& s) {
  Outcome out;
  try {
    Instance inst = load_instance(path);
    if (s.command == "crit") out = run_crit(inst, s);
    else if (s.command == "trop") out = run_trop(inst, s);
    else if (s.command == "toric") out = run_toric(inst, s);
    else if (s.command == "delzant") out = run_delzant(inst, s);
    else out = run_mutate(inst, s);
  } catch (const Error& e) {
    out.code = exit_code_for(e.code());
    out.error = path + ": " + e.what();
  }
  return out;
}

// ---- selfcheck ----

LaurentTerm mono(double c, const Rational& e, RatVector v) { return {PuiseuxSeries::monomial(c, e), std::move(v)}; }

int run_selfcheck() {
  int failures = 0;
  auto check = [&](const std::string& name, const std::function<bool()>& body) {
    bool ok = false;
    try {
      ok = body();
    } catch (const std::exception& e) {
      std::cout << "  error: " << e.what() << "\n";
    }
    std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
    if (!ok) ++failures;
  };
  auto q = [](long n, long d = 1) { return ratio(n, d); };

  check("x + t/x has p_crit = t^(1/2) exactly", [&] {
    LaurentPoly w(1, {mono(1, q(0), {q(1)}), mono(1, q(1), {q(-1)})});
    CritResult r = solve_critical(w, q(3));
    return r.d_crit == RatVector{q(1, 2)} && r.d_coeff[0] == 0.0 && r.w_crit[0].is_zero() &&
           r.residual_valuation.is_infinite();
  });
  check("x + 1/x + t x^2 has p_crit = 1 - t + 5/2 t^2 + O(t^3)", [&] {
    LaurentPoly w(1, {mono(1, q(0), {q(1)}), mono(1, q(0), {q(-1)}), mono(1, q(1), {q(2)})});
    CritResult r = solve_critical(w, q(3));
    PuiseuxSeries x = r.point().coordinate(0, ExtendedRational(q(3)));
    return r.d_crit == RatVector{q(0)} && std::abs(x.coeff_at(q(0)) - 1) < 1e-10 &&
           std::abs(x.coeff_at(q(1)) + 1) < 1e-10 && std::abs(x.coeff_at(q(2)) - 2.5) < 1e-10 && r.residual_ok();
  });
  check("x + t/x + t y + t/y has p_crit = (t^(1/2), 1)", [&] {
    LaurentPoly w(2, {mono(1, q(0), {q(1), q(0)}), mono(1, q(1), {q(-1), q(0)}), mono(1, q(1), {q(0), q(1)}),
                      mono(1, q(1), {q(0), q(-1)})});
    CritResult r = solve_critical(w, q(2));
    return r.d_crit == RatVector{q(1, 2), q(0)} && r.w_crit[0].is_zero() && r.w_crit[1].is_zero() &&
           r.residual_valuation.is_infinite();
  });
  check("2x + t/x has d_coeff = -ln(2)/2", [&] {
    LaurentPoly w(1, {mono(2, q(0), {q(1)}), mono(1, q(1), {q(-1)})});
    CritResult r = solve_critical(w, q(2));
    return std::abs(r.d_coeff[0] + std::log(2.0) / 2) < 1e-12;
  });
  for (long r = 1; r <= 4; ++r) {
    check("simplex of dimension " + std::to_string(r) + " has the Clifford point", [&] {
      DelzantInstance inst;
      RatVector minus_one(static_cast<std::size_t>(r), q(-1));
      for (long i = 0; i < r; ++i) {
        RatVector e = zero_vector(static_cast<std::size_t>(r));
        e[static_cast<std::size_t>(i)] = 1;
        inst.facets.push_back({e, q(0)});
      }
      inst.facets.push_back({minus_one, q(1)});
      DelzantReport rep = delzant_analyze(inst, q(1));
      return rep.d_crit == RatVector(static_cast<std::size_t>(r), q(1, r + 1)) && rep.interior &&
             rep.nondegeneracy->ok;
    });
  }
  check("anticanonical P^2 is integrally balanced at 0", [&] {
    ToricReport rep = toric_analyze({{{q(1), q(0)}, {q(0), q(1)}, {q(-1), q(-1)}}, {q(1), q(1), q(1)}});
    return rep.d_crit == RatVector{q(0), q(0)} && rep.integrally_balanced;
  });
  check("P^1 with divisor (0,1) is not integrally balanced", [&] {
    ToricReport rep = toric_analyze({{{q(1)}, {q(-1)}}, {q(0), q(1)}});
    return rep.d_crit == RatVector{q(1, 2)} && !rep.integrally_balanced;
  });
  check("x + xy is rejected as not complete", [&] {
    LaurentPoly w(2, {mono(1, q(0), {q(1), q(0)}), mono(1, q(0), {q(1), q(1)})});
    try {
      (void)solve_critical(w, q(1));
    } catch (const Error& e) {
      return e.code() == ErrorCode::NotComplete;
    }
    return false;
  });
  check("cluster mutation transports the critical point", [&] {
    LaurentPoly w(2, {mono(1, q(0), {q(1), q(0)}), mono(1, q(1), {q(0), q(1)}), mono(1, q(0), {q(-1), q(0)}),
                      mono(1, q(1), {q(-1), q(1)}), mono(1, q(1), {q(0), q(-1)})});
    Mutation mu{0, {mono(1, q(0), {q(0), q(0)}), mono(1, q(1), {q(0), q(1)})}};
    MutationReport rep = check_mutation_invariance(w, mu, q(2));
    return rep.tropical_ok && rep.series_ok;
  });
  std::cout << (failures == 0 ? "selfcheck passed" : "selfcheck FAILED") << "\n";
  return failures == 0 ? kOk : kSolver;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Positive critical points of Laurent polynomials over Puiseux series"};
  app.require_subcommand(1);
  Settings s;

  auto add_common = [&](CLI::App* sub, bool needs_files) {
    if (needs_files) sub->add_option("files", s.files, "Instance files (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--order", s.order, "Truncation order p/q")->capture_default_str();
    sub->add_option("--tol", s.tol, "Membership tolerance for level subspaces")->capture_default_str();
    sub->add_option("--jobs", s.jobs, "Parallel jobs across instance files")->check(CLI::PositiveNumber);
    sub->add_flag("--certify", s.certify, "Re-run all self-checks and embed the certificates");
    sub->add_option("--format", s.format, "Report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    sub->add_option("--seed", s.seed, "Seed for randomized certificates")->capture_default_str();
  };
  add_common(app.add_subcommand("crit", "Truncated positive critical point"), true);
  add_common(app.add_subcommand("trop", "Tropical data: Trop(W) maximum, d_crit, membership queries"), true);
  add_common(app.add_subcommand("toric", "Toric divisor analysis"), true);
  add_common(app.add_subcommand("delzant", "Canonical fiber point of a moment polytope"), true);
  add_common(app.add_subcommand("mutate", "Mutation invariance check"), true);
  add_common(app.add_subcommand("selfcheck", "Built-in worked examples"), false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }
  s.command = app.get_subcommands().front()->get_name();
  try {
    (void)parse_rational(s.order);
  } catch (const Error& e) {
    std::cerr << "invalid --order: " << e.what() << "\n";
    return kParse;
  }
  if (s.command == "selfcheck") return run_selfcheck();

  std::vector<Outcome> outcomes(s.files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < s.files.size(); i = next++) outcomes[i] = run_file(s.files[i], s);
  };
  const unsigned n = std::max(1u, std::min<unsigned>(s.jobs, static_cast<unsigned>(s.files.size())));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int code = kOk;
  Json all = Json::array();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const Outcome& o = outcomes[i];
    if (!o.error.empty()) std::cerr << "error: " << o.error << "\n";
    if (code == kOk) code = o.code;
    if (s.format == "text") {
      if (o.error.empty()) std::cout << (s.files.size() > 1 ? "== " + s.files[i] + "\n" : "") << o.text;
    } else if (o.error.empty()) {
      all.push_back(o.report);
    } else {
      all.push_back({{"file", s.files[i]}, {"error", o.error}});
    }
  }
  if (s.format == "json") std::cout << (all.size() == 1 ? all.front() : all).dump(2) << "\n";
  return code;
}
