// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "corpus.hpp"
#include "tropcrit/tropcrit.hpp"

using namespace tropcrit;

namespace {

Rational q(long n, long d = 1) { return ratio(n, d); }

LaurentTerm term(double c, const Rational& val, RatVector v) { return {PuiseuxSeries::monomial(c, val), std::move(v)}; }

constexpr unsigned kCorpusSeed = 20260101;
constexpr std::size_t kCorpusSize = 200;

const std::vector<LaurentPoly>& corpus_instances() {
  static const std::vector<LaurentPoly> ws = corpus::standard_corpus(kCorpusSize, kCorpusSeed);
  return ws;
}

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double budget_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs < budget_seconds;
  const bool pass = out.ok && in_time;
  if (!pass) ++failures;
  std::ostringstream line;
  line << (pass ? "PASS" : "FAIL") << "  [" << id << "] " << name << "  (" << secs << " s, budget " << budget_seconds
       << " s)";
  if (!in_time) line << "  over time budget";
  if (!out.detail.empty()) line << "  " << out.detail;
  std::cout << line.str() << std::endl;
}

LaurentPoly simplex_potential(std::size_t r) {
  std::vector<LaurentTerm> terms;
  for (std::size_t i = 0; i < r; ++i) {
    RatVector e = zero_vector(r);
    e[i] = 1;
    terms.push_back(term(1, q(0), e));
  }
  terms.push_back(term(1, q(1), RatVector(r, q(-1))));
  return LaurentPoly(r, terms);
}

long lcm_den(const RatVector& v) {
  long l = 1;
  for (const auto& x : v) l = std::lcm(l, x.get_den().get_si());
  return l;
}

Outcome simplex_family() {
  for (std::size_t r = 1; r <= 6; ++r) {
    RatVector d = canonical_point(simplex_potential(r)).d_crit;
    if (d != RatVector(r, ratio(1, static_cast<long>(r + 1)))) return {false, "r = " + std::to_string(r)};
  }
  return {};
}

Outcome anticanonical() {
  std::vector<std::pair<std::string, ToricInstance>> cases = {
      {"P1", {{{q(1)}, {q(-1)}}, {q(1), q(1)}}},
      {"P2", {{{q(1), q(0)}, {q(0), q(1)}, {q(-1), q(-1)}}, {q(1), q(1), q(1)}}},
      {"P1xP1", {{{q(1), q(0)}, {q(-1), q(0)}, {q(0), q(1)}, {q(0), q(-1)}}, {q(1), q(1), q(1), q(1)}}},
      {"Bl P2", {{{q(1), q(0)}, {q(0), q(1)}, {q(-1), q(-1)}, {q(1), q(1)}}, {q(1), q(1), q(1), q(1)}}},
  };
  for (const auto& [name, inst] : cases) {
    ToricReport rep = toric_analyze(inst);
    if (!is_zero(rep.d_crit) || !rep.integrally_balanced) return {false, name};
  }
  return {};
}

// Max of Trop(W) over a 50^r grid centered at d_crit never exceeds max Trop(W),
// and d_crit attains it.
Outcome grid_oracle() {
  for (const auto& w : corpus_instances()) {
    const Rational tau = trop_max(w);
    const RatVector d = canonical_point(w).d_crit;
    if (trop_eval(w, d) != tau) return {false, "d_crit does not attain the maximum: " + w.str()};
    const long den = 4 * lcm_den(d);
    auto s = corpus::scale_instance(w, den);
    std::vector<std::int64_t> origin;
    for (const auto& x : d) origin.push_back(Rational(x * Rational(den)).get_num().get_si());
    std::int64_t best = corpus::grid_max(s, origin, den, -25, 25);
    if (ratio(best, s.scale) != tau) return {false, "grid maximum differs: " + w.str()};
  }
  return {};
}

Outcome tropical_uniqueness() {
  std::mt19937 rng(kCorpusSeed + 4);
  for (const auto& w : corpus_instances()) {
    const RatVector d = canonical_point(w).d_crit;
    if (!check_tropical_critical(w, d).ok) return {false, "certificate failed: " + w.str()};
    for (int k = 0; k < 20; ++k) {
      RatVector delta(w.dim());
      do {
        for (auto& x : delta) x = corpus::random_rational(rng, -2, 2, 7);
      } while (is_zero(delta));
      RatVector p = d + delta;
      if (check_tropical_critical(w, p).ok) return {false, "perturbed point " + to_string(p) + " passes: " + w.str()};
    }
  }
  return {};
}

Outcome residual_order() {
  std::size_t n = 0;
  for (const auto& w : corpus_instances()) {
    CritResult res = solve_critical(w, q(3));
    if (res.trunc_order == 3 && !res.residual_ok())
      return {false, "Val G = " + res.residual_valuation.str() + " for " + w.str()};
    if (res.trunc_order == 3) ++n;
  }
  return {true, std::to_string(n) + " instances at order 3"};
}

Outcome one_dimensional_oracle() {
  std::mt19937 rng(kCorpusSeed + 6);
  double worst = 0.0;
  for (int k = 0; k < 30; ++k) {
    auto inst = corpus::random_1d(rng);
    LaurentPoly w = corpus::to_laurent(inst);
    auto oracle = corpus::oracle_1d(inst, q(3));
    CritResult res = solve_critical(w, q(3));
    if (res.d_crit[0] != oracle.d) return {false, "d_crit differs for " + w.str()};
    PuiseuxSeries x = res.point().coordinate(0, ExtendedRational(q(3)));
    for (std::size_t j = 0; j < oracle.a.size(); ++j) {
      Rational e = oracle.d + ratio(static_cast<long>(j), oracle.lattice);
      double dev = std::abs(x.coeff_at(e) - oracle.a[j]) / (1.0 + std::abs(oracle.a[j]));
      worst = std::max(worst, dev);
    }
  }
  std::ostringstream os;
  os << "max relative deviation " << worst;
  return {worst <= 1e-8, os.str()};
}

Outcome worked_examples() {
  {
    LaurentPoly w(1, {term(1, q(0), {q(1)}), term(1, q(1), {q(-1)})});
    CritResult r = solve_critical(w, q(3));
    if (r.d_crit != RatVector{q(1, 2)} || std::abs(r.d_coeff[0]) > 1e-12 || !r.w_crit[0].is_zero())
      return {false, "x + t/x"};
  }
  {
    LaurentPoly w(1, {term(1, q(0), {q(1)}), term(1, q(0), {q(-1)}), term(1, q(1), {q(2)})});
    CritResult r = solve_critical(w, q(3));
    if (std::abs(r.w_crit[0].coeff_at(q(1)) + 1.0) > 1e-10 || std::abs(r.w_crit[0].coeff_at(q(2)) - 2.0) > 1e-10)
      return {false, "x + 1/x + t x^2: " + r.w_crit[0].str()};
  }
  {
    LaurentPoly w(1, {term(2, q(0), {q(1)}), term(1, q(1), {q(-1)})});
    if (std::abs(solve_critical(w, q(1)).d_coeff[0] + 0.5 * std::log(2.0)) > 1e-10) return {false, "2x + t/x"};
  }
  {
    LaurentPoly w(2, {term(1, q(0), {q(1), q(0)}), term(1, q(1), {q(-1), q(0)}), term(1, q(1), {q(0), q(1)}),
                      term(1, q(1), {q(0), q(-1)})});
    if (canonical_point(w).d_crit != RatVector{q(1, 2), q(0)}) return {false, "two-step recursion"};
  }
  {
    ToricReport rep = toric_analyze({{{q(1)}, {q(-1)}}, {q(0), q(1)}});
    if (rep.d_crit != RatVector{q(1, 2)} || rep.integrally_balanced) return {false, "P1 with D = D_2"};
  }
  {
    DelzantInstance rect{{{{q(1), q(0)}, q(0)}, {{q(-1), q(0)}, q(1)}, {{q(0), q(1)}, q(0)}, {{q(0), q(-1)}, q(3)}}};
    if (delzant_analyze(rect).d_crit != RatVector{q(1, 2), q(3, 2)}) return {false, "rectangle"};
  }
  {
    LaurentPoly w(2, {term(1, q(0), {q(1), q(0)}), term(1, q(1), {q(0), q(1)}), term(1, q(0), {q(-1), q(0)}),
                      term(1, q(1), {q(-1), q(1)}), term(1, q(1), {q(0), q(-1)})});
    Mutation mu{0, {term(1, q(0), {q(0), q(0)}), term(1, q(1), {q(0), q(1)})}};
    MutationReport rep = check_mutation_invariance(w, mu, q(2));
    if (!rep.tropical_ok || !rep.series_ok) return {false, "cluster mutation"};
  }
  return {};
}

Outcome shift_pairs() {
  std::mt19937 rng(kCorpusSeed + 8);
  std::uniform_int_distribution<int> ent(-3, 3);
  double worst = 0.0;
  for (std::size_t k = 0; k < 100; ++k) {
    const LaurentPoly& w = corpus_instances()[k];
    RatVector s(w.dim());
    for (auto& x : s) x = ratio(ent(rng), 2);
    std::vector<LaurentTerm> terms;
    for (const auto& t : w.terms()) terms.push_back({t.coeff.shifted(dot(t.exponent, s)), t.exponent});
    LaurentPoly ws(w.dim(), terms);
    CritResult a = solve_critical(w, q(2));
    CritResult b = solve_critical(ws, q(2));
    if (b.d_crit != a.d_crit - s) return {false, "d_crit not shifted for " + w.str()};
    for (std::size_t j = 0; j < w.dim(); ++j) {
      worst = std::max(worst, std::abs(a.d_coeff[j] - b.d_coeff[j]));
      for (const auto& t : (a.w_crit[j] - b.w_crit[j]).terms()) worst = std::max(worst, std::abs(t.coeff));
    }
  }
  std::ostringstream os;
  os << "max deviation " << worst;
  return {worst <= 1e-8, os.str()};
}

Outcome mutation_cases() {
  std::mt19937 rng(kCorpusSeed + 9);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    auto mc = corpus::random_mutation_case(rng, 2 + static_cast<std::size_t>(k % 2));
    MutationReport rep = check_mutation_invariance(mc.w, mc.mu, q(2));
    worst = std::max(worst, rep.max_deviation);
    if (!rep.tropical_ok) return {false, "tropical transport failed for " + mc.w.str()};
    if (!rep.series_ok) return {false, "series transport failed for " + mc.w.str()};
  }
  std::ostringstream os;
  os << "max deviation " << worst;
  return {true, os.str()};
}

Outcome non_complete_rejected() {
  std::mt19937 rng(kCorpusSeed + 10);
  for (int k = 0; k < 50; ++k) {
    LaurentPoly w = corpus::random_non_complete(rng, 1 + static_cast<std::size_t>(k % 3));
    try {
      (void)solve_critical(w, q(1));
      return {false, "accepted " + w.str()};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotComplete) return {false, std::string("wrong error: ") + e.what()};
    }
  }
  return {};
}

Outcome nondegeneracy() {
  for (const auto& w : corpus_instances()) {
    CritResult res = solve_critical(w, q(1));
    NondegeneracyCertificate cert = check_nondegenerate(w, res, 10, kCorpusSeed);
    if (!cert.ok) return {false, w.str()};
  }
  return {};
}

}  // namespace

int main() {
  criterion(1, "simplex potentials r = 1..6 have d_crit = (1/(r+1), ...)", 1, simplex_family);
  criterion(2, "anticanonical P1, P2, P1xP1, Bl P2 are balanced", 1, anticanonical);
  criterion(3, "max Trop(W) matches the 50^r grid oracle on 200 instances", 60, grid_oracle);
  criterion(4, "tropical critical certificate holds and fails at 20 perturbations", 120, tropical_uniqueness);
  criterion(5, "Val G(p_crit) >= tau + 3 at order 3", 300, residual_order);
  criterion(6, "30 one-variable instances agree with undetermined coefficients to 1e-8", 30, one_dimensional_oracle);
  criterion(7, "worked examples", 30, worked_examples);
  criterion(8, "100 shifted pairs are equivariant", 10, shift_pairs);
  criterion(9, "20 mutation cases transport the critical point", 60, mutation_cases);
  criterion(10, "50 non-complete inputs raise NotComplete", 5, non_complete_rejected);
  criterion(11, "Hessian nondegeneracy on the corpus", 60, nondegeneracy);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
