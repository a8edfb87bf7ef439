#ifndef TROPCRIT_LIFT_HPP
#define TROPCRIT_LIFT_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tropcrit/coeff.hpp"
#include "tropcrit/laurent.hpp"
#include "tropcrit/newton.hpp"
#include "tropcrit/numerics.hpp"
#include "tropcrit/puiseux.hpp"
#include "tropcrit/tropical.hpp"

namespace tropcrit {

/// A vector of series known up to a common absolute horizon, with the
/// per-exponent magnitude of the summands that produced each coefficient.
struct GradientSeries {
  struct Entry {
    Rational exponent;
    Eigen::VectorXd coeff;
    double scale = 0.0;
  };
  std::vector<Entry> entries;  // increasing exponent, nonzero coefficients only
  ExtendedRational horizon = ExtendedRational::infinity();

  bool is_zero() const { return entries.empty(); }
  ExtendedRational val() const { return entries.empty() ? horizon : ExtendedRational(entries.front().exponent); }

  /// Coordinate j as a PuiseuxSeries.
  PuiseuxSeries coordinate(std::size_t j) const {
    std::vector<PuiseuxSeries::Term> terms;
    for (const auto& e : entries) terms.push_back({e.exponent, e.coeff(static_cast<Eigen::Index>(j))});
    return PuiseuxSeries(std::move(terms), horizon);
  }
};

/// The series with every coefficient replaced by its absolute value.
inline PuiseuxSeries abs_series(const PuiseuxSeries& a) {
  std::vector<PuiseuxSeries::Term> ts;
  for (const auto& x : a.terms()) ts.push_back({x.exponent, std::abs(x.coeff)});
  return PuiseuxSeries(std::move(ts), a.trunc());
}

/// Coefficients below this fraction of the largest lower-order summand of G are rounding residue.
inline constexpr double kResidueFloor = 1e-14;

/// sum_i T_i v_i for precomputed T_i = gamma_i p^{v_i}. Coefficients smaller
/// than `cleanup` times the largest contributing summand are treated as zero.
/// When `magnitude` is given, its i-th series bounds the absolute size of the
/// products that formed T_i and enters the per-exponent scale.
inline GradientSeries gradient_from_terms(const LaurentPoly& w, const std::vector<PuiseuxSeries>& t, double cleanup,
                                          const std::vector<PuiseuxSeries>* magnitude = nullptr) {
  const auto r = static_cast<Eigen::Index>(w.dim());
  std::map<Rational, GradientSeries::Entry> acc;
  GradientSeries g;
  for (std::size_t i = 0; i < w.size(); ++i) {
    g.horizon = min(g.horizon, t[i].trunc());
    Eigen::VectorXd v = to_eigen(w.term(i).exponent);
    for (const auto& term : t[i].terms()) {
      auto [it, fresh] = acc.try_emplace(term.exponent);
      if (fresh) {
        it->second.exponent = term.exponent;
        it->second.coeff = Eigen::VectorXd::Zero(r);
      }
      it->second.coeff += term.coeff * v;
      it->second.scale = std::max(it->second.scale, std::abs(term.coeff) * v.norm());
    }
  }
  if (magnitude)
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double vn = to_eigen(w.term(i).exponent).norm();
      for (const auto& term : (*magnitude)[i].terms()) {
        auto it = acc.find(term.exponent);
        if (it != acc.end()) it->second.scale = std::max(it->second.scale, std::abs(term.coeff) * vn);
      }
    }
  // Rounding residue of cancelled products can survive as a lone tiny
  // contribution, so coefficients are also compared with the largest summand
  // at or below their exponent.
  double running = 0.0;
  for (auto& [e, entry] : acc) {
    if (ExtendedRational(e) >= g.horizon) break;
    running = std::max(running, entry.scale);
    const double norm = entry.coeff.stableNorm();
    if (norm <= cleanup * entry.scale || norm <= kResidueFloor * running) continue;
    g.entries.push_back(std::move(entry));
  }
  return g;
}

/// G(p) = sum_i gamma_i p^{v_i} v_i, each T_i computed to the absolute horizon
/// `horizon` (or exactly when p and the coefficients allow it).
inline GradientSeries gradient_G(const LaurentPoly& w, const TorusPoint& p,
                                 const ExtendedRational& horizon = ExtendedRational::infinity(), double cleanup = 1e-10) {
  if (p.dim() != w.dim()) throw Error(ErrorCode::DimensionMismatch, "point and polynomial have different dimensions");
  // exp(<|v|,|w|>) with |w| taken coefficientwise dominates every partial sum
  // formed while expanding exp(<v,w>).
  std::vector<PuiseuxSeries> abs_w;
  for (const auto& c : p.correction) abs_w.push_back(abs_series(c));
  std::vector<PuiseuxSeries> t, mag;
  for (const auto& term : w.terms()) {
    const Rational shift = dot(term.exponent, p.valuation) + term.coeff.val().value();
    ExtendedRational rel = horizon.is_finite() ? ExtendedRational(horizon.value() - shift) : horizon;
    PuiseuxSeries ch = p.eval_character(term.exponent, rel);
    t.push_back(PuiseuxSeries::multiply(term.coeff, ch, horizon));
    RatVector abs_v = term.exponent;
    for (auto& x : abs_v) x = abs(x);
    PuiseuxSeries abs_ch =
        (std::exp(dot(term.exponent, p.log_coeff)) * exp_series(pair(abs_v, abs_w), rel)).shifted(dot(term.exponent, p.valuation));
    mag.push_back(PuiseuxSeries::multiply(abs_series(term.coeff), abs_ch, horizon));
  }
  return gradient_from_terms(w, t, cleanup, &mag);
}

struct LiftOptions {
  double tol = 1e-9;        // membership test in B_{<=eps}
  double cleanup = 1e-10;   // relative threshold for vanishing gradient coefficients
  int max_steps = 10000;
  // When set, every correction u' is perturbed by a random element of
  // B_{<=eps}^perp. The final series must not depend on it.
  std::optional<unsigned> perturb_seed;
  double perturb_scale = 1.0;
  CoeffOptions coeff;
};

struct LiftRecord {
  Rational nu;
  Rational epsilon;
  RealVector correction;  // u'
};

/// Mutable state of the lifting recursion on a fixed instance.
struct LiftState {
  Rational tau;
  LevelData levels;
  std::vector<CoeffProblem> problems;
  std::vector<Eigen::MatrixXd> hessians;  // B_h in quotient coordinates
  RatVector d_crit;
  RealVector d_coeff;
  std::vector<PuiseuxSeries> w;     // exact finite sums
  std::vector<PuiseuxSeries> terms;  // gamma_i p^{v_i} up to `horizon`
  std::vector<PuiseuxSeries> magnitudes;  // coefficientwise bound on the products forming terms[i]
  ExtendedRational horizon;
  GradientSeries gradient;
  std::vector<LiftRecord> log;
  std::optional<std::mt19937> rng;
};

inline Eigen::MatrixXd level_hessian(const LaurentPoly& w, const CoeffProblem& prob, const RealVector& d_coeff) {
  const auto k = prob.basis.cols();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(k, k);
  for (std::size_t j = 0; j < prob.active.size(); ++j) {
    const auto& v = w.term(prob.active[j]).exponent;
    Eigen::VectorXd b = prob.basis.transpose() * to_eigen(v);
    h += prob.weights[j] * std::exp(dot(v, d_coeff)) * b * b.transpose();
  }
  return h;
}

inline LiftState initial_lift_state(const LaurentPoly& w, const RatVector& d_crit, const RealVector& d_coeff,
                                    const ExtendedRational& horizon, const LiftOptions& opt) {
  LiftState s;
  s.d_crit = d_crit;
  s.d_coeff = d_coeff;
  s.levels = level_data(w, d_crit);
  s.tau = s.levels.trop_value;
  s.problems = coeff_problems(w, s.levels);
  for (const auto& prob : s.problems) s.hessians.push_back(level_hessian(w, prob, d_coeff));
  s.w.assign(w.dim(), PuiseuxSeries());
  s.horizon = horizon;
  TorusPoint p(d_coeff, d_crit, s.w);
  for (const auto& term : w.terms()) {
    PuiseuxSeries ch = p.eval_character(term.exponent);
    s.terms.push_back(PuiseuxSeries::multiply(term.coeff, ch, horizon));
    s.magnitudes.push_back(PuiseuxSeries::multiply(abs_series(term.coeff), ch, horizon));
  }
  s.gradient = gradient_from_terms(w, s.terms, opt.cleanup, &s.magnitudes);
  if (opt.perturb_seed) s.rng.emplace(*opt.perturb_seed);
  return s;
}

/// One correction p <- p * exp(t^{nu - eps_h} u'), killing the component of the
/// lowest gradient coefficient outside B_{<eps_h}.
inline void lift_step(const LaurentPoly& w, LiftState& s, const LiftOptions& opt = {}) {
  if (s.gradient.is_zero()) throw Error(ErrorCode::InvalidArgument, "lift step on a critical point");
  const auto& lead = s.gradient.entries.front();
  const Rational nu = lead.exponent - s.tau;
  const double scale = std::max(lead.scale, lead.coeff.stableNorm());

  std::size_t h = 0;
  for (; h < s.problems.size(); ++h)
    if (projection_residual(s.problems[h].upto, lead.coeff) < opt.tol * scale) break;
  if (h == s.problems.size() || !(s.problems[h].epsilon < nu)) {
    throw Error(ErrorCode::StalledProgress,
                "gradient coefficient at t^" + to_string(lead.exponent) + " is not in any admissible level subspace");
  }
  if (!s.log.empty()) {
    const auto& prev = s.log.back();
    if (!(prev.nu < nu) && !(s.problems[h].epsilon < prev.epsilon))
      throw Error(ErrorCode::StalledProgress, "lift made no progress at nu = " + to_string(nu));
  }

  const CoeffProblem& prob = s.problems[h];
  Eigen::VectorXd rhs = -(prob.basis.transpose() * lead.coeff);
  Eigen::VectorXd y = s.hessians[h].ldlt().solve(rhs);
  Eigen::VectorXd u = prob.basis * y;
  if (s.rng && prob.perp.cols() > 0) {
    std::normal_distribution<double> gauss(0.0, opt.perturb_scale);
    Eigen::VectorXd z(prob.perp.cols());
    for (Eigen::Index j = 0; j < z.size(); ++j) z(j) = gauss(*s.rng);
    u += prob.perp * z;
  }

  const Rational shift = nu - prob.epsilon;
  for (std::size_t j = 0; j < w.dim(); ++j) {
    double uj = u(static_cast<Eigen::Index>(j));
    if (uj != 0.0) s.w[j] = s.w[j] + PuiseuxSeries::monomial(uj, shift);
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double lambda = dot(w.term(i).exponent, to_real_vector(u));
    if (lambda == 0.0 || s.terms[i].is_zero()) continue;
    ExtendedRational rel = s.horizon - s.terms[i].terms().front().exponent;
    PuiseuxSeries e = exp_series(PuiseuxSeries::monomial(lambda, shift), rel);
    s.terms[i] = PuiseuxSeries::multiply(s.terms[i], e, s.horizon);
    PuiseuxSeries abs_e = exp_series(PuiseuxSeries::monomial(std::abs(lambda), shift), rel);
    s.magnitudes[i] = PuiseuxSeries::multiply(s.magnitudes[i], abs_e, s.horizon);
  }
  s.gradient = gradient_from_terms(w, s.terms, opt.cleanup, &s.magnitudes);
  s.log.push_back({nu, prob.epsilon, to_real_vector(u)});
}

struct HessianSample {
  RatVector direction;
  ExtendedRational valuation;
  double leading_coeff = 0.0;
  bool ok = false;
};

struct NondegeneracyCertificate {
  bool ok = false;
  std::vector<HessianSample> samples;
  RealVector level_min_eigenvalues;  // smallest eigenvalue of B_h per level with nontrivial quotient
};

struct CritResult {
  RatVector d_crit;
  RealVector d_coeff;
  std::vector<PuiseuxSeries> w_crit;
  Rational tau;
  Rational trunc_order;                // achieved
  ExtendedRational residual_valuation;  // lower bound for Val(G(p_crit)) from the final check
  std::vector<NewtonStage> stages;
  std::vector<LiftRecord> lift_log;
  std::optional<NondegeneracyCertificate> nondegeneracy;

  TorusPoint point() const { return TorusPoint(d_coeff, d_crit, w_crit); }
  bool residual_ok() const { return residual_valuation >= ExtendedRational(tau + trunc_order); }
};

/// Truncated positive critical point of W: canonical point, critical
/// coefficient, then lifting until the gradient vanishes to the horizon
/// tau + order + (largest level enlarging B). The order is clamped when the coefficient
/// series of W are not known far enough.
inline CritResult solve_critical(const LaurentPoly& w, const Rational& trunc_order, const LiftOptions& opt = {}) {
  if (!(trunc_order > 0)) throw Error(ErrorCode::InvalidArgument, "truncation order must be positive");
  CanonicalPoint cp = canonical_point(w);
  CoeffSolution cs = solve_coeff(w, cp.d_crit, opt.coeff);

  LevelData ld = level_data(w, cp.d_crit);
  // Corrections sit at t^{nu - eps} for levels that enlarge B; beyond the last
  // such level B is everything and no correction is ever attributed to it.
  Rational eps_max = 0;
  for (const auto& prob : cs.problems)
    if (prob.basis.cols() > 0) eps_max = prob.epsilon;
  Rational order = trunc_order;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto& gt = w.term(i).coeff.trunc();
    if (gt.is_infinite()) continue;
    // gamma_i is known to relative order trunc - c_i, hence T_i to the
    // absolute horizon trunc - c_i + tau + delta_i.
    Rational reach = gt.value() - w.valuation(i) + ld.deltas[i] - eps_max;
    order = std::min(order, reach);
  }
  if (!(order > 0))
    throw Error(ErrorCode::InvalidArgument, "coefficient series are truncated too early for any positive order");

  const Rational horizon = ld.trop_value + order + eps_max;
  LiftState s = initial_lift_state(w, cp.d_crit, cs.d_coeff, ExtendedRational(horizon), opt);
  int steps = 0;
  while (!s.gradient.is_zero()) {
    if (++steps > opt.max_steps) throw Error(ErrorCode::MaxIterExceeded, "lifting did not terminate");
    lift_step(w, s, opt);
  }

  CritResult res;
  res.d_crit = cp.d_crit;
  res.d_coeff = cs.d_coeff;
  res.tau = ld.trop_value;
  res.trunc_order = order;
  res.stages = cp.stages;
  res.lift_log = s.log;
  for (auto& wj : s.w) res.w_crit.push_back(wj.truncated(ExtendedRational(order)));

  // Independent residual check at the reported point.
  bool exact = std::all_of(s.w.begin(), s.w.end(), [](const PuiseuxSeries& x) { return x.is_zero(); }) &&
               std::all_of(w.terms().begin(), w.terms().end(), [](const LaurentTerm& t) { return t.coeff.is_exact(); });
  ExtendedRational check_h = exact ? ExtendedRational::infinity() : ExtendedRational(res.tau + order);
  TorusPoint p = exact ? TorusPoint(res.d_coeff, res.d_crit, s.w) : res.point();
  GradientSeries g = gradient_G(w, p, check_h, opt.cleanup);
  res.residual_valuation = g.val();
  return res;
}

/// H_p(u,u) = sum_i gamma_i <v_i,u>^2 p^{v_i} has positive leading coefficient
/// for every standard basis vector and `samples` random nonzero integer
/// vectors, and every level Hessian B_h is positive definite.
inline NondegeneracyCertificate check_nondegenerate(const LaurentPoly& w, const CritResult& res, int samples = 10,
                                                    unsigned seed = 0) {
  NondegeneracyCertificate cert;
  cert.ok = true;
  TorusPoint p = res.point();

  std::vector<PuiseuxSeries> chars;
  for (const auto& term : w.terms()) {
    PuiseuxSeries ch = p.eval_character(term.exponent, ExtendedRational(Rational(1)));
    chars.push_back(PuiseuxSeries::multiply(term.coeff, ch, ExtendedRational::infinity()));
  }

  std::vector<RatVector> dirs;
  for (std::size_t j = 0; j < w.dim(); ++j) {
    RatVector e = zero_vector(w.dim());
    e[j] = 1;
    dirs.push_back(e);
  }
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> ent(-5, 5);
  for (int k = 0; k < samples; ++k) {
    RatVector u = zero_vector(w.dim());
    do {
      for (auto& x : u) x = ent(rng);
    } while (is_zero(u));
    dirs.push_back(u);
  }

  for (const auto& u : dirs) {
    PuiseuxSeries hs;
    for (std::size_t i = 0; i < w.size(); ++i) {
      Rational pu = dot(w.term(i).exponent, u);
      if (pu != 0) hs = hs + to_double(pu * pu) * chars[i];
    }
    HessianSample smp{u, hs.val(), hs.is_zero() ? 0.0 : hs.leading_coeff(), false};
    smp.ok = !hs.is_zero() && smp.leading_coeff > 0.0;
    if (!smp.ok) cert.ok = false;
    cert.samples.push_back(std::move(smp));
  }

  LevelData ld = level_data(w, res.d_crit);
  for (const auto& prob : coeff_problems(w, ld)) {
    if (prob.basis.cols() == 0) continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(level_hessian(w, prob, res.d_coeff));
    double m = es.eigenvalues().minCoeff();
    cert.level_min_eigenvalues.push_back(m);
    if (!(m > 0.0)) cert.ok = false;
  }
  return cert;
}

}  // namespace tropcrit

#endif  // TROPCRIT_LIFT_HPP
