#ifndef TROPCRIT_COEFF_HPP
#define TROPCRIT_COEFF_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

#include "tropcrit/laurent.hpp"
#include "tropcrit/numerics.hpp"
#include "tropcrit/polytope.hpp"
#include "tropcrit/tropical.hpp"

namespace tropcrit {

/// The quotient problem attached to one delta-level of d_crit. `basis` has
/// orthonormal columns spanning B_{<eps}^perp inside B_{<=eps}, which is our
/// model of B_{<eps}^perp / B_{<=eps}^perp. `perp` spans B_{<=eps}^perp.
struct CoeffProblem {
  Rational epsilon;
  std::vector<std::size_t> active;
  Eigen::MatrixXd basis;
  Eigen::MatrixXd perp;
  Eigen::MatrixXd upto;  // orthonormal basis of B_{<=eps}
  RealVector weights;     // Coeff(gamma_i) for i in active
};

inline std::vector<CoeffProblem> coeff_problems(const LaurentPoly& w, const LevelData& ld) {
  std::vector<CoeffProblem> out;
  for (const auto& lvl : ld.levels) {
    CoeffProblem p;
    p.epsilon = lvl.epsilon;
    p.active = lvl.active;
    p.basis = orthonormal_columns(complement_within(lvl.below, lvl.upto), w.dim());
    p.perp = orthonormal_columns(lvl.upto.annihilator(), w.dim());
    p.upto = orthonormal_columns(lvl.upto.basis(), w.dim());
    for (auto i : lvl.active) p.weights.push_back(w.term(i).coeff.leading_coeff());
    out.push_back(std::move(p));
  }
  return out;
}

struct CoeffOptions {
  double tol = 1e-12;
  int max_iter = 200;
  // Starting offsets per level, in the level's quotient coordinates. Missing
  // entries start at zero.
  std::vector<RealVector> initial;
};

struct CoeffSolution {
  RealVector d_coeff;
  std::vector<CoeffProblem> problems;
  std::vector<int> iterations;
};

namespace detail {

// log sum_i a_i exp(<b_i, y>), written as log-sum-exp over s_i = log a_i + <b_i,y>.
struct LogSumExp {
  std::vector<double> log_a;
  std::vector<Eigen::VectorXd> b;

  double value(const Eigen::VectorXd& y, std::vector<double>* probs = nullptr) const {
    std::vector<double> s(b.size());
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < b.size(); ++i) {
      s[i] = log_a[i] + b[i].dot(y);
      m = std::max(m, s[i]);
    }
    double z = 0.0;
    for (auto& x : s) z += (x = std::exp(x - m));
    if (probs) {
      probs->resize(s.size());
      for (std::size_t i = 0; i < s.size(); ++i) (*probs)[i] = s[i] / z;
    }
    return m + std::log(z);
  }
};

}  // namespace detail

/// Nested minimization for the critical coefficient. Levels are processed in
/// increasing order; at each one the strictly convex log-sum-exp of the level
/// is minimized over the quotient by damped Newton, and d moves by the
/// minimizer (its representative orthogonal to B_{<=eps}^perp).
inline CoeffSolution solve_coeff(const LaurentPoly& w, const RatVector& d_crit, const CoeffOptions& opt = {}) {
  LevelData ld = level_data(w, d_crit);
  CoeffSolution sol;
  sol.problems = coeff_problems(w, ld);
  Eigen::VectorXd d = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(w.dim()));

  for (std::size_t h = 0; h < sol.problems.size(); ++h) {
    const CoeffProblem& prob = sol.problems[h];
    const auto k = prob.basis.cols();
    if (k == 0) {
      sol.iterations.push_back(0);
      continue;
    }
    RatMatrix active_pts;
    for (auto i : prob.active) active_pts.push_back(w.term(i).exponent);
    if (!strict_combination_in(active_pts, ld.levels[h].below).strict())
      throw Error(ErrorCode::InvariantViolation,
                  "projected exponent polytope at level " + to_string(prob.epsilon) + " has 0 on its boundary");

    detail::LogSumExp f;
    double bscale = 0.0;
    for (std::size_t j = 0; j < prob.active.size(); ++j) {
      Eigen::VectorXd v = to_eigen(w.term(prob.active[j]).exponent);
      f.log_a.push_back(std::log(prob.weights[j]) + v.dot(d));
      f.b.push_back(prob.basis.transpose() * v);
      bscale = std::max(bscale, f.b.back().norm());
    }

    Eigen::VectorXd y = Eigen::VectorXd::Zero(k);
    if (h < opt.initial.size() && !opt.initial[h].empty()) {
      if (static_cast<Eigen::Index>(opt.initial[h].size()) != k)
        throw Error(ErrorCode::DimensionMismatch, "initial point has wrong dimension for its level");
      y = to_eigen(opt.initial[h]);
    }

    std::vector<double> pr;
    double fy = f.value(y, &pr);
    int it = 0;
    for (;; ++it) {
      Eigen::VectorXd g = Eigen::VectorXd::Zero(k);
      for (std::size_t i = 0; i < pr.size(); ++i) g += pr[i] * f.b[i];
      if (g.norm() < opt.tol * bscale) break;
      if (it >= opt.max_iter) {
        std::ostringstream os;
        os << "coefficient Newton iteration did not converge at level " << to_string(prob.epsilon)
           << "; best iterate y = [" << y.transpose() << "], |grad| = " << g.norm();
        throw Error(ErrorCode::MaxIterExceeded, os.str());
      }
      Eigen::MatrixXd hess = -g * g.transpose();
      for (std::size_t i = 0; i < pr.size(); ++i) hess += pr[i] * f.b[i] * f.b[i].transpose();
      Eigen::VectorXd step = -hess.ldlt().solve(g);
      // Inside the quadratic convergence region the objective is flat to
      // rounding, so the full step is taken without a line search.
      if (-g.dot(step) < 1e-8) {
        y += step;
        fy = f.value(y, &pr);
        continue;
      }
      double alpha = 1.0;
      std::vector<double> pr_next;
      double f_next = fy;
      Eigen::VectorXd y_next = y;
      while (alpha > 1e-20) {
        y_next = y + alpha * step;
        f_next = f.value(y_next, &pr_next);
        if (f_next <= fy) break;
        alpha *= 0.5;
      }
      if (!(f_next <= fy)) break;  // no further decrease possible in floating point
      y = y_next;
      fy = f_next;
      pr = std::move(pr_next);
    }
    sol.iterations.push_back(it);
    d += prob.basis * y;
  }
  sol.d_coeff = to_real_vector(d);
  return sol;
}

}  // namespace tropcrit

#endif  // TROPCRIT_COEFF_HPP
