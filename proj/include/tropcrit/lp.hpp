#ifndef TROPCRIT_LP_HPP
#define TROPCRIT_LP_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "tropcrit/error.hpp"
#include "tropcrit/linalg.hpp"
#include "tropcrit/rational.hpp"

namespace tropcrit {

enum class LPStatus { Optimal, Infeasible, Unbounded };

enum class Sense { Equal, GreaterEqual, LessEqual };

struct LinearConstraint {
  RatVector coeffs;
  Sense sense;
  Rational rhs;
};

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  Rational optimum;
  RatVector witness;  // variable values at the optimum

  bool optimal() const noexcept { return status == LPStatus::Optimal; }
};

/// A linear program over exact rationals. Variables are nonnegative unless
/// marked free.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<bool> free_var;
  RatVector objective;
  bool maximize = false;
  std::vector<LinearConstraint> constraints;

  explicit LinearProgram(std::size_t n = 0) : num_vars(n), free_var(n, false), objective(n, Rational(0)) {}

  void add(RatVector coeffs, Sense sense, Rational rhs) {
    if (coeffs.size() != num_vars) throw Error(ErrorCode::DimensionMismatch, "constraint has wrong width");
    constraints.push_back(LinearConstraint{std::move(coeffs), sense, std::move(rhs)});
  }

  /// True iff x satisfies every constraint and sign restriction exactly.
  bool feasible(const RatVector& x) const {
    if (x.size() != num_vars) return false;
    for (std::size_t j = 0; j < num_vars; ++j)
      if (!free_var[j] && x[j] < 0) return false;
    for (const auto& c : constraints) {
      Rational lhs = dot(c.coeffs, x);
      if (c.sense == Sense::Equal && lhs != c.rhs) return false;
      if (c.sense == Sense::GreaterEqual && lhs < c.rhs) return false;
      if (c.sense == Sense::LessEqual && lhs > c.rhs) return false;
    }
    return true;
  }
};

namespace detail {

/// Dense two-phase tableau simplex with Bland's rule.
class Tableau {
 public:
  // rows: [A | b] with b >= 0; cols = number of structural columns.
  Tableau(RatMatrix a, RatVector b, std::size_t cols) : cols_(cols) {
    m_ = a.size();
    const std::size_t width = cols_ + m_ + 1;  // structural + artificial + rhs
    t_.assign(m_ + 1, RatVector(width, Rational(0)));
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t_[i][j] = a[i][j];
      t_[i][cols_ + i] = 1;
      t_[i][width - 1] = b[i];
      basis_[i] = cols_ + i;
    }
    // Phase-one reduced costs: minimize the sum of artificials.
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t_[m_][j] -= t_[i][j];
      t_[m_][width - 1] -= t_[i][width - 1];
    }
    active_cols_ = cols_ + m_;
  }

  // Returns false when unbounded.
  bool run() {
    const std::size_t rhs = t_[0].size() - 1;
    while (true) {
      std::size_t enter = active_cols_;
      for (std::size_t j = 0; j < active_cols_; ++j)
        if (t_[m_][j] < 0) {
          enter = j;
          break;
        }
      if (enter == active_cols_) return true;
      std::size_t leave = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (t_[i][enter] <= 0) continue;
        Rational ratio = t_[i][rhs] / t_[i][enter];
        if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

  bool phase_one_feasible() const { return t_[m_].back() == 0; }

  // Pivots artificial variables out of the basis, drops redundant rows, and
  // installs the phase-two cost row for `cost` (length cols_).
  void start_phase_two(const RatVector& cost) {
    for (std::size_t i = 0; i < m_;) {
      if (basis_[i] < cols_) {
        ++i;
        continue;
      }
      std::size_t j = 0;
      while (j < cols_ && t_[i][j] == 0) ++j;
      if (j < cols_) {
        pivot(i, j);
        ++i;
      } else {
        t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
        --m_;
      }
    }
    active_cols_ = cols_;
    const std::size_t rhs = t_[0].size() - 1;
    RatVector& z = t_[m_];
    for (auto& x : z) x = 0;
    for (std::size_t j = 0; j < cols_; ++j) z[j] = cost[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j) z[j] -= cb * t_[i][j];
      z[rhs] -= cb * t_[i][rhs];
    }
  }

  RatVector solution() const {
    RatVector x = zero_vector(cols_);
    const std::size_t rhs = t_[0].size() - 1;
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < cols_) x[basis_[i]] = t_[i][rhs];
    return x;
  }

 private:
  void pivot(std::size_t r, std::size_t c) {
    const std::size_t width = t_[r].size();
    Rational inv = Rational(1) / t_[r][c];
    for (auto& x : t_[r]) x *= inv;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r || t_[i][c] == 0) continue;
      Rational f = t_[i][c];
      for (std::size_t k = 0; k < width; ++k)
        if (t_[r][k] != 0) t_[i][k] -= f * t_[r][k];
    }
    basis_[r] = c;
  }

  std::size_t cols_;
  std::size_t m_ = 0;
  std::size_t active_cols_ = 0;
  RatMatrix t_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

/// Exact simplex. Infeasible and unbounded programs are reported through the
/// status, never by throwing.
inline LPResult lp_solve(const LinearProgram& lp) {
  if (lp.free_var.size() != lp.num_vars || lp.objective.size() != lp.num_vars)
    throw Error(ErrorCode::DimensionMismatch, "malformed linear program");
  // Column layout: one column per nonnegative variable, two per free variable,
  // then one slack per inequality.
  std::vector<std::size_t> pos(lp.num_vars), neg(lp.num_vars, static_cast<std::size_t>(-1));
  std::size_t cols = 0;
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    pos[j] = cols++;
    if (lp.free_var[j]) neg[j] = cols++;
  }
  std::size_t slack_start = cols;
  for (const auto& c : lp.constraints)
    if (c.sense != Sense::Equal) ++cols;

  RatMatrix a;
  RatVector b;
  std::size_t slack = slack_start;
  for (const auto& c : lp.constraints) {
    RatVector row = zero_vector(cols);
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
      row[pos[j]] = c.coeffs[j];
      if (lp.free_var[j]) row[neg[j]] = -c.coeffs[j];
    }
    if (c.sense == Sense::GreaterEqual) row[slack++] = -1;
    if (c.sense == Sense::LessEqual) row[slack++] = 1;
    Rational rhs = c.rhs;
    if (rhs < 0) {
      for (auto& x : row) x = -x;
      rhs = -rhs;
    }
    a.push_back(std::move(row));
    b.push_back(std::move(rhs));
  }
  RatVector cost = zero_vector(cols);
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    Rational cj = lp.maximize ? Rational(-lp.objective[j]) : lp.objective[j];
    cost[pos[j]] = cj;
    if (lp.free_var[j]) cost[neg[j]] = -cj;
  }

  LPResult result;
  if (a.empty()) {
    // No constraints: optimum 0 at the origin unless some direction improves.
    for (std::size_t j = 0; j < cols; ++j)
      if (cost[j] < 0) {
        result.status = LPStatus::Unbounded;
        return result;
      }
    result.status = LPStatus::Optimal;
    result.optimum = 0;
    result.witness = zero_vector(lp.num_vars);
    return result;
  }

  detail::Tableau tab(std::move(a), std::move(b), cols);
  tab.run();
  if (!tab.phase_one_feasible()) {
    result.status = LPStatus::Infeasible;
    return result;
  }
  tab.start_phase_two(cost);
  if (!tab.run()) {
    result.status = LPStatus::Unbounded;
    return result;
  }
  RatVector x = tab.solution();
  result.status = LPStatus::Optimal;
  result.witness.resize(lp.num_vars);
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    result.witness[j] = x[pos[j]];
    if (lp.free_var[j]) result.witness[j] -= x[neg[j]];
  }
  result.optimum = dot(lp.objective, result.witness);
  if (!lp.feasible(result.witness)) throw Error(ErrorCode::InvariantViolation, "simplex produced an infeasible witness");
  return result;
}

/// Convenience form: minimize <objective, x> over free x subject to
/// equalities (row, rhs) and inequalities row . x >= rhs.
inline LPResult lp_solve(const RatVector& objective, const std::vector<std::pair<RatVector, Rational>>& equalities,
                         const std::vector<std::pair<RatVector, Rational>>& inequalities) {
  LinearProgram lp(objective.size());
  lp.free_var.assign(objective.size(), true);
  lp.objective = objective;
  for (const auto& [row, rhs] : equalities) lp.add(row, Sense::Equal, rhs);
  for (const auto& [row, rhs] : inequalities) lp.add(row, Sense::GreaterEqual, rhs);
  return lp_solve(lp);
}

}  // namespace tropcrit

#endif  // TROPCRIT_LP_HPP
