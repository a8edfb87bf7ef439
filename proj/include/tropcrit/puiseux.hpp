#ifndef TROPCRIT_PUISEUX_HPP
#define TROPCRIT_PUISEUX_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tropcrit/error.hpp"
#include "tropcrit/rational.hpp"

namespace tropcrit {

/// Truncated generalized Puiseux series in t with rational exponents and real
/// coefficients.
///
/// A series is a finite, strictly increasing list of terms c * t^e together
/// with a truncation horizon `trunc`: every coefficient at an exponent below
/// the horizon is known exactly (absent terms are zero), nothing is known at or
/// beyond it. An infinite horizon marks an exact (finite) series. All
/// operations propagate the tightest horizon that is still valid and never
/// produce terms at or beyond it.
class PuiseuxSeries {
 public:
  struct Term {
    Rational exponent;
    double coeff;
  };

  /// Relative size below which a sum produced by cancellation is treated as 0.
  static constexpr double kCancellationTolerance = 1e-12;

  PuiseuxSeries() = default;

  explicit PuiseuxSeries(std::vector<Term> terms, ExtendedRational trunc = ExtendedRational::infinity())
      : trunc_(std::move(trunc)) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
    for (auto& term : terms) {
      if (!std::isfinite(term.coeff)) throw Error(ErrorCode::InvalidArgument, "non-finite series coefficient");
      if (ExtendedRational(term.exponent) >= trunc_) continue;
      if (!terms_.empty() && terms_.back().exponent == term.exponent) {
        terms_.back().coeff += term.coeff;
        if (terms_.back().coeff == 0.0) terms_.pop_back();
      } else if (term.coeff != 0.0) {
        terms_.push_back(std::move(term));
      }
    }
  }

  static PuiseuxSeries constant(double c) { return monomial(c, Rational(0)); }

  static PuiseuxSeries monomial(double c, const Rational& exponent,
                                ExtendedRational trunc = ExtendedRational::infinity()) {
    return PuiseuxSeries({Term{exponent, c}}, std::move(trunc));
  }

  /// The series O(t^trunc): nothing known below the horizon is nonzero.
  static PuiseuxSeries big_o(ExtendedRational trunc) { return PuiseuxSeries({}, std::move(trunc)); }

  const std::vector<Term>& terms() const noexcept { return terms_; }
  const ExtendedRational& trunc() const noexcept { return trunc_; }
  std::size_t size() const noexcept { return terms_.size(); }

  /// No known nonzero terms (the series is zero up to its horizon).
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_exact() const noexcept { return trunc_.is_infinite(); }

  /// Exponent of the lowest known term; +inf when there is none.
  ExtendedRational val() const {
    if (terms_.empty()) return ExtendedRational::infinity();
    return terms_.front().exponent;
  }

  /// A certified lower bound for the valuation of the true series: the lowest
  /// known exponent, or the horizon when nothing is known to be nonzero.
  ExtendedRational val_lower_bound() const {
    if (terms_.empty()) return trunc_;
    return terms_.front().exponent;
  }

  double leading_coeff() const {
    if (terms_.empty()) throw Error(ErrorCode::CoeffOfZero, "leading coefficient of the zero series");
    return terms_.front().coeff;
  }

  bool is_positive() const noexcept { return !terms_.empty() && terms_.front().coeff > 0.0; }

  /// Coefficient of t^e; zero for absent exponents below the horizon.
  double coeff_at(const Rational& e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, const Rational& x) { return t.exponent < x; });
    if (it != terms_.end() && it->exponent == e) return it->coeff;
    return 0.0;
  }

  PuiseuxSeries truncated(const ExtendedRational& horizon) const {
    PuiseuxSeries out;
    out.trunc_ = min(trunc_, horizon);
    for (const auto& term : terms_) {
      if (ExtendedRational(term.exponent) >= out.trunc_) break;
      out.terms_.push_back(term);
    }
    return out;
  }

  /// Multiplies by t^e.
  PuiseuxSeries shifted(const Rational& e) const {
    PuiseuxSeries out = *this;
    for (auto& term : out.terms_) term.exponent += e;
    out.trunc_ = trunc_ + ExtendedRational(e);
    return out;
  }

  /// Drops terms whose absolute coefficient is below `tol`.
  PuiseuxSeries drop_small(double tol) const {
    PuiseuxSeries out;
    out.trunc_ = trunc_;
    for (const auto& term : terms_)
      if (std::abs(term.coeff) >= tol) out.terms_.push_back(term);
    return out;
  }

  PuiseuxSeries operator-() const {
    PuiseuxSeries out = *this;
    for (auto& term : out.terms_) term.coeff = -term.coeff;
    return out;
  }

  friend PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    PuiseuxSeries out;
    out.trunc_ = min(a.trunc_, b.trunc_);
    std::size_t i = 0, j = 0;
    auto push = [&](const Rational& e, double c) {
      if (ExtendedRational(e) < out.trunc_ && c != 0.0) out.terms_.push_back(Term{e, c});
    };
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].exponent < b.terms_[j].exponent)) {
        push(a.terms_[i].exponent, a.terms_[i].coeff);
        ++i;
      } else if (i == a.terms_.size() || b.terms_[j].exponent < a.terms_[i].exponent) {
        push(b.terms_[j].exponent, b.terms_[j].coeff);
        ++j;
      } else {
        double x = a.terms_[i].coeff, y = b.terms_[j].coeff;
        double s = x + y;
        if (std::abs(s) > kCancellationTolerance * std::max(std::abs(x), std::abs(y)))
          push(a.terms_[i].exponent, s);
        ++i;
        ++j;
      }
    }
    return out;
  }

  friend PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b) { return a + (-b); }

  friend PuiseuxSeries operator*(double s, const PuiseuxSeries& a) {
    if (s == 0.0) return big_o(a.trunc_.is_infinite() ? ExtendedRational::infinity() : a.trunc_);
    PuiseuxSeries out = a;
    for (auto& term : out.terms_) term.coeff *= s;
    return out;
  }
  friend PuiseuxSeries operator*(const PuiseuxSeries& a, double s) { return s * a; }

  friend PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    ExtendedRational horizon = min(a.trunc_ + b.val_lower_bound(), b.trunc_ + a.val_lower_bound());
    return multiply(a, b, horizon);
  }

  /// Product with an additional cap on the result horizon.
  static PuiseuxSeries multiply(const PuiseuxSeries& a, const PuiseuxSeries& b, const ExtendedRational& cap) {
    PuiseuxSeries out;
    out.trunc_ = min(cap, min(a.trunc_ + b.val_lower_bound(), b.trunc_ + a.val_lower_bound()));
    if (a.terms_.empty() || b.terms_.empty()) return out;
    struct Acc {
      Rational exponent;
      double sum;
      double mag;
    };
    std::vector<Acc> acc;
    acc.reserve(a.terms_.size() * b.terms_.size());
    Rational e;
    for (const auto& x : a.terms_) {
      for (const auto& y : b.terms_) {
        e = x.exponent + y.exponent;
        if (ExtendedRational(e) >= out.trunc_) break;
        double p = x.coeff * y.coeff;
        acc.push_back(Acc{e, p, std::abs(p)});
      }
    }
    std::sort(acc.begin(), acc.end(), [](const Acc& l, const Acc& r) { return l.exponent < r.exponent; });
    for (std::size_t i = 0; i < acc.size();) {
      std::size_t j = i;
      double sum = 0.0, mag = 0.0;
      while (j < acc.size() && acc[j].exponent == acc[i].exponent) {
        sum += acc[j].sum;
        mag += acc[j].mag;
        ++j;
      }
      if (sum != 0.0 && std::abs(sum) > kCancellationTolerance * mag) out.terms_.push_back(Term{acc[i].exponent, sum});
      i = j;
    }
    return out;
  }

  friend PuiseuxSeries& operator+=(PuiseuxSeries& a, const PuiseuxSeries& b) { return a = a + b; }
  friend PuiseuxSeries& operator*=(PuiseuxSeries& a, const PuiseuxSeries& b) { return a = a * b; }

  /// Structural equality (same horizon, same exponents, same coefficients).
  friend bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    if (!(a.trunc_ == b.trunc_) || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].exponent != b.terms_[i].exponent || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
  }

  std::string str(int precision = 6) const {
    std::ostringstream os;
    os << std::setprecision(precision);
    bool first = true;
    for (const auto& term : terms_) {
      double c = term.coeff;
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      double mag = std::abs(c);
      bool unit = mag == 1.0 && term.exponent != 0;
      if (!unit) os << mag;
      if (term.exponent != 0) {
        if (!unit) os << "*";
        os << "t";
        if (term.exponent != 1) {
          if (is_integer(term.exponent) && term.exponent > 0)
            os << "^" << to_string(term.exponent);
          else
            os << "^(" << to_string(term.exponent) << ")";
        }
      }
    }
    if (trunc_.is_finite()) {
      if (!first) os << " + ";
      os << "O(t^" << (is_integer(trunc_.value()) && trunc_.value() >= 0 ? to_string(trunc_.value())
                                                                         : "(" + to_string(trunc_.value()) + ")")
         << ")";
    } else if (first) {
      os << "0";
    }
    return os.str();
  }

 private:
  std::vector<Term> terms_;
  ExtendedRational trunc_;
};

inline ExtendedRational val(const PuiseuxSeries& a) { return a.val(); }
inline double leading_coeff(const PuiseuxSeries& a) { return a.leading_coeff(); }

namespace detail {

inline ExtendedRational require_finite_horizon(const PuiseuxSeries& a, const ExtendedRational& cap,
                                               const char* what) {
  ExtendedRational h = min(a.trunc(), cap);
  if (h.is_infinite()) throw Error(ErrorCode::InvalidArgument, std::string(what) + " of an exact series needs a cap");
  return h;
}

}  // namespace detail

/// exp(a) for a series of strictly positive valuation, truncated at
/// min(a.trunc, cap).
inline PuiseuxSeries exp_series(const PuiseuxSeries& a, const ExtendedRational& cap = ExtendedRational::infinity()) {
  if (!(a.val_lower_bound() > ExtendedRational(0)))
    throw Error(ErrorCode::NonPositiveValuation, "exp needs Val > 0, got " + a.val_lower_bound().str());
  if (a.is_zero() && a.is_exact()) return PuiseuxSeries::constant(1.0);
  ExtendedRational h = detail::require_finite_horizon(a, cap, "exp");
  PuiseuxSeries sum = PuiseuxSeries::constant(1.0).truncated(h);
  PuiseuxSeries power = sum;
  for (int k = 1;; ++k) {
    power = PuiseuxSeries::multiply(power, a, h) * (1.0 / k);
    if (power.is_zero()) break;
    sum = sum + power;
  }
  return sum.truncated(h);
}

/// log(a) for a series with leading term exactly 1 at exponent 0.
inline PuiseuxSeries log_series(const PuiseuxSeries& a, const ExtendedRational& cap = ExtendedRational::infinity()) {
  if (a.is_zero() || a.terms().front().exponent != 0 || std::abs(a.terms().front().coeff - 1.0) > 1e-14)
    throw Error(ErrorCode::NotUnitLeading, "log needs a series of the form 1 + O(t^q), q > 0");
  PuiseuxSeries b = a - PuiseuxSeries::constant(1.0);
  if (b.is_zero() && b.is_exact()) return PuiseuxSeries();
  ExtendedRational h = detail::require_finite_horizon(b, cap, "log");
  PuiseuxSeries sum = PuiseuxSeries::big_o(h);
  PuiseuxSeries power = PuiseuxSeries::constant(1.0).truncated(h);
  for (int k = 1;; ++k) {
    power = PuiseuxSeries::multiply(power, b, h);
    if (power.is_zero()) break;
    sum = sum + power * ((k % 2 == 1 ? 1.0 : -1.0) / k);
  }
  return sum.truncated(h);
}

/// 1/a for a series with positive leading coefficient. The result horizon is
/// the natural one (a.trunc - 2 Val(a)) capped at `cap`.
inline PuiseuxSeries reciprocal(const PuiseuxSeries& a, const ExtendedRational& cap = ExtendedRational::infinity()) {
  if (!a.is_positive()) throw Error(ErrorCode::NotPositive, "reciprocal needs a positive leading term");
  const Rational m = a.terms().front().exponent;
  const double c = a.terms().front().coeff;
  PuiseuxSeries unit = (a * (1.0 / c)).shifted(-m);  // 1 + b
  PuiseuxSeries b = unit - PuiseuxSeries::constant(1.0);
  if (b.is_zero() && b.is_exact()) return PuiseuxSeries::monomial(1.0 / c, -m);
  // Horizon of the unit part, relative to t^0.
  ExtendedRational h = min(b.trunc(), cap + ExtendedRational(m));
  if (h.is_infinite()) throw Error(ErrorCode::InvalidArgument, "reciprocal of an exact non-monomial series needs a cap");
  PuiseuxSeries sum = PuiseuxSeries::constant(1.0).truncated(h);
  PuiseuxSeries power = sum;
  PuiseuxSeries neg_b = -b;
  while (true) {
    power = PuiseuxSeries::multiply(power, neg_b, h);
    if (power.is_zero()) break;
    sum = sum + power;
  }
  return (sum * (1.0 / c)).shifted(-m);
}

/// Dot product of a rational vector with a vector of series.
inline PuiseuxSeries pair(const RatVector& v, const std::vector<PuiseuxSeries>& w) {
  if (v.size() != w.size()) throw Error(ErrorCode::DimensionMismatch, "pairing of vectors of different length");
  PuiseuxSeries sum;
  for (std::size_t j = 0; j < v.size(); ++j)
    if (v[j] != 0) sum = sum + to_double(v[j]) * w[j];
  return sum;
}

/// A point of the torus with positive coordinates, factored as
/// p = e^u * t^d * exp(w) coordinatewise, where u is real, d rational and every
/// component of w has strictly positive valuation.
struct TorusPoint {
  RealVector log_coeff;                  // u
  RatVector valuation;                   // d
  std::vector<PuiseuxSeries> correction;  // w

  TorusPoint() = default;
  TorusPoint(RealVector u, RatVector d, std::vector<PuiseuxSeries> w)
      : log_coeff(std::move(u)), valuation(std::move(d)), correction(std::move(w)) {
    validate();
  }

  std::size_t dim() const noexcept { return valuation.size(); }

  void validate() const {
    if (log_coeff.size() != valuation.size() || correction.size() != valuation.size())
      throw Error(ErrorCode::DimensionMismatch, "torus point components have different dimensions");
    for (const auto& w : correction)
      if (!(w.val_lower_bound() > ExtendedRational(0)))
        throw Error(ErrorCode::NonPositiveValuation, "torus point correction must have Val > 0");
  }

  /// Coordinate j as a single series, e^{u_j} t^{d_j} exp(w_j).
  PuiseuxSeries coordinate(std::size_t j, const ExtendedRational& relative_cap = ExtendedRational::infinity()) const {
    RatVector e = zero_vector(dim());
    e[j] = 1;
    return eval_character(e, relative_cap);
  }

  /// x^v evaluated at the point: e^{<v,u>} t^{<v,d>} exp(<v,w>). The exp factor
  /// is computed to relative order `relative_cap` (or to the horizon of w).
  PuiseuxSeries eval_character(const RatVector& v,
                               const ExtendedRational& relative_cap = ExtendedRational::infinity()) const {
    if (v.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "character dimension differs from torus");
    const double scale = std::exp(dot(v, log_coeff));
    const Rational shift = dot(v, valuation);
    PuiseuxSeries e = exp_series(pair(v, correction), relative_cap);
    return (scale * e).shifted(shift);
  }
};

inline PuiseuxSeries eval_character(const TorusPoint& p, const RatVector& v,
                                    const ExtendedRational& relative_cap = ExtendedRational::infinity()) {
  return p.eval_character(v, relative_cap);
}

}  // namespace tropcrit

#endif  // TROPCRIT_PUISEUX_HPP
