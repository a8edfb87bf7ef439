#ifndef TROPCRIT_MUTATION_HPP
#define TROPCRIT_MUTATION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "tropcrit/laurent.hpp"
#include "tropcrit/lift.hpp"

namespace tropcrit {

/// The substitution x_k = (A + B) / x'_k with every other coordinate fixed.
/// A and B are monomials not involving x_k; B may be absent, which gives the
/// monomial map x_k = A / x'_k. The map is its own inverse.
struct Mutation {
  std::size_t pivot = 0;
  std::vector<LaurentTerm> binomial;  // one or two terms, first coefficient a monomial in t

  void validate(std::size_t dim) const {
    if (pivot >= dim) throw Error(ErrorCode::InvalidArgument, "pivot index out of range");
    if (binomial.empty() || binomial.size() > 2)
      throw Error(ErrorCode::InvalidArgument, "exchange polynomial must have one or two terms");
    for (const auto& t : binomial) {
      if (t.exponent.size() != dim) throw Error(ErrorCode::DimensionMismatch, "exchange monomial has wrong length");
      if (t.exponent[pivot] != 0) throw Error(ErrorCode::InvalidArgument, "exchange monomial involves the pivot");
      if (!t.coeff.is_positive()) throw Error(ErrorCode::NotPositive, "exchange coefficient is not positive");
    }
    const auto& a = binomial.front().coeff;
    if (a.size() != 1 || !a.is_exact())
      throw Error(ErrorCode::InvalidArgument, "leading exchange coefficient must be a single exact monomial in t");
    if (binomial.size() == 2 && binomial[0].exponent == binomial[1].exponent)
      throw Error(ErrorCode::InvalidArgument, "exchange monomials coincide");
  }
};

namespace detail {

struct Monomial {
  RatVector exponent;
  PuiseuxSeries coeff;
};

inline PuiseuxSeries series_power(const PuiseuxSeries& a, long m) {
  PuiseuxSeries out = PuiseuxSeries::constant(1.0);
  for (long j = 0; j < m; ++j) out = out * a;
  return out;
}

inline double binom(long n, long k) {
  double r = 1.0;
  for (long j = 1; j <= k; ++j) r = r * static_cast<double>(n - k + j) / static_cast<double>(j);
  return r;
}

inline void add_monomial(std::vector<Monomial>& poly, const RatVector& e, const PuiseuxSeries& c) {
  for (auto& m : poly)
    if (m.exponent == e) {
      m.coeff = m.coeff + c;
      return;
    }
  poly.push_back({e, c});
}

// Integer s with e = base + s g, if any.
inline std::optional<long> coset_offset(const RatVector& e, const RatVector& base, const RatVector& g) {
  RatVector diff = e - base;
  std::size_t j = 0;
  while (j < g.size() && g[j] == 0) ++j;
  Rational s = diff[j] / g[j];
  if (!is_integer(s) || !(Rational(s) * g == diff)) return std::nullopt;
  return s.get_num().get_si();
}

// Exact quotient of `poly` by A + B, or NotLaurent.
inline std::vector<Monomial> divide_by_exchange(const std::vector<Monomial>& poly, const Mutation& mu) {
  const auto& ta = mu.binomial[0];
  const auto& tb = mu.binomial[1];
  const double alpha = ta.coeff.leading_coeff();
  const Rational alpha_e = ta.coeff.terms().front().exponent;
  // A + B = A (1 + lambda y) with y = x^g.
  const PuiseuxSeries lambda = (tb.coeff * (1.0 / alpha)).shifted(-alpha_e);
  const RatVector g = tb.exponent - ta.exponent;

  std::vector<Monomial> out;
  std::vector<bool> used(poly.size(), false);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (used[i]) continue;
    std::map<long, PuiseuxSeries> q;
    for (std::size_t j = i; j < poly.size(); ++j) {
      if (used[j]) continue;
      if (auto s = coset_offset(poly[j].exponent, poly[i].exponent, g)) {
        q[*s] = poly[j].coeff;
        used[j] = true;
      }
    }
    const long lo = q.begin()->first, hi = q.rbegin()->first;
    PuiseuxSeries prev;
    for (long s = lo; s <= hi; ++s) {
      PuiseuxSeries qs = q.count(s) ? q[s] : PuiseuxSeries();
      PuiseuxSeries rs = qs - lambda * prev;
      if (s == hi) {
        if (!rs.is_zero())
          throw Error(ErrorCode::NotLaurent, "the exchange factor " + LaurentPoly(g.size(), mu.binomial).str() +
                                                 " survives in the denominator");
        break;
      }
      if (!rs.is_zero()) {
        RatVector e = poly[i].exponent + Rational(s) * g - ta.exponent;
        out.push_back({e, (rs * (1.0 / alpha)).shifted(-alpha_e)});
      }
      prev = rs;
    }
  }
  return out;
}

}  // namespace detail

/// phi*(W) for phi: x_k = (A+B)/x'_k. Throws NotLaurent when A+B does not
/// divide out and NotPositive when a coefficient of the result is not positive.
inline LaurentPoly mutate_pullback(const LaurentPoly& w, const Mutation& mu) {
  mu.validate(w.dim());
  const std::size_t k = mu.pivot;
  // Group by the power of x'_k, which is minus the power of x_k.
  std::map<Rational, std::vector<detail::Monomial>> groups;
  for (const auto& t : w.terms()) {
    RatVector rest = t.exponent;
    rest[k] = 0;
    groups[-t.exponent[k]].push_back({rest, t.coeff});
  }

  std::vector<LaurentTerm> result;
  auto emit = [&](const std::vector<detail::Monomial>& poly, const Rational& j) {
    for (const auto& m : poly) {
      RatVector e = m.exponent;
      e[k] = j;
      result.push_back({m.coeff, e});
    }
  };

  for (auto& [j, poly] : groups) {
    const Rational m = -j;  // power of x_k, to be replaced by (A+B)^m
    if (mu.binomial.size() == 1) {
      const auto& ta = mu.binomial[0];
      const double c = std::pow(ta.coeff.leading_coeff(), to_double(m));
      const Rational e = ta.coeff.terms().front().exponent * m;
      std::vector<detail::Monomial> out;
      for (const auto& mono : poly) out.push_back({mono.exponent + Rational(m) * ta.exponent, (mono.coeff * c).shifted(e)});
      emit(out, j);
      continue;
    }
    if (!is_integer(m))
      throw Error(ErrorCode::NotLaurent, "fractional power " + to_string(m) + " of the exchange binomial");
    const long mi = m.get_num().get_si();
    std::vector<detail::Monomial> cur = poly;
    if (mi >= 0) {
      std::vector<detail::Monomial> out;
      const auto& ta = mu.binomial[0];
      const auto& tb = mu.binomial[1];
      for (long s = 0; s <= mi; ++s) {
        PuiseuxSeries c =
            detail::binom(mi, s) * (detail::series_power(ta.coeff, s) * detail::series_power(tb.coeff, mi - s));
        RatVector shift = Rational(s) * ta.exponent + Rational(mi - s) * tb.exponent;
        for (const auto& mono : cur) detail::add_monomial(out, mono.exponent + shift, mono.coeff * c);
      }
      cur = std::move(out);
    } else {
      for (long s = 0; s < -mi; ++s) cur = detail::divide_by_exchange(cur, mu);
    }
    emit(cur, j);
  }
  return LaurentPoly::from_sum(w.dim(), result);
}

/// Trop(phi)(d') = d: d_k = min(val A + <a,d'>, val B + <b,d'>) - d'_k.
inline RatVector trop_phi(const Mutation& mu, const RatVector& d_prime) {
  mu.validate(d_prime.size());
  RatVector d = d_prime;
  Rational best;
  bool first = true;
  for (const auto& t : mu.binomial) {
    Rational x = t.coeff.val().value() + dot(t.exponent, d_prime);
    if (first || x < best) best = x;
    first = false;
  }
  d[mu.pivot] = best - d_prime[mu.pivot];
  return d;
}

/// phi(p') coordinatewise, each known to relative order `order`.
inline std::vector<PuiseuxSeries> push_forward(const Mutation& mu, const TorusPoint& p, const Rational& order) {
  const std::size_t k = mu.pivot;
  std::vector<PuiseuxSeries> out;
  for (std::size_t j = 0; j < p.dim(); ++j) out.push_back(p.coordinate(j, ExtendedRational(order)));
  RatVector dk = trop_phi(mu, p.valuation);
  const Rational target = dk[k] + order;
  const ExtendedRational num_h(target + p.valuation[k]);
  PuiseuxSeries num = PuiseuxSeries::big_o(num_h);
  for (const auto& t : mu.binomial) {
    const Rational lead = t.coeff.val().value() + dot(t.exponent, p.valuation);
    PuiseuxSeries ch = p.eval_character(t.exponent, num_h - lead);
    num = num + PuiseuxSeries::multiply(t.coeff, ch, num_h);
  }
  RatVector minus_ek = zero_vector(p.dim());
  minus_ek[k] = -1;
  PuiseuxSeries inv = p.eval_character(minus_ek, ExtendedRational(order));
  out[k] = PuiseuxSeries::multiply(num, inv, ExtendedRational(target));
  return out;
}

struct MutationReport {
  LaurentPoly pullback;
  bool source_complete = false;
  bool pullback_complete = false;
  RatVector d_crit;
  RatVector d_crit_pullback;
  RatVector trop_image;  // Trop(phi)(d'_crit)
  bool tropical_ok = false;
  bool series_ok = false;
  double max_deviation = 0.0;
  Rational compared_order;
};

/// Solves W and phi*(W) and compares p_crit with phi(p'_crit), exactly at
/// the tropical level and coefficientwise to relative order `order`.
inline MutationReport check_mutation_invariance(const LaurentPoly& w, const Mutation& mu, const Rational& order,
                                                double tol = 1e-8) {
  MutationReport rep;
  rep.pullback = mutate_pullback(w, mu);
  rep.source_complete = w.is_complete();
  rep.pullback_complete = rep.pullback.is_complete();
  if (!rep.source_complete) throw Error(ErrorCode::NotComplete, "source polynomial is not complete");
  if (!rep.pullback_complete)
    throw Error(ErrorCode::InvariantViolation, "pullback of a complete polynomial is not complete");

  CritResult a = solve_critical(w, order);
  CritResult b = solve_critical(rep.pullback, order);
  rep.d_crit = a.d_crit;
  rep.d_crit_pullback = b.d_crit;
  rep.trop_image = trop_phi(mu, b.d_crit);
  rep.tropical_ok = rep.trop_image == a.d_crit;

  rep.compared_order = std::min(a.trunc_order, b.trunc_order);
  std::vector<PuiseuxSeries> pushed = push_forward(mu, b.point(), rep.compared_order);
  TorusPoint pa = a.point();
  rep.series_ok = rep.tropical_ok;
  std::vector<PuiseuxSeries> xs;
  for (std::size_t j = 0; j < w.dim(); ++j) xs.push_back(pa.coordinate(j, ExtendedRational(rep.compared_order)));
  // Corrections act on all coordinates at once, so deviations at relative
  // order s are measured against the largest coefficient of any coordinate at s.
  std::map<Rational, double> ref;
  for (std::size_t j = 0; j < w.dim(); ++j)
    for (const auto* series : {&xs[j], &pushed[j]})
      for (const auto& t : series->terms()) {
        double& m = ref[t.exponent - a.d_crit[j]];
        m = std::max(m, std::abs(t.coeff));
      }
  for (std::size_t j = 0; j < w.dim(); ++j) {
    ExtendedRational h = min(xs[j].trunc(), pushed[j].trunc());
    if (h < ExtendedRational(a.d_crit[j] + rep.compared_order)) rep.series_ok = false;
    PuiseuxSeries diff = xs[j].truncated(h) - pushed[j].truncated(h);
    for (const auto& t : diff.terms()) {
      double dev = std::abs(t.coeff) / (1.0 + ref[t.exponent - a.d_crit[j]]);
      rep.max_deviation = std::max(rep.max_deviation, dev);
    }
  }
  if (!(rep.max_deviation <= tol)) rep.series_ok = false;
  return rep;
}

}  // namespace tropcrit

#endif  // TROPCRIT_MUTATION_HPP
