#ifndef TROPCRIT_TROPICAL_HPP
#define TROPCRIT_TROPICAL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "tropcrit/laurent.hpp"
#include "tropcrit/linalg.hpp"
#include "tropcrit/numerics.hpp"
#include "tropcrit/polytope.hpp"
#include "tropcrit/rational.hpp"

namespace tropcrit {

/// Trop(W)(d) = min_i c_i + <v_i, d>.
inline Rational trop_eval(const LaurentPoly& w, const RatVector& d) {
  if (d.size() != w.dim()) throw Error(ErrorCode::DimensionMismatch, "point has wrong dimension");
  if (w.size() == 0) throw Error(ErrorCode::InvalidArgument, "tropicalization of the zero polynomial");
  Rational best = w.valuation(0) + dot(w.term(0).exponent, d);
  for (std::size_t i = 1; i < w.size(); ++i) {
    Rational x = w.valuation(i) + dot(w.term(i).exponent, d);
    if (x < best) best = x;
  }
  return best;
}

/// max_d Trop(W)(d), computed as the minimal height above 0 of the augmented
/// Newton polytope.
inline Rational trop_max(const LaurentPoly& w) {
  require_complete(w);
  return lowest_point(w.valuations(), w.exponents()).height;
}

/// d lies in P_W = { d : Trop(W)(d) >= 0 }.
inline bool polytope_membership(const LaurentPoly& w, const RatVector& d) { return trop_eval(w, d) >= 0; }

struct Level {
  Rational epsilon;
  std::vector<std::size_t> active;  // terms with delta_i == epsilon
  Subspace below;                   // span{ v_i : delta_i < epsilon }
  Subspace upto;                    // span{ v_i : delta_i <= epsilon }
};

struct LevelData {
  RatVector d;
  Rational trop_value;
  RatVector deltas;
  std::vector<Level> levels;  // increasing epsilon

  std::size_t level_of(const Rational& eps) const {
    for (std::size_t h = 0; h < levels.size(); ++h)
      if (levels[h].epsilon == eps) return h;
    throw Error(ErrorCode::InvalidArgument, "not a level: " + to_string(eps));
  }
};

inline LevelData level_data(const LaurentPoly& w, const RatVector& d) {
  LevelData out;
  out.d = d;
  out.trop_value = trop_eval(w, d);
  for (std::size_t i = 0; i < w.size(); ++i)
    out.deltas.push_back(w.valuation(i) + dot(w.term(i).exponent, d) - out.trop_value);
  RatVector eps = out.deltas;
  std::sort(eps.begin(), eps.end());
  eps.erase(std::unique(eps.begin(), eps.end()), eps.end());
  for (const auto& e : eps) {
    Level lvl;
    lvl.epsilon = e;
    RatMatrix below, upto;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (out.deltas[i] < e) below.push_back(w.term(i).exponent);
      if (out.deltas[i] <= e) upto.push_back(w.term(i).exponent);
      if (out.deltas[i] == e) lvl.active.push_back(i);
    }
    lvl.below = Subspace(w.dim(), below);
    lvl.upto = Subspace(w.dim(), upto);
    out.levels.push_back(std::move(lvl));
  }
  return out;
}

struct LevelCertificate {
  Rational epsilon;
  std::vector<std::size_t> active;
  StrictCombination witness;  // weights over `active`
};

struct TropicalCertificate {
  bool ok = false;
  std::vector<LevelCertificate> levels;
};

/// For every level eps: some strictly positive convex combination of the
/// v_i with delta_i(d) = eps lies in span{ v_i : delta_i(d) < eps }.
inline TropicalCertificate check_tropical_critical(const LaurentPoly& w, const RatVector& d) {
  LevelData ld = level_data(w, d);
  TropicalCertificate cert;
  cert.ok = true;
  for (const auto& lvl : ld.levels) {
    RatMatrix pts;
    for (auto i : lvl.active) pts.push_back(w.term(i).exponent);
    LevelCertificate lc{lvl.epsilon, lvl.active, strict_combination_in(pts, lvl.below)};
    if (!lc.witness.strict()) cert.ok = false;
    cert.levels.push_back(std::move(lc));
  }
  return cert;
}

struct CoeffConditionReport {
  bool ok = false;
  RealVector residuals;  // per level, relative to the level's term scale
};

/// For every level eps of d_crit: sum_{delta_i = eps} Coeff(gamma_i) e^{<v_i,d>} v_i
/// lies in B_{<eps} up to `tol` relative to the largest summand.
inline CoeffConditionReport check_coeff_conditions(const LaurentPoly& w, const RatVector& d_crit, const RealVector& d,
                                                   double tol = 1e-9) {
  if (d.size() != w.dim()) throw Error(ErrorCode::DimensionMismatch, "coefficient point has wrong dimension");
  LevelData ld = level_data(w, d_crit);
  CoeffConditionReport rep;
  rep.ok = true;
  for (const auto& lvl : ld.levels) {
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(w.dim()));
    double scale = 0.0;
    for (auto i : lvl.active) {
      Eigen::VectorXd v = to_eigen(w.term(i).exponent);
      double a = w.term(i).coeff.leading_coeff() * std::exp(dot(w.term(i).exponent, d));
      sum += a * v;
      scale = std::max(scale, a * v.norm());
    }
    Eigen::MatrixXd q = orthonormal_columns(lvl.below.basis(), w.dim());
    double res = projection_residual(q, sum) / std::max(scale, 1e-300);
    rep.residuals.push_back(res);
    if (!(res < tol)) rep.ok = false;
  }
  return rep;
}

}  // namespace tropcrit

#endif  // TROPCRIT_TROPICAL_HPP
