#ifndef TROPCRIT_POLYTOPE_HPP
#define TROPCRIT_POLYTOPE_HPP

#include <cstddef>
#include <vector>

#include "tropcrit/error.hpp"
#include "tropcrit/linalg.hpp"
#include "tropcrit/lp.hpp"
#include "tropcrit/rational.hpp"

namespace tropcrit {

// Queries on convex hulls of finite point sets, each answered by exact LPs over
// the convex-combination weights. Nothing here enumerates vertices or facets.

struct LowestPoint {
  Rational height;
  RatVector weights;  // convex combination attaining height * direction
};

/// min { c : c * direction lies in hull(points) }.
inline LowestPoint lowest_point_along(const RatMatrix& points, const RatVector& direction) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "lowest point of an empty set");
  const std::size_t n = points.size();
  const std::size_t dim = direction.size();
  // Variables: r_0..r_{n-1} >= 0, c free.
  LinearProgram lp(n + 1);
  lp.free_var[n] = true;
  lp.objective[n] = 1;
  RatVector ones = zero_vector(n + 1);
  for (std::size_t i = 0; i < n; ++i) ones[i] = 1;
  lp.add(ones, Sense::Equal, 1);
  for (std::size_t k = 0; k < dim; ++k) {
    RatVector row = zero_vector(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      if (points[i].size() != dim) throw Error(ErrorCode::DimensionMismatch, "point of wrong dimension");
      row[i] = points[i][k];
    }
    row[n] = -direction[k];
    lp.add(std::move(row), Sense::Equal, 0);
  }
  LPResult res = lp_solve(lp);
  if (res.status == LPStatus::Infeasible)
    throw Error(ErrorCode::NoPointAboveZero, "the line through the direction misses the hull");
  if (res.status == LPStatus::Unbounded) throw Error(ErrorCode::InvariantViolation, "hull meets the line unboundedly");
  LowestPoint out;
  out.height = res.witness[n];
  out.weights.assign(res.witness.begin(), res.witness.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

/// Minimal height above 0 of hull{(c_i, v_i)}: min { c : (c, 0) in the hull }.
inline LowestPoint lowest_point(const std::vector<Rational>& heights, const RatMatrix& vs) {
  if (heights.size() != vs.size()) throw Error(ErrorCode::DimensionMismatch, "heights and points differ in count");
  if (vs.empty()) throw Error(ErrorCode::InvalidArgument, "lowest point of an empty set");
  RatMatrix lifted;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    RatVector p{heights[i]};
    p.insert(p.end(), vs[i].begin(), vs[i].end());
    lifted.push_back(std::move(p));
  }
  RatVector e0 = zero_vector(lifted.front().size());
  e0[0] = 1;
  return lowest_point_along(lifted, e0);
}

/// Result of maximizing the smallest weight of a convex combination subject to
/// linear side conditions. `min_weight > 0` certifies a strictly positive
/// combination over all given points.
struct StrictCombination {
  bool feasible = false;
  Rational min_weight;
  RatVector weights;

  bool strict() const { return feasible && min_weight > 0; }
};

/// maximize m s.t. r_i >= m, sum r_i = 1, and <f_k, sum r_i p_i> = values_k.
inline StrictCombination strict_combination(const RatMatrix& points, const RatMatrix& functionals,
                                            const RatVector& values) {
  StrictCombination out;
  const std::size_t n = points.size();
  if (n == 0) return out;
  if (functionals.size() != values.size()) throw Error(ErrorCode::DimensionMismatch, "functionals vs values");
  LinearProgram lp(n + 1);  // r_0..r_{n-1}, m (all nonnegative)
  lp.maximize = true;
  lp.objective[n] = 1;
  RatVector ones = zero_vector(n + 1);
  for (std::size_t i = 0; i < n; ++i) ones[i] = 1;
  lp.add(ones, Sense::Equal, 1);
  for (std::size_t k = 0; k < functionals.size(); ++k) {
    RatVector row = zero_vector(n + 1);
    for (std::size_t i = 0; i < n; ++i) row[i] = dot(functionals[k], points[i]);
    lp.add(std::move(row), Sense::Equal, values[k]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    RatVector row = zero_vector(n + 1);
    row[i] = 1;
    row[n] = -1;
    lp.add(std::move(row), Sense::GreaterEqual, 0);
  }
  LPResult res = lp_solve(lp);
  if (res.status != LPStatus::Optimal) return out;
  out.feasible = true;
  out.min_weight = res.witness[n];
  out.weights.assign(res.witness.begin(), res.witness.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

/// Strict convex combination of `points` landing in the subspace `sub`.
inline StrictCombination strict_combination_in(const RatMatrix& points, const Subspace& sub) {
  RatMatrix ann = sub.annihilator();
  return strict_combination(points, ann, zero_vector(ann.size()));
}

/// Strict convex combination of `points` equal to `target`.
inline StrictCombination strict_combination_at(const RatMatrix& points, const RatVector& target) {
  RatMatrix id;
  for (std::size_t k = 0; k < target.size(); ++k) {
    RatVector e = zero_vector(target.size());
    e[k] = 1;
    id.push_back(std::move(e));
  }
  return strict_combination(points, id, target);
}

/// Is hull(points) full-dimensional in Q^dim with `target` in its interior?
inline bool interior_point(const RatMatrix& points, const RatVector& target) {
  const std::size_t dim = target.size();
  if (points.empty()) return dim == 0;
  RatMatrix diffs;
  for (const auto& p : points) diffs.push_back(p - points.front());
  if (rank(diffs, dim) != dim) return false;
  return strict_combination_at(points, target).strict();
}

struct FaceSupport {
  std::vector<std::size_t> support;  // indices spanning the minimal face
  RatVector weights;                 // strict combination over the support hitting the target
};

/// Indices of the points spanning the minimal face of hull(points) containing
/// `target`, via one LP per index (maximize r_i over convex combinations
/// hitting the target).
inline FaceSupport minimal_face_support(const RatMatrix& points, const RatVector& target) {
  const std::size_t n = points.size();
  const std::size_t dim = target.size();
  auto base = [&]() {
    LinearProgram lp(n);
    lp.maximize = true;
    lp.add(RatVector(n, Rational(1)), Sense::Equal, 1);
    for (std::size_t k = 0; k < dim; ++k) {
      RatVector row(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (points[i].size() != dim) throw Error(ErrorCode::DimensionMismatch, "point of wrong dimension");
        row[i] = points[i][k];
      }
      lp.add(std::move(row), Sense::Equal, target[k]);
    }
    return lp;
  };
  FaceSupport out;
  RatVector sum = zero_vector(n);
  for (std::size_t i = 0; i < n; ++i) {
    LinearProgram lp = base();
    lp.objective[i] = 1;
    LPResult res = lp_solve(lp);
    if (res.status == LPStatus::Infeasible) throw Error(ErrorCode::TargetNotInHull, "target " + to_string(target));
    if (res.status != LPStatus::Optimal) throw Error(ErrorCode::InvariantViolation, "weight LP unbounded");
    if (res.optimum > 0) {
      out.support.push_back(i);
      sum = sum + res.witness;
    }
  }
  if (out.support.empty()) throw Error(ErrorCode::TargetNotInHull, "target " + to_string(target));
  out.weights = Rational(Rational(1) / static_cast<long>(out.support.size())) * sum;
  return out;
}

}  // namespace tropcrit

#endif  // TROPCRIT_POLYTOPE_HPP
