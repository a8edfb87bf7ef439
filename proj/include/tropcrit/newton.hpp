#ifndef TROPCRIT_NEWTON_HPP
#define TROPCRIT_NEWTON_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tropcrit/laurent.hpp"
#include "tropcrit/linalg.hpp"
#include "tropcrit/polytope.hpp"
#include "tropcrit/rational.hpp"
#include "tropcrit/tropical.hpp"

namespace tropcrit {

/// Record of one recursion step: the minimal height of the reduced polytope,
/// the points spanning the minimal face through the lowest point, and the
/// directions of that face in the original coordinates Q^{1+r}.
struct NewtonStage {
  Rational height;
  std::vector<std::size_t> support;  // indices into the original term list
  RatVector weights;                 // strict combination over `support` hitting the lowest point
  RatMatrix face_directions;         // spanning vectors of E_j, lifted to Q^{1+r}
};

/// A complete Newton datum arising from W, in the form produced after some
/// number of recursion steps. The accumulated flag (kernel of the composite
/// projection) is kept in the original coordinates Q^{1+r}; the current points
/// are the quotients of the surviving original points by it.
class NewtonDatum {
 public:
  NewtonDatum(RatMatrix original, std::vector<std::size_t> alive, Subspace flag, std::vector<NewtonStage> stages)
      : original_(std::move(original)), alive_(std::move(alive)), flag_(std::move(flag)), stages_(std::move(stages)) {}

  std::size_t ambient_dim() const { return flag_.ambient_dim(); }
  /// dim U of the current datum.
  std::size_t base_dim() const { return ambient_dim() - flag_.dim() - 1; }
  std::size_t stage() const { return stages_.size(); }

  const RatMatrix& original_points() const { return original_; }
  const std::vector<std::size_t>& alive() const { return alive_; }
  const Subspace& flag() const { return flag_; }
  const std::vector<NewtonStage>& stages() const { return stages_; }

  /// Current points in quotient coordinates.
  RatMatrix points() const {
    RatMatrix out;
    for (auto i : alive_) out.push_back(quotient_reduce(original_[i], flag_));
    return out;
  }

  /// Image of the first axis (eta) in quotient coordinates.
  RatVector eta() const {
    RatVector e0 = zero_vector(ambient_dim());
    e0[0] = 1;
    return quotient_reduce(e0, flag_);
  }

 private:
  RatMatrix original_;
  std::vector<std::size_t> alive_;
  Subspace flag_;
  std::vector<NewtonStage> stages_;
};

/// Initial datum: V = Q^{1+r}, eta = first axis, points (Val(gamma_i), v_i).
inline NewtonDatum build_datum(const LaurentPoly& w) {
  require_complete(w);
  std::vector<std::size_t> alive(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) alive[i] = i;
  return NewtonDatum(w.augmented_points(), std::move(alive), Subspace(w.dim() + 1), {});
}

/// One recursion step: drop points on the eta-line, find the lowest point of the
/// reduced polytope and the minimal face through it, and quotient by the face
/// directions.
inline NewtonDatum recursion_step(const NewtonDatum& datum) {
  if (datum.base_dim() == 0) throw Error(ErrorCode::InvalidArgument, "recursion already terminated");
  const RatVector eta = datum.eta();
  const Subspace eta_line(eta.size(), {eta});

  std::vector<std::size_t> reduced;
  RatMatrix pts;
  for (auto i : datum.alive()) {
    RatVector q = quotient_reduce(datum.original_points()[i], datum.flag());
    if (eta_line.contains(q)) continue;
    reduced.push_back(i);
    pts.push_back(std::move(q));
  }
  if (reduced.empty()) throw Error(ErrorCode::InvariantViolation, "empty reduced set with dim U > 0");

  LowestPoint low;
  FaceSupport face;
  try {
    low = lowest_point_along(pts, eta);
    face = minimal_face_support(pts, Rational(low.height) * eta);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvariantViolation, std::string("recursion LP failed: ") + e.what());
  }

  NewtonStage stage;
  stage.height = low.height;
  stage.weights = face.weights;
  RatVector lowest = zero_vector(datum.ambient_dim());
  lowest[0] = low.height;
  for (auto k : face.support) {
    std::size_t i = reduced[k];
    stage.support.push_back(i);
    stage.face_directions.push_back(datum.original_points()[i] - lowest);
  }
  Subspace flag = datum.flag().plus(stage.face_directions);
  if (flag.dim() == datum.flag().dim())
    throw Error(ErrorCode::InvariantViolation, "minimal face through the lowest point is a vertex");
  RatVector e0 = zero_vector(datum.ambient_dim());
  e0[0] = 1;
  if (flag.contains(e0)) throw Error(ErrorCode::InvariantViolation, "face directions contain the eta-line");
  if (!datum.stages().empty() && !(datum.stages().back().height < stage.height))
    throw Error(ErrorCode::InvariantViolation, "stage heights must strictly increase");

  auto stages = datum.stages();
  stages.push_back(std::move(stage));
  return NewtonDatum(datum.original_points(), std::move(reduced), std::move(flag), std::move(stages));
}

struct CanonicalPoint {
  RatVector d_crit;
  RatVector tilde_d_crit;  // (1, d_crit), vanishing on the final flag
  Subspace flag;
  std::vector<NewtonStage> stages;
};

/// The canonical point d_crit of W: iterate the recursion until dim U = 0 and
/// read d_crit off the final hyperplane flag. Self-checks that d_crit
/// satisfies the tropical critical conditions and maximizes Trop(W).
inline CanonicalPoint canonical_point(const LaurentPoly& w) {
  NewtonDatum datum = build_datum(w);
  while (datum.base_dim() > 0) datum = recursion_step(datum);

  CanonicalPoint cp;
  cp.flag = datum.flag();
  cp.stages = datum.stages();
  cp.d_crit = solve_vanishing_hyperplane(cp.flag);
  cp.tilde_d_crit = RatVector{Rational(1)};
  cp.tilde_d_crit.insert(cp.tilde_d_crit.end(), cp.d_crit.begin(), cp.d_crit.end());

  if (!check_tropical_critical(w, cp.d_crit).ok)
    throw Error(ErrorCode::InvariantViolation, "canonical point fails the tropical critical conditions");
  if (trop_eval(w, cp.d_crit) != trop_max(w))
    throw Error(ErrorCode::InvariantViolation, "canonical point does not maximize Trop(W)");
  return cp;
}

}  // namespace tropcrit

#endif  // TROPCRIT_NEWTON_HPP
