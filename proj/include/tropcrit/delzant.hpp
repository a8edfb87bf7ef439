#ifndef TROPCRIT_DELZANT_HPP
#define TROPCRIT_DELZANT_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "tropcrit/lift.hpp"
#include "tropcrit/lp.hpp"

namespace tropcrit {

struct Facet {
  RatVector normal;  // primitive inward normal v_i
  Rational constant;  // c_i, facet is <v_i, d> + c_i = 0
};

/// Delta = { d : <v_i, d> + c_i >= 0 for all facets }.
struct DelzantInstance {
  std::vector<Facet> facets;

  std::size_t dim() const { return facets.empty() ? 0 : facets.front().normal.size(); }
};

inline LaurentPoly moment_potential(const DelzantInstance& inst) {
  std::vector<LaurentTerm> terms;
  for (const auto& f : inst.facets) terms.push_back({PuiseuxSeries::monomial(1.0, f.constant), f.normal});
  return LaurentPoly::from_sum(inst.dim(), terms);
}

struct DelzantReport {
  RatVector d_crit;
  Rational trop_max;
  RatVector slacks;  // <v_i, d_crit> + c_i per facet
  bool interior = false;
  std::optional<CritResult> critical;
  std::optional<NondegeneracyCertificate> nondegeneracy;
};

/// Checks the polytope, then locates the canonical point of W_Delta inside it.
/// `order` > 0 additionally solves for the critical point and certifies
/// nondegeneracy.
inline DelzantReport delzant_analyze(const DelzantInstance& inst, const Rational& order = 0, int samples = 10,
                                     unsigned seed = 0) {
  const std::size_t r = inst.dim();
  if (inst.facets.empty() || r == 0) throw Error(ErrorCode::EmptyPolytope, "no facets");
  for (const auto& f : inst.facets) {
    if (f.normal.size() != r) throw Error(ErrorCode::DimensionMismatch, "facet normals have different lengths");
    if (!is_primitive(f.normal)) throw Error(ErrorCode::NonPrimitiveRay, "normal " + to_string(f.normal) + " is not primitive");
  }

  RatMatrix ineq_lhs;
  RatVector ineq_rhs;
  for (const auto& f : inst.facets) {
    ineq_lhs.push_back(f.normal);
    ineq_rhs.push_back(-f.constant);
  }
  LinearProgram lp(r);
  lp.free_var.assign(r, true);
  for (std::size_t i = 0; i < ineq_lhs.size(); ++i) lp.add(ineq_lhs[i], Sense::GreaterEqual, ineq_rhs[i]);
  if (lp_solve(lp).status == LPStatus::Infeasible) throw Error(ErrorCode::EmptyPolytope, "facet inequalities are infeasible");

  LaurentPoly w = moment_potential(inst);
  // A nonempty polyhedron is bounded exactly when its normals positively span.
  if (!w.is_complete()) throw Error(ErrorCode::Unbounded, "polytope is unbounded or normals do not span");

  CanonicalPoint cp = canonical_point(w);
  DelzantReport rep;
  rep.d_crit = cp.d_crit;
  rep.trop_max = trop_eval(w, cp.d_crit);
  rep.interior = true;
  for (const auto& f : inst.facets) {
    rep.slacks.push_back(dot(f.normal, cp.d_crit) + f.constant);
    if (!(rep.slacks.back() > 0)) rep.interior = false;
  }
  if (order > 0) {
    rep.critical = solve_critical(w, order);
    rep.nondegeneracy = check_nondegenerate(w, *rep.critical, samples, seed);
  }
  return rep;
}

}  // namespace tropcrit

#endif  // TROPCRIT_DELZANT_HPP
