#ifndef TROPCRIT_TORIC_HPP
#define TROPCRIT_TORIC_HPP

#include <cstddef>
#include <vector>

#include "tropcrit/laurent.hpp"
#include "tropcrit/newton.hpp"

namespace tropcrit {

struct ToricInstance {
  RatMatrix rays;
  RatVector coefficients;

  std::size_t dim() const { return rays.empty() ? 0 : rays.front().size(); }

  void validate() const {
    if (rays.size() != coefficients.size())
      throw Error(ErrorCode::DimensionMismatch, "need one divisor coefficient per ray");
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (rays[i].size() != dim()) throw Error(ErrorCode::DimensionMismatch, "rays have different lengths");
      if (!is_primitive(rays[i])) throw Error(ErrorCode::NonPrimitiveRay, "ray " + to_string(rays[i]) + " is not primitive");
      for (std::size_t j = 0; j < i; ++j)
        if (rays[j] == rays[i]) throw Error(ErrorCode::InvalidArgument, "repeated ray " + to_string(rays[i]));
    }
  }
};

/// W_D = sum_i t^{c_i} x^{v_i}.
inline LaurentPoly divisor_potential(const ToricInstance& inst) {
  inst.validate();
  std::vector<LaurentTerm> terms;
  for (std::size_t i = 0; i < inst.rays.size(); ++i)
    terms.push_back({PuiseuxSeries::monomial(1.0, inst.coefficients[i]), inst.rays[i]});
  return LaurentPoly(inst.dim(), std::move(terms));
}

struct ToricReport {
  RatVector d_crit;
  Rational trop_max;
  bool integral_divisor = false;
  bool integrally_balanced = false;
  RatVector distinguished;  // c_i + <v_i, d_crit>, whose canonical point is 0
  std::vector<NewtonStage> stages;
};

inline ToricReport toric_analyze(const ToricInstance& inst) {
  LaurentPoly w = divisor_potential(inst);
  if (!w.is_complete())
    throw Error(ErrorCode::NotComplete, "fan is not complete: the rays do not positively span the lattice");
  CanonicalPoint cp = canonical_point(w);
  ToricReport rep;
  rep.d_crit = cp.d_crit;
  rep.trop_max = trop_eval(w, cp.d_crit);
  rep.integral_divisor = is_integral(inst.coefficients);
  rep.integrally_balanced = rep.integral_divisor && is_integral(cp.d_crit);
  for (std::size_t i = 0; i < inst.rays.size(); ++i)
    rep.distinguished.push_back(inst.coefficients[i] + dot(inst.rays[i], cp.d_crit));
  rep.stages = cp.stages;
  return rep;
}

}  // namespace tropcrit

#endif  // TROPCRIT_TORIC_HPP
