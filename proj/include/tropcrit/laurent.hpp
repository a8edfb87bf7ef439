#ifndef TROPCRIT_LAURENT_HPP
#define TROPCRIT_LAURENT_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tropcrit/error.hpp"
#include "tropcrit/polytope.hpp"
#include "tropcrit/puiseux.hpp"
#include "tropcrit/rational.hpp"

namespace tropcrit {

struct LaurentTerm {
  PuiseuxSeries coeff;
  RatVector exponent;
};

/// W = sum_i gamma_i x^{v_i} on an r-dimensional torus, with every gamma_i
/// positive (positive leading coefficient) and the v_i pairwise distinct.
class LaurentPoly {
 public:
  LaurentPoly() = default;

  LaurentPoly(std::size_t dim, std::vector<LaurentTerm> terms) : dim_(dim), terms_(std::move(terms)) {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const auto& t = terms_[i];
      if (t.exponent.size() != dim_)
        throw Error(ErrorCode::DimensionMismatch, "term " + std::to_string(i) + " has exponent of wrong length");
      if (!t.coeff.is_positive())
        throw Error(ErrorCode::NotPositive, "coefficient of term " + std::to_string(i) + " is not positive: " +
                                                t.coeff.str());
      for (std::size_t j = 0; j < i; ++j)
        if (terms_[j].exponent == t.exponent)
          throw Error(ErrorCode::InvalidArgument, "repeated exponent " + to_string(t.exponent));
    }
  }

  /// Builds a polynomial from terms that may repeat exponents; repeated terms
  /// are summed. Zero sums are dropped.
  static LaurentPoly from_sum(std::size_t dim, const std::vector<LaurentTerm>& terms) {
    std::vector<LaurentTerm> merged;
    for (const auto& t : terms) {
      auto it = std::find_if(merged.begin(), merged.end(),
                             [&](const LaurentTerm& m) { return m.exponent == t.exponent; });
      if (it == merged.end())
        merged.push_back(t);
      else
        it->coeff = it->coeff + t.coeff;
    }
    std::erase_if(merged, [](const LaurentTerm& t) { return t.coeff.is_zero(); });
    return LaurentPoly(dim, std::move(merged));
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return terms_.size(); }
  const std::vector<LaurentTerm>& terms() const noexcept { return terms_; }
  const LaurentTerm& term(std::size_t i) const { return terms_.at(i); }

  /// c_i = Val(gamma_i).
  Rational valuation(std::size_t i) const { return terms_.at(i).coeff.val().value(); }

  std::vector<Rational> valuations() const {
    std::vector<Rational> out;
    for (std::size_t i = 0; i < terms_.size(); ++i) out.push_back(valuation(i));
    return out;
  }

  RatMatrix exponents() const {
    RatMatrix out;
    for (const auto& t : terms_) out.push_back(t.exponent);
    return out;
  }

  /// Points (c_i, v_i) spanning the augmented Newton polytope.
  RatMatrix augmented_points() const {
    RatMatrix out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      RatVector p{valuation(i)};
      p.insert(p.end(), terms_[i].exponent.begin(), terms_[i].exponent.end());
      out.push_back(std::move(p));
    }
    return out;
  }

  /// Newton polytope full-dimensional with 0 in its interior.
  bool is_complete() const { return dim_ > 0 && interior_point(exponents(), zero_vector(dim_)); }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (i) s += " + ";
      s += "(" + terms_[i].coeff.str() + ")*x^" + to_string(terms_[i].exponent);
    }
    return s.empty() ? "0" : s;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.dim_ != b.dim_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].coeff == b.terms_[i].coeff) || a.terms_[i].exponent != b.terms_[i].exponent) return false;
    return true;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<LaurentTerm> terms_;
};

inline void require_complete(const LaurentPoly& w) {
  if (!w.is_complete())
    throw Error(ErrorCode::NotComplete,
                "the Newton polytope must be full-dimensional with 0 in its interior; a positive critical point "
                "exists if and only if this holds");
}

}  // namespace tropcrit

#endif  // TROPCRIT_LAURENT_HPP
