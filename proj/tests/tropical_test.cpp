#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "corpus.hpp"
#include "tropcrit/tropical.hpp"

using namespace tropcrit;

namespace {

Rational q(long n, long d = 1) { return ratio(n, d); }

LaurentTerm term(double c, const Rational& val, RatVector v) { return {PuiseuxSeries::monomial(c, val), std::move(v)}; }

LaurentPoly x_plus_t_over_x() { return LaurentPoly(1, {term(1, q(0), {q(1)}), term(1, q(1), {q(-1)})}); }

LaurentPoly p2_potential() {
  return LaurentPoly(2, {term(1, q(1), {q(1), q(0)}), term(1, q(1), {q(0), q(1)}), term(1, q(1), {q(-1), q(-1)})});
}

LaurentPoly two_step() {
  return LaurentPoly(2, {term(1, q(0), {q(1), q(0)}), term(1, q(1), {q(-1), q(0)}), term(1, q(1), {q(0), q(1)}),
                         term(1, q(1), {q(0), q(-1)})});
}

LaurentPoly simplex_potential(std::size_t r) {
  std::vector<LaurentTerm> terms;
  for (std::size_t i = 0; i < r; ++i) {
    RatVector e = zero_vector(r);
    e[i] = 1;
    terms.push_back(term(1, q(0), e));
  }
  terms.push_back(term(1, q(1), RatVector(r, q(-1))));
  return LaurentPoly(r, terms);
}

}  // namespace

TEST(LaurentPoly, Validation) {
  EXPECT_THROW(LaurentPoly(1, {term(1, q(0), {q(1), q(0)})}), Error);
  try {
    LaurentPoly(1, {term(-1, q(0), {q(1)})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPositive);
  }
  EXPECT_THROW(LaurentPoly(1, {term(1, q(0), {q(1)}), term(2, q(1), {q(1)})}), Error);
  auto merged = LaurentPoly::from_sum(1, {term(1, q(0), {q(1)}), term(2, q(1), {q(1)})});
  EXPECT_EQ(merged.size(), 1u);
  EXPECT_EQ(merged.term(0).coeff.size(), 2u);
}

TEST(LaurentPoly, Completeness) {
  EXPECT_TRUE(x_plus_t_over_x().is_complete());
  EXPECT_TRUE(p2_potential().is_complete());
  EXPECT_FALSE(LaurentPoly(2, {term(1, q(0), {q(1), q(0)}), term(1, q(0), {q(1), q(1)})}).is_complete());
  // 0 on the boundary of the Newton polytope.
  EXPECT_FALSE(LaurentPoly(2, {term(1, q(0), {q(1), q(0)}), term(1, q(0), {q(-1), q(0)}), term(1, q(0), {q(0), q(1)})})
                   .is_complete());
  // Full-dimensional in a line but not in the plane.
  EXPECT_FALSE(LaurentPoly(2, {term(1, q(0), {q(1), q(1)}), term(1, q(0), {q(-1), q(-1)})}).is_complete());
}

TEST(Tropical, EvalExamples) {
  EXPECT_EQ(trop_eval(x_plus_t_over_x(), {q(1, 2)}), q(1, 2));
  EXPECT_EQ(trop_eval(x_plus_t_over_x(), {q(0)}), q(0));
  EXPECT_EQ(trop_eval(p2_potential(), {q(0), q(0)}), q(1));
  EXPECT_THROW(trop_eval(p2_potential(), {q(0)}), Error);
}

TEST(Tropical, MaxExamples) {
  EXPECT_EQ(trop_max(x_plus_t_over_x()), q(1, 2));
  EXPECT_EQ(trop_max(p2_potential()), q(1));
  EXPECT_EQ(trop_max(LaurentPoly(1, {term(1, q(0), {q(1)}), term(1, q(0), {q(-1)})})), q(0));
  try {
    (void)trop_max(LaurentPoly(1, {term(1, q(0), {q(1)})}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotComplete);
  }
}

TEST(Tropical, PolytopeMembership) {
  for (std::size_t r = 1; r <= 4; ++r) {
    LaurentPoly w = simplex_potential(r);
    EXPECT_TRUE(polytope_membership(w, RatVector(r, ratio(1, static_cast<long>(r + 1)))));
    RatVector out(r, q(0));
    out[0] = -1;
    EXPECT_FALSE(polytope_membership(w, out));
    EXPECT_TRUE(polytope_membership(w, zero_vector(r)));  // a vertex of the simplex
  }
}

TEST(Tropical, LevelData) {
  LevelData ld = level_data(two_step(), {q(1, 2), q(0)});
  EXPECT_EQ(ld.deltas, (RatVector{q(0), q(0), q(1, 2), q(1, 2)}));
  ASSERT_EQ(ld.levels.size(), 2u);
  EXPECT_EQ(ld.levels[0].epsilon, q(0));
  EXPECT_EQ(ld.levels[1].epsilon, q(1, 2));
  EXPECT_EQ(ld.levels[1].below, Subspace(2, {{q(1), q(0)}}));

  LaurentPoly tail(1, {term(1, q(0), {q(1)}), term(1, q(0), {q(-1)}), term(1, q(1), {q(2)})});
  EXPECT_EQ(level_data(tail, {q(0)}).deltas, (RatVector{q(0), q(0), q(1)}));
}

TEST(Tropical, CriticalConditionExamples) {
  EXPECT_TRUE(check_tropical_critical(x_plus_t_over_x(), {q(1, 2)}).ok);
  EXPECT_FALSE(check_tropical_critical(x_plus_t_over_x(), {q(0)}).ok);
  auto cert = check_tropical_critical(two_step(), {q(1, 2), q(0)});
  EXPECT_TRUE(cert.ok);
  ASSERT_EQ(cert.levels.size(), 2u);
  for (const auto& lvl : cert.levels) EXPECT_GT(lvl.witness.min_weight, 0);
}

TEST(Tropical, CoefficientConditionExamples) {
  EXPECT_TRUE(check_coeff_conditions(x_plus_t_over_x(), {q(1, 2)}, {0.0}).ok);
  EXPECT_FALSE(check_coeff_conditions(x_plus_t_over_x(), {q(1, 2)}, {1.0}).ok);
  EXPECT_TRUE(check_coeff_conditions(p2_potential(), {q(0), q(0)}, {0.0, 0.0}).ok);
}

TEST(TropicalProperties, Concavity) {
  auto ws = corpus::standard_corpus(30, 41, false);
  std::mt19937 rng(43);
  for (const auto& w : ws) {
    for (int k = 0; k < 10; ++k) {
      RatVector d1(w.dim()), d2(w.dim());
      for (auto& x : d1) x = corpus::random_rational(rng, -3, 3, 4);
      for (auto& x : d2) x = corpus::random_rational(rng, -3, 3, 4);
      Rational lambda = corpus::random_rational(rng, 0, 1, 5);
      RatVector mid = lambda * d1 + Rational(1 - lambda) * d2;
      Rational rhs = lambda * trop_eval(w, d1) + (1 - lambda) * trop_eval(w, d2);
      EXPECT_GE(trop_eval(w, mid), rhs);
    }
  }
}

TEST(TropicalProperties, GridNeverExceedsMax) {
  auto ws = corpus::standard_corpus(24, 47, false);
  for (const auto& w : ws) {
    if (w.dim() > 2 || w.size() > 5) continue;
    const Rational tau = trop_max(w);
    auto s = corpus::scale_instance(w, 8);
    std::vector<std::int64_t> origin(w.dim(), 0);
    std::int64_t best = corpus::grid_max(s, origin, 8, -40, 41);
    EXPECT_LE(ratio(best, s.scale), tau);
  }
}
