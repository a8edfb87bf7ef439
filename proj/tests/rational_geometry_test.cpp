#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <optional>
#include <random>

#include "tropcrit/linalg.hpp"
#include "tropcrit/lp.hpp"
#include "tropcrit/polytope.hpp"

using namespace tropcrit;

namespace {

Rational q(long n, long d = 1) { return ratio(n, d); }

RatVector vec(std::initializer_list<Rational> xs) { return RatVector(xs); }

// Determinant by cofactor expansion; fine for the 3x3 systems below.
Rational det(const RatMatrix& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Rational s = 0;
  for (std::size_t c = 0; c < n; ++c) {
    RatMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      RatVector row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    Rational term = m[0][c] * det(minor);
    s += (c % 2 == 0) ? term : Rational(-term);
  }
  return s;
}

// Minimal c with (c, 0) in hull{(c_i, v_i)} by enumerating every affinely
// independent subset of size dim + 1 (Caratheodory) and solving by Cramer's rule.
std::optional<Rational> brute_lowest(const std::vector<Rational>& c, const RatMatrix& v) {
  const std::size_t n = v.size(), r = v.front().size();
  std::optional<Rational> best;
  std::vector<std::size_t> idx(r + 1);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == r + 1) {
      // [v_i; 1] lambda = [0; 1]
      RatMatrix a(r + 1, RatVector(r + 1));
      for (std::size_t k = 0; k <= r; ++k) {
        for (std::size_t j = 0; j < r; ++j) a[j][k] = v[idx[k]][j];
        a[r][k] = 1;
      }
      Rational d = det(a);
      if (d == 0) return;
      Rational val = 0;
      for (std::size_t k = 0; k <= r; ++k) {
        RatMatrix ak = a;
        for (std::size_t j = 0; j <= r; ++j) ak[j][k] = (j == r) ? 1 : 0;
        Rational lambda = det(ak) / d;
        if (lambda < 0) return;
        val += lambda * c[idx[k]];
      }
      if (!best || val < *best) best = val;
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  // Degenerate supports (0 on a lower-dimensional face) are covered by the
  // affinely independent subsets of any complete configuration.
  return best;
}

}  // namespace

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(parse_rational("3/6"), q(1, 2));
  EXPECT_EQ(parse_rational("-4"), q(-4));
  EXPECT_EQ(to_string(parse_rational("10/4")), "5/2");
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("0.5"), Error);
  EXPECT_THROW(parse_rational(""), Error);
  EXPECT_TRUE(is_primitive(vec({q(2), q(3)})));
  EXPECT_FALSE(is_primitive(vec({q(2), q(4)})));
  EXPECT_FALSE(is_primitive(vec({q(1, 2), q(1)})));
}

TEST(ExtendedRational, OrderAndArithmetic) {
  auto inf = ExtendedRational::infinity();
  EXPECT_LT(ExtendedRational(q(5)), inf);
  EXPECT_EQ(inf + ExtendedRational(q(1)), inf);
  EXPECT_EQ(ExtendedRational(q(1, 2)) + ExtendedRational(q(1, 3)), ExtendedRational(q(5, 6)));
  EXPECT_EQ(min(inf, ExtendedRational(q(2))), ExtendedRational(q(2)));
}

TEST(LinearProgram, SmallExamples) {
  // min c s.t. (c, 0) = r1 (0, 1) + r2 (1, -1), r >= 0, sum r = 1.
  LowestPoint lp = lowest_point({q(0), q(1)}, {{q(1)}, {q(-1)}});
  EXPECT_EQ(lp.height, q(1, 2));
  EXPECT_EQ(lp.weights, vec({q(1, 2), q(1, 2)}));

  auto res = lp_solve(vec({q(1)}), {}, {{vec({q(1)}), q(3)}});
  ASSERT_TRUE(res.optimal());
  EXPECT_EQ(res.optimum, q(3));

  LinearProgram bad(1);
  bad.free_var[0] = true;
  bad.add(vec({q(1)}), Sense::GreaterEqual, q(1));
  bad.add(vec({q(1)}), Sense::LessEqual, q(0));
  EXPECT_EQ(lp_solve(bad).status, LPStatus::Infeasible);

  LinearProgram unb(1);
  unb.free_var[0] = true;
  unb.objective[0] = 1;
  EXPECT_EQ(lp_solve(unb).status, LPStatus::Unbounded);
}

TEST(LinearProgram, WitnessesAreExact) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> ent(-4, 4);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 3, m = 4;
    LinearProgram lp(n);
    for (std::size_t j = 0; j < n; ++j) {
      lp.objective[j] = ent(rng);
      lp.free_var[j] = (ent(rng) > 0);
    }
    lp.maximize = ent(rng) > 0;
    for (std::size_t k = 0; k < m; ++k) {
      RatVector row(n);
      for (auto& x : row) x = ent(rng);
      int s = ent(rng);
      lp.add(row, s < -1 ? Sense::LessEqual : (s > 1 ? Sense::GreaterEqual : Sense::Equal), ratio(ent(rng), 2));
    }
    // Keep the problem bounded.
    for (std::size_t j = 0; j < n; ++j) {
      RatVector e = zero_vector(n);
      e[j] = 1;
      lp.add(e, Sense::LessEqual, 10);
      lp.add(e, Sense::GreaterEqual, -10);
    }
    LPResult res = lp_solve(lp);
    if (res.status != LPStatus::Optimal) continue;
    EXPECT_TRUE(lp.feasible(res.witness));
    EXPECT_EQ(dot(lp.objective, res.witness), res.optimum);
  }
}

TEST(Polytope, LowestPointExamples) {
  EXPECT_EQ(lowest_point({q(0), q(1)}, {{q(1)}, {q(-1)}}).height, q(1, 2));
  EXPECT_EQ(lowest_point({q(1), q(1), q(1)}, {{q(1), q(0)}, {q(0), q(1)}, {q(-1), q(-1)}}).height, q(1));
  EXPECT_EQ(lowest_point({q(0), q(0), q(1)}, {{q(1)}, {q(-1)}, {q(2)}}).height, q(0));
  try {
    (void)lowest_point({q(0)}, {{q(1)}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoPointAboveZero);
  }
}

TEST(Polytope, MinimalFaceExamples) {
  RatMatrix pts{{q(0), q(1)}, {q(1), q(-1)}, {q(1), q(2)}};
  EXPECT_EQ(minimal_face_support(pts, vec({q(1, 2), q(0)})).support, (std::vector<std::size_t>{0, 1}));

  RatMatrix square{{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}, {q(1), q(1)}};
  auto center = minimal_face_support(square, vec({q(1, 2), q(1, 2)}));
  EXPECT_EQ(center.support.size(), 4u);
  EXPECT_EQ(minimal_face_support(square, vec({q(1), q(0)})).support, (std::vector<std::size_t>{1}));
  EXPECT_THROW(minimal_face_support(square, vec({q(2), q(0)})), Error);
}

TEST(Polytope, MinimalFaceCertificates) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> ent(-3, 3);
  for (int trial = 0; trial < 60; ++trial) {
    RatMatrix pts(6, RatVector(3));
    for (auto& p : pts)
      for (auto& x : p) x = ent(rng);
    // Target: a random convex combination of two or three points.
    RatVector target = zero_vector(3);
    std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
    std::size_t a = pick(rng), b = pick(rng);
    target = ratio(1, 3) * pts[a] + ratio(2, 3) * pts[b];
    FaceSupport fs = minimal_face_support(pts, target);
    // Certificate: strictly positive weights on S reproducing the target.
    RatVector sum = zero_vector(3);
    Rational total = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      bool in = std::find(fs.support.begin(), fs.support.end(), i) != fs.support.end();
      if (in) EXPECT_GT(fs.weights[i], 0);
      else EXPECT_EQ(fs.weights[i], 0);
      sum = sum + Rational(fs.weights[i]) * pts[i];
      total += fs.weights[i];
    }
    EXPECT_EQ(sum, target);
    EXPECT_EQ(total, 1);
    // Maximality: no point outside S can carry weight.
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (std::find(fs.support.begin(), fs.support.end(), i) != fs.support.end()) continue;
      LinearProgram lp(pts.size());
      lp.maximize = true;
      lp.objective[i] = 1;
      lp.add(RatVector(pts.size(), Rational(1)), Sense::Equal, 1);
      for (std::size_t k = 0; k < 3; ++k) {
        RatVector row;
        for (const auto& p : pts) row.push_back(p[k]);
        lp.add(row, Sense::Equal, target[k]);
      }
      EXPECT_EQ(lp_solve(lp).optimum, 0);
    }
  }
}

TEST(Polytope, LowestPointMatchesEnumeration) {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> ent(-2, 2), cnum(-6, 6), cden(1, 3);
  int checked = 0;
  while (checked < 120) {
    std::size_t r = 1 + static_cast<std::size_t>(checked % 3);
    std::size_t n = r + 1 + static_cast<std::size_t>(checked % (6 - r));
    RatMatrix v(n, RatVector(r));
    std::vector<Rational> c(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (auto& x : v[i]) x = ent(rng);
      c[i] = ratio(cnum(rng), cden(rng));
    }
    if (!interior_point(v, zero_vector(r))) continue;
    auto expected = brute_lowest(c, v);
    ASSERT_TRUE(expected.has_value());
    EXPECT_EQ(lowest_point(c, v).height, *expected);
    ++checked;
  }
}

TEST(Subspace, QuotientExamples) {
  Subspace e(3, {vec({q(1), q(-2), q(0)})});
  EXPECT_TRUE(is_zero(quotient_reduce(vec({q(1), q(-2), q(0)}), e)));
  Subspace zero(3);
  EXPECT_EQ(quotient_reduce(vec({q(1), q(2), q(3)}), zero), vec({q(1), q(2), q(3)}));

  RatVector y = quotient_reduce(vec({q(0), q(1), q(0)}), e);
  EXPECT_EQ(y.size(), 2u);
  EXPECT_FALSE(is_zero(y));
  RatVector back = quotient_lift(y, e);
  EXPECT_TRUE(e.contains(back - vec({q(0), q(1), q(0)})));
}

TEST(Subspace, ReduceLiftIsIdempotent) {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> ent(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 4;
    RatMatrix span(static_cast<std::size_t>(1 + trial % 3), RatVector(n));
    for (auto& row : span)
      for (auto& x : row) x = ent(rng);
    Subspace s(n, span);
    RatVector v(n);
    for (auto& x : v) x = ent(rng);
    RatVector once = quotient_reduce(v, s);
    EXPECT_EQ(quotient_reduce(quotient_lift(once, s), s), once);
    EXPECT_TRUE(s.contains(quotient_lift(once, s) - v));
    for (const auto& b : span) EXPECT_TRUE(is_zero(quotient_reduce(b, s)));
  }
}

TEST(Subspace, VanishingHyperplane) {
  EXPECT_EQ(solve_vanishing_hyperplane(Subspace(2, {vec({q(1), q(-2)})})), vec({q(1, 2)}));
  EXPECT_EQ(solve_vanishing_hyperplane(Subspace(3, {vec({q(0), q(1), q(0)}), vec({q(0), q(0), q(1)})})),
            vec({q(0), q(0)}));
  EXPECT_EQ(solve_vanishing_hyperplane(Subspace(3, {vec({q(1), q(-2), q(0)}), vec({q(0), q(0), q(1)})})),
            vec({q(1, 2), q(0)}));
  try {
    (void)solve_vanishing_hyperplane(Subspace(3, {vec({q(1), q(0), q(0)}), vec({q(0), q(1), q(0)})}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotTransversal);
  }
  EXPECT_THROW(solve_vanishing_hyperplane(Subspace(3, {vec({q(0), q(1), q(0)})})), Error);
}
