#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "scanex/errors.hpp"
#include "scanex/extremes.hpp"
#include "support/oracles.hpp"

namespace scanex {
namespace {

TEST(SolveCubic, MatchesTrigonometricRoot) {
  for (double alpha : {0.1, 0.05, 0.025, 0.01, 0.001}) {
    const auto r = solve_cubic_t2(alpha);
    EXPECT_NEAR(r.t2, oracle::cubic_t2_trig(alpha), 1e-12) << alpha;
    EXPECT_DOUBLE_EQ(r.t2_cubed, r.t2 * r.t2 * r.t2);
  }
}

TEST(SolveCubic, ResidualAndBracketOnGrid) {
  for (int i = 1; i <= 1000; ++i) {
    const double alpha = 0.001 + (0.1 - 0.001) * i / 1000.0;
    const auto r = solve_cubic_t2(alpha);
    EXPECT_LT(std::abs(alpha * r.t2 * r.t2 * r.t2 - r.t2 + 1.0), 1e-12);
    EXPECT_GT(r.t2, 1.0);
    EXPECT_LT(r.t2, 1.0 / std::sqrt(3.0 * alpha));
  }
}

TEST(SolveCubic, PrintedLValues) {
  // Printed l values to 4 d.p.
  EXPECT_NEAR(solve_cubic_t2(0.1).t2_cubed, 1.5347, 1e-4);
  EXPECT_NEAR(solve_cubic_t2(0.01).t2_cubed, 1.0313, 1e-4);
}

TEST(SolveCubic, SmallAlphaTendsToOne) {
  const auto r = solve_cubic_t2(1e-8);
  EXPECT_NEAR(r.t2, 1.0 + 1e-8, 1e-14);
  EXPECT_NEAR(r.t2_cubed, 1.0 + 3e-8, 1e-13);
}

TEST(SolveCubic, RejectsAlphaOutsideRange) {
  EXPECT_THROW(solve_cubic_t2(0.0), DomainError);
  EXPECT_THROW(solve_cubic_t2(0.2), DomainError);
  EXPECT_THROW(solve_cubic_t2(-0.01), DomainError);
  EXPECT_NO_THROW(solve_cubic_t2(0.1));
}

TEST(ErrorCoefficients, TableValues) {
  struct Row {
    double alpha, l, K, c1, gamma, c2;
  };
  // Tables 1 and 2.
  const Row rows[] = {
      {0.100, 1.5347, 38.6302, 4.8630, 480.696, 51.0696},
      {0.050, 1.1893, 21.2853, 2.0642, 180.532, 12.0266},
      {0.025, 1.0835, 17.5663, 1.4391, 145.202, 6.6300},
      {0.010, 1.0313, 15.9265, 1.1592, 131.438, 4.3143},
  };
  for (const auto& row : rows) {
    const auto c = error_coefficients(row.alpha);
    EXPECT_NEAR(c.l, row.l, 1e-4) << row.alpha;
    EXPECT_NEAR(c.K, row.K, 1e-3) << row.alpha;
    EXPECT_NEAR(c.lambda_c1_coefficient(), row.c1, 1e-4) << row.alpha;
    EXPECT_NEAR(c.Gamma, row.gamma, 1e-2) << row.alpha;
    EXPECT_NEAR(c.qn_c2_coefficient(), row.c2, 1e-3) << row.alpha;
  }
}

TEST(ErrorCoefficients, Invariants) {
  double prev_k = 0.0, prev_l = 0.0, prev_e = 0.0;
  for (int i = 1; i <= 200; ++i) {
    const double alpha = 0.1 * i / 200.0;
    const auto c = error_coefficients(alpha);
    EXPECT_NEAR(alpha * c.t2 * c.t2 * c.t2 - c.t2 + 1.0, 0.0, 1e-12);
    EXPECT_DOUBLE_EQ(c.l, c.t2 * c.t2 * c.t2 + kDefaultLMargin);
    EXPECT_DOUBLE_EQ(c.eta, 1.0 + c.l * alpha);
    EXPECT_DOUBLE_EQ(c.Gamma, c.Lcoef + c.Ecoef);
    EXPECT_LT(alpha * (1.0 + c.l * alpha) * (1.0 + c.l * alpha), 1.0);
    EXPECT_GE(c.K, prev_k);
    EXPECT_GE(c.Lcoef, prev_l);
    EXPECT_GE(c.Ecoef, prev_e);
    prev_k = c.K;
    prev_l = c.Lcoef;
    prev_e = c.Ecoef;
  }
}

TEST(ErrorCoefficients, SmallAlphaLimit) {
  // At alpha -> 0 with l = 1: K = 11 + 2*2 = 15, L = 3*15 + 55, E = 0.1 + 48/2.
  const auto c = error_coefficients(1e-12, 0.0);
  EXPECT_NEAR(c.K, 15.0, 1e-9);
  EXPECT_NEAR(c.Lcoef, 100.0, 1e-8);
  EXPECT_NEAR(c.Ecoef, 24.1, 1e-8);
}

TEST(ErrorCoefficients, GrowsWithMargin) {
  const auto tight = error_coefficients(0.05, 0.0);
  const auto loose = error_coefficients(0.05, 1e-3);
  EXPECT_GT(loose.K, tight.K);
  EXPECT_GT(loose.Gamma, tight.Gamma);
  EXPECT_THROW(error_coefficients(0.05, -1.0), DomainError);
}

TEST(LegacyBounds, ConstantsAndRange) {
  const auto b = legacy_bounds(0.025);
  ASSERT_TRUE(b);
  EXPECT_NEAR(b->lambda_bound, 1.359375e-3, 1e-18);
  EXPECT_NEAR(legacy_bounds(0.01)->qn_bound, 5.61e-4, 1e-18);
  EXPECT_FALSE(legacy_bounds(0.03));
  EXPECT_THROW(legacy_bounds(-1.0), DomainError);
}

TEST(LegacyBounds, NewCoefficientsAreSmaller) {
  for (double p1 : {0.001, 0.01, 0.02, 0.025}) {
    const auto c = error_coefficients(0.025);
    const auto old = legacy_bounds(p1);
    ASSERT_TRUE(old);
    EXPECT_LT(c.K * p1 * p1 * p1, old->lambda_bound);
    EXPECT_LT(c.Gamma * p1 * p1 * p1, old->qn_bound);
  }
}

TEST(CSeries, DegenerateSequence) {
  const auto p = PSequence({1.0, 0.0, 0.0, 0.0});
  const auto v = c_series_eval(p, 1.0, 1e-14);
  EXPECT_DOUBLE_EQ(v.value, 0.0);
  EXPECT_EQ(v.tail_bound, 0.0);
  EXPECT_TRUE(v.within_tolerance);
}

TEST(CSeries, GeometricClosedForm) {
  const double p1 = 0.05;
  const auto p = PSequence::geometric(p1, 40);
  for (double z : {0.5, 1.0, 1.02, 1.0 / (1.0 - p1)}) {
    const auto v = c_series_eval(p, z, 1e-14);
    const double closed = 1.0 - z / (1.0 + p1 * z);
    EXPECT_NEAR(v.value, closed, v.tail_bound + 1e-15) << z;
    EXPECT_TRUE(v.within_tolerance);
  }
  EXPECT_NEAR(c_series_eval(p, 1.0 / (1.0 - p1), 1e-14).value, 0.0, 1e-14);
}

TEST(CSeries, TailMajorantMatchesDirectSum) {
  const double p1 = 0.07, z = 1.1;
  for (long first : {2L, 3L, 10L, 11L}) {
    double direct = 0.0;
    for (long k = first; k < first + 400; ++k) {
      direct += std::pow(p1, static_cast<double>(k / 2)) * std::pow(z, static_cast<double>(k));
    }
    EXPECT_NEAR(c_series_tail_majorant(p1, z, first), direct, 1e-15 + 1e-12 * direct) << first;
  }
}

TEST(CSeries, ShortSequenceReportsAchievableTail) {
  const auto p = PSequence::geometric(0.1, 3);
  const auto v = c_series_eval(p, 1.1, 1e-14);
  EXPECT_FALSE(v.within_tolerance);
  EXPECT_GT(v.tail_bound, 1e-14);
}

TEST(CSeries, RejectsDivergentArgument) {
  const auto p = PSequence::geometric(0.1, 10);
  EXPECT_THROW(c_series_eval(p, 4.0, 1e-14), DomainError);
  EXPECT_THROW(c_series_eval(p, -1.0, 1e-14), DomainError);
}

TEST(SolveLambda, GeometricFamily) {
  const double p1 = 0.05;
  const auto r = solve_lambda(PSequence::geometric(p1, 60), 0.05);
  EXPECT_NEAR(r.lambda, 1.0 / (1.0 - p1), 1e-12);
  EXPECT_NEAR(std::abs(r.lambda - r.center_T1), 6.19e-4, 5e-7);
  EXPECT_NEAR(r.bound_T1, error_coefficients(0.05).K * p1 * p1 * p1, 1e-15);
  EXPECT_LE(std::abs(r.lambda - r.center_T1), r.bound_T1);
  EXPECT_LE(std::abs(r.lambda - r.center_C1), r.bound_C1);
  EXPECT_GT(r.lambda, r.bracket_low);
  EXPECT_LT(r.lambda, r.bracket_high);
  EXPECT_LE(std::abs(r.residual), r.tail_bound + 1e-12);
}

TEST(SolveLambda, ZeroP1) {
  const auto r = solve_lambda(PSequence({1.0, 0.0, 0.0, 0.0, 0.0}), 0.05);
  EXPECT_EQ(r.lambda, 1.0);
  EXPECT_EQ(r.bound_T1, 0.0);
  EXPECT_EQ(r.bound_C1, 0.0);
}

TEST(SolveLambda, Preconditions) {
  EXPECT_THROW(solve_lambda(PSequence::geometric(0.06, 40), 0.05), DomainError);
  EXPECT_THROW(solve_lambda(PSequence::geometric(0.05, 40), 0.2), DomainError);
  EXPECT_THROW(solve_lambda(PSequence::geometric(0.05, 6), 0.05), LengthError);
  EXPECT_THROW(solve_lambda(PSequence::geometric(1e-9, 3), 0.05), LengthError);
  EXPECT_EQ(required_p_terms(0.0, 1.0, 1e-13), 0);
}

TEST(SolveLambda, RootContainmentOnRandomSequences) {
  // Random sequences satisfying the p invariants, built as products of
  // conditional ratios bounded by the 1-dependence inequality.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double p1 = 0.1 * unit(rng);
    std::vector<double> v{1.0, p1};
    for (std::size_t n = 2; n <= 40; ++n) {
      const double cap = std::min(v.back(), std::pow(p1, static_cast<double>((n + 1) / 2)));
      v.push_back(cap * unit(rng));
    }
    const PSequence p(v);
    const double alpha = std::min(0.1, p1 * (1.0 + unit(rng)));
    const auto r = solve_lambda(p, std::max(alpha, p1));
    EXPECT_GT(r.lambda, 1.0);
    EXPECT_LT(r.lambda, r.bracket_high);
    EXPECT_LE(std::abs(r.residual), r.tail_bound + 1e-12);
  }
}

TEST(Centers, ZeroAndGeometric) {
  const auto zero = approx_qnlambda_centers(PSequence({1.0, 0.0, 0.0, 0.0, 0.0}));
  EXPECT_EQ(zero.mu1, 1.0);
  EXPECT_EQ(zero.nu1, 1.0);

  const double p1 = 0.05;
  const auto c = approx_qnlambda_centers(PSequence::geometric(p1, 4));
  // 1 - 4 p^3 + 3 p^4 for the geometric family
  EXPECT_NEAR(c.mu1, 1.0 - 4.0 * p1 * p1 * p1 + 3.0 * std::pow(p1, 4), 1e-15);
  EXPECT_NEAR(c.mu1, 0.99951875, 1e-12);
  EXPECT_NEAR(c.nu1, 1.0 - p1 * p1, 1e-15);
  const auto b = qnlambda_bounds(error_coefficients(p1), p1);
  EXPECT_LE(std::abs(1.0 - c.mu1), b.bound_T2);  // q_n lambda^n = 1 here
  EXPECT_LE(std::abs(1.0 - c.nu1), b.bound_C2);
}

TEST(ApproxT4, DegenerateAndRange) {
  const auto a = approx_qn_T4(1.0, 1.0, 7);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->value, 1.0);
  EXPECT_EQ(a->error_bound, 0.0);
  EXPECT_FALSE(approx_qn_T4(0.85, 0.80, 5));
  EXPECT_THROW(approx_qn_T4(0.95, 0.96, 5), DomainError);
  EXPECT_THROW(approx_qn_T4(0.95, 0.90, 0), DomainError);
  EXPECT_THROW(approx_qn_T4(0.95, 0.90, 5, 0.01), DomainError);  // alpha < 1 - q1
}

TEST(ApproxT4, RoundedTableInputs) {
  // Printed 5 d.p. inputs land within 1e-4 of the printed Approx column.
  EXPECT_NEAR(approx_qn_T4(0.99716, 0.99500, 9)->value, 0.98001, 1e-4);
  EXPECT_NEAR(approx_qn_T4(0.99813, 0.99677, 14)->value, 0.98061, 1e-4);
}

TEST(ApproxT4, BoundFormula) {
  const double q1 = 0.97, q2 = 0.945, a = 0.03;
  const auto c = error_coefficients(a);
  const auto r = approx_qn_T4(q1, q2, 12);
  ASSERT_TRUE(r);
  EXPECT_NEAR(r->delta, 3.0 + c.Gamma * a + 12.0 * (1.0 + c.K * a), 1e-12);
  EXPECT_NEAR(r->error_bound, r->delta * a * a, 1e-15);
}

TEST(ApproxT3, AllOnes) {
  const auto r = approx_qn_T3(1.0, 1.0, 1.0, 1.0, 9);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->value, 1.0);
  EXPECT_EQ(r->error_bound, 0.0);
  EXPECT_FALSE(approx_qn_T3(0.8, 0.7, 0.6, 0.5, 3));
  EXPECT_THROW(approx_qn_T3(0.99, 0.98, 0.985, 0.97, 3), DomainError);
}

TEST(ApproxT3, AgreesWithT4WithinBothBounds) {
  // Random q's of an i.i.d. sequence with 1 - q1 near 1e-3 and beyond.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0005, 0.1);
  for (int i = 0; i < 200; ++i) {
    const double p1 = i == 0 ? 1e-3 : unit(rng);
    const double q1 = 1.0 - p1;
    const long n = 2 + i % 20;
    const auto t3 = approx_qn_T3(q1, q1 * q1, std::pow(q1, 3), std::pow(q1, 4), n);
    const auto t4 = approx_qn_T4(q1, q1 * q1, n);
    ASSERT_TRUE(t3 && t4);
    EXPECT_LE(std::abs(t3->value - t4->value), t3->error_bound + t4->error_bound);
  }
}

}  // namespace
}  // namespace scanex
