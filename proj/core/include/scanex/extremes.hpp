#pragma once

// Approximations for the distribution of the maximum of a stationary
// 1-dependent sequence, with explicit error coefficients.
//
// Notation: p_n, q_n as in sequences.hpp; C(z) = 1 + sum_{k>=1} (-1)^k p_{k-1} z^k.
// All bounds hold for 0 < p_1 <= alpha <= 0.1.

#include <optional>

#include "scanex/sequences.hpp"

namespace scanex {

inline constexpr double kMaxAlpha = 0.1;
inline constexpr double kLegacyMaxP1 = 0.025;
/// Default gap between l and t2^3; the coefficient tables are built with it.
inline constexpr double kDefaultLMargin = 1e-4;

struct CubicRoot {
  double t2 = 0.0;  ///< root of alpha t^3 - t + 1 in (1, 1/sqrt(3 alpha))
  double t2_cubed = 0.0;
};

/// Root of alpha t^3 - t + 1 = 0 bracketed by (1, 1/sqrt(3 alpha)).
/// Throws DomainError unless 0 < alpha <= 0.1.
CubicRoot solve_cubic_t2(double alpha);

/// All alpha-dependent constants of the approximation bounds.
struct ErrorCoefficients {
  double alpha = 0.0;
  double t2 = 0.0;
  double l = 0.0;      ///< t2^3 + margin; lambda lies in (1, 1 + l p_1)
  double eta = 0.0;    ///< 1 + l alpha
  double K = 0.0;      ///< bound on |lambda - center| / p_1^3
  double Lcoef = 0.0;
  double Ecoef = 0.0;
  double Gamma = 0.0;  ///< Lcoef + Ecoef, bound on |q_n lambda^n - center| / p_1^3

  double lambda_c1_coefficient() const { return 1.0 + alpha * K; }
  double qn_c2_coefficient() const { return 3.0 + alpha * Gamma; }
};

/// Throws DomainError unless 0 < alpha <= 0.1 and l_margin >= 0.
ErrorCoefficients error_coefficients(double alpha, double l_margin = kDefaultLMargin);

/// Constants of the earlier (p_1 <= 0.025) bounds: 87 p_1^3 and 561 p_1^3.
struct LegacyBounds {
  double lambda_bound = 0.0;
  double qn_bound = 0.0;
};

/// Empty when p_1 > 0.025. Throws DomainError for p_1 < 0.
std::optional<LegacyBounds> legacy_bounds(double p1);

/// Legacy error for approximating q_n by the two-term formula:
/// {9 + 561 a + 3.3 n [1 + 4.7 n a^2]} a^2 with a = 1 - q_1.
/// Empty when 1 - q_1 > 0.025.
std::optional<double> legacy_qn_error(double q1, long n);

struct SeriesValue {
  double value = 0.0;
  double tail_bound = 0.0;  ///< majorant of the omitted terms
  bool within_tolerance = false;
};

/// Truncated C(z) using every stored term, with a closed-form majorant of the
/// remainder built from p_n <= p_1^floor((n+1)/2).
/// Throws DomainError unless z >= 0 and z sqrt(p_1) < 1.
SeriesValue c_series_eval(const PSequence& p, double z, double tol);

/// Closed-form sum_{k >= first} p1^floor(k/2) z^k; requires p1 z^2 < 1.
double c_series_tail_majorant(double p1, double z, long first);

struct LambdaResult {
  double lambda = 1.0;
  double bracket_low = 1.0;
  double bracket_high = 1.0;
  double center_T1 = 1.0;  ///< 1+p1-p2+p3-p4+2p1^2+3p2^2-5p1p2
  double center_C1 = 1.0;  ///< 1+p1-p2+2(p1-p2)^2
  double bound_T1 = 0.0;   ///< K p1^3
  double bound_C1 = 0.0;   ///< (1 + alpha K) p1^2
  double residual = 0.0;   ///< truncated C(lambda)
  double tail_bound = 0.0; ///< series remainder majorant at bracket_high
};

/// Tail majorant required at the right end of the bracket.
inline constexpr double kLambdaTailTolerance = 1e-13;
inline constexpr double kLambdaBracketWidth = 1e-13;

/// Unique root of C(z) in (1, 1 + l p_1), located by bisection.
/// Requires 0 <= p_1 <= alpha <= 0.1 and p stored at least through index 4
/// with a remainder majorant below 1e-13 at 1 + l p_1 (LengthError otherwise).
LambdaResult solve_lambda(const PSequence& p, double alpha,
                          double l_margin = kDefaultLMargin);

/// Smallest K such that storing p_0..p_K leaves a remainder majorant of at
/// most `tol` at z.
long required_p_terms(double p1, double z, double tol);

struct QnLambdaCenters {
  double mu1 = 1.0;  ///< 1-p2+2p3-3p4+p1^2+6p2^2-6p1p2
  double nu1 = 1.0;  ///< 1-p2
};

QnLambdaCenters approx_qnlambda_centers(const PSequence& p);

struct QnLambdaBounds {
  double bound_T2 = 0.0;  ///< Gamma p1^3
  double bound_C2 = 0.0;  ///< (3 + alpha Gamma) p1^2
};

QnLambdaBounds qnlambda_bounds(const ErrorCoefficients& c, double p1);

struct Approximation {
  double value = 1.0;
  double delta = 0.0;        ///< coefficient multiplying (1-q1)^2 or (1-q1)^3
  double error_bound = 0.0;  ///< delta * (1-q1)^power
};

/// q_n ~ (2q1-q2)/[1+q1-q2+2(q1-q2)^2]^n,
/// error <= {3+Gamma(1-q1)+n[1+K(1-q1)]}(1-q1)^2.
///
/// alpha defaults to 1-q1. Empty when 1-q1 > 0.1; DomainError when alpha is
/// outside (0, 0.1] or below 1-q1, or the q's are not ordered.
std::optional<Approximation> approx_qn_T4(double q1, double q2, long n,
                                          std::optional<double> alpha = {});

/// q_n ~ [6(q1-q2)^2+4q3-3q4]/[1+q1-q2+q3-q4+2q1^2+3q2^2-5q1q2]^n,
/// error <= [Gamma + n K](1-q1)^3. Same applicability rules as approx_qn_T4.
std::optional<Approximation> approx_qn_T3(double q1, double q2, double q3, double q4,
                                          long n, std::optional<double> alpha = {});

/// 1 - approx_qn_T4 evaluated from the deficits a_k = 1 - q_k. When the q_k are
/// close to 1 the deficits carry full relative precision while the q_k do
/// not, so this form resolves differences far below the spacing of doubles
/// near 1. No range check: callers pair it with approx_qn_T4.
double approx_qn_T4_deficit(double a1, double a2, long n);

/// 1 - approx_qn_T3 from the deficits a_k = 1 - q_k, k = 1..4.
double approx_qn_T3_deficit(double a1, double a2, double a3, double a4, long n);

}  // namespace scanex
