#include "scanex/extremes.hpp"

#include <cmath>
#include <string>

#include "scanex/errors.hpp"

namespace scanex {
namespace {

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= kMaxAlpha)) {
    throw DomainError("alpha out of range (0, 0.1]");
  }
}

double cube(double x) { return x * x * x; }

}  // namespace

CubicRoot solve_cubic_t2(double alpha) {
  require_alpha(alpha);
  const auto f = [alpha](double t) { return alpha * t * t * t - t + 1.0; };

  // f(1) = alpha > 0 and f is decreasing up to its minimum at 1/sqrt(3 alpha),
  // where it is negative for alpha <= 0.1.
  double lo = 1.0;
  double hi = 1.0 / std::sqrt(3.0 * alpha);
  double t = 1.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double ft = f(t);
    if (ft == 0.0) break;
    if (ft > 0.0) {
      lo = t;
    } else {
      hi = t;
    }
    const double slope = 3.0 * alpha * t * t - 1.0;
    double next = t - ft / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 1e-14 * t) {
      t = next;
      break;
    }
    t = next;
  }
  return {t, t * t * t};
}

ErrorCoefficients error_coefficients(double alpha, double l_margin) {
  require_alpha(alpha);
  if (!(l_margin >= 0.0)) throw DomainError("l margin must be nonnegative");

  const auto root = solve_cubic_t2(alpha);
  ErrorCoefficients c;
  c.alpha = alpha;
  c.t2 = root.t2;
  c.l = root.t2_cubed + l_margin;
  c.eta = 1.0 + c.l * alpha;

  const double a = alpha;
  const double l = c.l;
  const double one_la = 1.0 + l * a;
  const double d = 1.0 - a * one_la * one_la;
  if (!(d > 0.0)) throw ConsistencyError("alpha (1 + l alpha)^2 >= 1");

  const double head = (11.0 - 3.0 * a) / ((1.0 - a) * (1.0 - a));
  const double body = 2.0 * l * (1.0 + 3.0 * a) *
                      (2.0 + 3.0 * l * a - a * (2.0 - l * a) * one_la * one_la) / cube(d);
  const double k_den = 1.0 - 2.0 * a * one_la / (d * d);
  if (!(k_den > 0.0)) throw ConsistencyError("K denominator is not positive");
  c.K = (head + body) / k_den;

  const double s = 1.0 + a + 3.0 * a * a;
  const double K = c.K;
  c.Lcoef = 3.0 * K * s * (s + K * cube(a)) + std::pow(a, 6) * cube(K) +
            9.0 * a * (4.0 + 3.0 * a + 3.0 * a * a) + 55.0;

  const double eta = c.eta;
  const double g = 1.0 - a * eta * eta;
  const double inner = 1.0 + eta - 2.0 * a * eta;
  const double e_den2 = g * g - a * eta * eta * inner * inner;
  if (!(g > 0.0 && e_den2 > 0.0)) throw ConsistencyError("E denominator is not positive");
  const double e_num = std::pow(eta, 5) * std::pow(1.0 + (1.0 - 2.0 * a) * eta, 4) *
                       (1.0 + a * (eta - 2.0)) * (1.0 + eta + (1.0 - 3.0 * a) * eta * eta);
  c.Ecoef = 0.1 + e_num / (2.0 * std::pow(g, 4) * e_den2);
  c.Gamma = c.Lcoef + c.Ecoef;
  return c;
}

std::optional<LegacyBounds> legacy_bounds(double p1) {
  if (!(p1 >= 0.0)) throw DomainError("p1 must be nonnegative");
  if (p1 > kLegacyMaxP1) return std::nullopt;
  const double p3 = cube(p1);
  return LegacyBounds{87.0 * p3, 561.0 * p3};
}

std::optional<double> legacy_qn_error(double q1, long n) {
  if (!(q1 >= 0.0 && q1 <= 1.0)) throw DomainError("q1 is not a probability");
  if (n < 1) throw DomainError("n must be positive");
  const double a = 1.0 - q1;
  if (a > kLegacyMaxP1) return std::nullopt;
  const double dn = static_cast<double>(n);
  return (9.0 + 561.0 * a + 3.3 * dn * (1.0 + 4.7 * dn * a * a)) * a * a;
}

double c_series_tail_majorant(double p1, double z, long first) {
  const double r = p1 * z * z;
  if (!(r < 1.0)) throw DomainError("z outside the convergence region z sqrt(p1) < 1");
  if (first < 0) first = 0;
  const long j = first / 2;
  const double rj = std::pow(r, static_cast<double>(j));
  if (first % 2 == 0) return (1.0 + z) * rj / (1.0 - r);
  return rj * (z + r) / (1.0 - r);
}

SeriesValue c_series_eval(const PSequence& p, double z, double tol) {
  if (!(z >= 0.0)) throw DomainError("z must be nonnegative");
  const double p1 = p.p1();
  if (!(p1 * z * z < 1.0)) throw DomainError("z outside the convergence region z sqrt(p1) < 1");

  // Terms k = 1..K+1 use p_0..p_K.
  const std::size_t last = p.last_index();
  double sum = 1.0;
  double zk = 1.0;
  for (std::size_t k = 1; k <= last + 1; ++k) {
    zk *= z;
    const double term = p[k - 1] * zk;
    sum += (k % 2 == 0) ? term : -term;
  }
  SeriesValue out;
  out.value = sum;
  out.tail_bound = c_series_tail_majorant(p1, z, static_cast<long>(last) + 2);
  out.within_tolerance = out.tail_bound <= tol;
  return out;
}

long required_p_terms(double p1, double z, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  for (long k = 0; k < 100000; ++k) {
    if (c_series_tail_majorant(p1, z, k + 2) <= tol) return k;
  }
  throw LengthError("series converges too slowly for the requested tolerance");
}

LambdaResult solve_lambda(const PSequence& p, double alpha, double l_margin) {
  require_alpha(alpha);
  const double p1 = p.p1();
  if (p1 > alpha) throw DomainError("p1 exceeds alpha");

  LambdaResult r;
  if (p1 == 0.0) return r;  // C(z) = 1 - z

  if (p.last_index() < 4) throw LengthError("solve_lambda needs p through index 4");
  const double p2 = p[2];
  const double p3 = p[3];
  const double p4 = p[4];

  const auto c = error_coefficients(alpha, l_margin);
  r.bracket_low = 1.0;
  r.bracket_high = 1.0 + c.l * p1;
  r.tail_bound = c_series_tail_majorant(p1, r.bracket_high, static_cast<long>(p.last_index()) + 2);
  if (r.tail_bound > kLambdaTailTolerance) {
    const long need = required_p_terms(p1, r.bracket_high, kLambdaTailTolerance);
    throw LengthError("p sequence too short for a certified root: need p through index " +
                      std::to_string(need));
  }

  const auto C = [&](double z) { return c_series_eval(p, z, kLambdaTailTolerance).value; };
  double lo = r.bracket_low;
  double hi = r.bracket_high;
  const double f_lo = C(lo);
  const double f_hi = C(hi);
  if (f_lo < 0.0 || f_hi > 0.0) {
    throw ConsistencyError("C(z) does not change sign on (1, 1 + l p1)");
  }
  if (f_lo == 0.0) {
    hi = lo;
  }
  while (hi - lo >= kLambdaBracketWidth) {
    const double mid = 0.5 * (lo + hi);
    if (C(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  r.lambda = 0.5 * (lo + hi);
  r.residual = C(r.lambda);

  r.center_T1 = 1.0 + p1 - p2 + p3 - p4 + 2.0 * p1 * p1 + 3.0 * p2 * p2 - 5.0 * p1 * p2;
  r.center_C1 = 1.0 + p1 - p2 + 2.0 * (p1 - p2) * (p1 - p2);
  r.bound_T1 = c.K * cube(p1);
  r.bound_C1 = c.lambda_c1_coefficient() * p1 * p1;
  return r;
}

QnLambdaCenters approx_qnlambda_centers(const PSequence& p) {
  const double p1 = p.at(1);
  const double p2 = p.at(2);
  const double p3 = p.at(3);
  const double p4 = p.at(4);
  return {
      1.0 - p2 + 2.0 * p3 - 3.0 * p4 + p1 * p1 + 6.0 * p2 * p2 - 6.0 * p1 * p2,
      1.0 - p2,
  };
}

QnLambdaBounds qnlambda_bounds(const ErrorCoefficients& c, double p1) {
  return {c.Gamma * cube(p1), c.qn_c2_coefficient() * p1 * p1};
}

namespace {

struct ApproxInputs {
  double deficit = 0.0;  // 1 - q1
  std::optional<ErrorCoefficients> coeffs;
};

// Shared applicability rules of the q-based approximations. Empty when
// 1 - q1 > 0.1.
std::optional<ApproxInputs> prepare(double q1, long n, std::optional<double> alpha) {
  if (!(q1 >= 0.0 && q1 <= 1.0)) throw DomainError("q1 is not a probability");
  if (n < 1) throw DomainError("n must be positive");
  ApproxInputs in;
  in.deficit = 1.0 - q1;
  if (in.deficit > kMaxAlpha) return std::nullopt;
  if (alpha) {
    require_alpha(*alpha);
    if (*alpha < in.deficit) throw DomainError("alpha is below 1 - q1");
  }
  if (in.deficit > 0.0) in.coeffs = error_coefficients(alpha.value_or(in.deficit));
  return in;
}

constexpr double kOrderSlack = 1e-12;

}  // namespace

std::optional<Approximation> approx_qn_T4(double q1, double q2, long n,
                                          std::optional<double> alpha) {
  auto in = prepare(q1, n, alpha);
  if (!in) return std::nullopt;
  if (!(q2 >= 0.0 && q2 <= q1 + kOrderSlack)) throw DomainError("q2 must satisfy 0 <= q2 <= q1");
  if (2.0 * q1 - q2 > 1.0 + kOrderSlack) throw DomainError("2 q1 - q2 exceeds 1");

  const double dq = q1 - q2;
  const double base = 1.0 + dq + 2.0 * dq * dq;
  Approximation out;
  out.value = (2.0 * q1 - q2) / std::pow(base, static_cast<double>(n));
  const double a = in->deficit;
  if (in->coeffs) {
    const auto& c = *in->coeffs;
    out.delta = 3.0 + c.Gamma * a + static_cast<double>(n) * (1.0 + c.K * a);
    out.error_bound = out.delta * a * a;
  }
  return out;
}

std::optional<Approximation> approx_qn_T3(double q1, double q2, double q3, double q4,
                                          long n, std::optional<double> alpha) {
  auto in = prepare(q1, n, alpha);
  if (!in) return std::nullopt;
  if (!(q4 >= 0.0 && q4 <= q3 + kOrderSlack && q3 <= q2 + kOrderSlack &&
        q2 <= q1 + kOrderSlack)) {
    throw DomainError("q values must satisfy 0 <= q4 <= q3 <= q2 <= q1");
  }
  const double dq = q1 - q2;
  const double numerator = 6.0 * dq * dq + 4.0 * q3 - 3.0 * q4;
  const double base =
      1.0 + dq + q3 - q4 + 2.0 * q1 * q1 + 3.0 * q2 * q2 - 5.0 * q1 * q2;
  Approximation out;
  out.value = numerator / std::pow(base, static_cast<double>(n));
  const double a = in->deficit;
  if (in->coeffs) {
    const auto& c = *in->coeffs;
    out.delta = c.Gamma + static_cast<double>(n) * c.K;
    out.error_bound = out.delta * cube(a);
  }
  return out;
}

// With q_k = 1 - a_k the numerators and bases expand without cancellation:
//   2q1 - q2 = 1 + (a2 - 2a1),  base_T4 - 1 = (a2 - a1) + 2(a2 - a1)^2,
//   6(q1-q2)^2 + 4q3 - 3q4 = 1 + 6(a2-a1)^2 - 4a3 + 3a4,
//   base_T3 - 1 = a4 - a3 + 2a1^2 + 3a2^2 - 5a1a2.
// and 1 - num / base^n = -expm1(log1p(num - 1) - n log1p(base - 1)).
namespace {

double deficit_of_ratio(double num_minus_one, double base_minus_one, long n) {
  if (n < 1) throw DomainError("n must be at least 1");
  return -std::expm1(std::log1p(num_minus_one) -
                     static_cast<double>(n) * std::log1p(base_minus_one));
}

}  // namespace

double approx_qn_T4_deficit(double a1, double a2, long n) {
  const double d = a2 - a1;
  return deficit_of_ratio(a2 - 2.0 * a1, d + 2.0 * d * d, n);
}

double approx_qn_T3_deficit(double a1, double a2, double a3, double a4, long n) {
  const double d = a2 - a1;
  return deficit_of_ratio(6.0 * d * d - 4.0 * a3 + 3.0 * a4,
                          a4 - a3 + 2.0 * a1 * a1 + 3.0 * a2 * a2 - 5.0 * a1 * a2, n);
}

}  // namespace scanex
