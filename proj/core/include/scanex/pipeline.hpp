#pragma once

// End-to-end approximation of P(S_m(Lm) <= n) from the block quantities
// q_1 = P(S_m(2m) <= n) and q_2 = P(S_m(3m) <= n), with error bounds, and the
// reference coefficient and scan tables.

#include <optional>

#include "scanex/scan_exact.hpp"
#include "scanex/table.hpp"

namespace scanex {

struct ScanApproxRequest {
  int m = 1;
  double p = 0.0;
  int L = 2;  ///< N = L m trials, L - 1 blocks
  int n = 0;
  bool want_exact = false;
  bool want_t3 = false;
};

struct ScanReport {
  BernoulliScanSpec spec;  ///< N = L m
  int L = 2;
  double q1 = 1.0;
  double q2 = 1.0;
  std::optional<double> q3;
  std::optional<double> q4;
  double alpha_used = 0.0;  ///< 1 - q1 = P(W_1 > n)
  bool in_range = true;     ///< alpha_used <= 0.1
  std::optional<double> approx_T4;
  std::optional<double> approx_T3;
  std::optional<double> E;       ///< new bound for approx_T4
  std::optional<double> EH;      ///< legacy bound, only for alpha_used <= 0.025
  std::optional<double> bound_T3;
  std::optional<double> exact;

  // Complements 1 - x of the fields above, computed without cancellation so
  // they stay meaningful when the probabilities round to 1 in binary64.
  double tail1 = 0.0;  ///< 1 - q1
  double tail2 = 0.0;  ///< 1 - q2
  std::optional<double> tail3;
  std::optional<double> tail4;
  std::optional<double> approx_T4_deficit;
  std::optional<double> approx_T3_deficit;
  std::optional<double> exact_deficit;
};

/// Throws DomainError for L < 2 or an invalid spec; capacity errors from the
/// exact engine propagate.
ScanReport scan_approximation(const ScanApproxRequest& request);

struct SandwichBounds {
  double lower = 1.0;  ///< P(S_m((L+1)m) <= n)
  double upper = 1.0;  ///< P(S_m(Lm) <= n)
  long L = 0;          ///< floor(N / m)
};

SandwichBounds sandwich(const BernoulliScanSpec& spec);

/// Tables 1-4 of the reference results: coefficient tables for
/// alpha in {0.1, 0.05, 0.025, 0.01}, and scan tables for
/// (m=9, p=0.05, L=10, n=2..7) and (m=10, p=0.0165, L=15, n=1..5).
Table reproduce_table(int which);

}  // namespace scanex
