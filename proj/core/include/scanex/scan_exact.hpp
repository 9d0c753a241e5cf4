#pragma once

// Exact distribution of the discrete scan statistic S_m(N) over Bernoulli
// trials, i.e. the maximum number of successes in any m consecutive trials
// out of N.

#include <cstdint>
#include <vector>

#include "scanex/sequences.hpp"

namespace scanex {

struct BernoulliScanSpec {
  int m = 1;         ///< window length
  double p = 0.0;    ///< success probability
  long N = 1;        ///< number of trials
  int n = 0;         ///< threshold
};

/// Throws DomainError for m < 1, N < 0, n < 0 or p outside [0, 1].
void validate(const BernoulliScanSpec& spec);

/// True when no complete window exists (N < m); the CDF is then 1 by convention.
inline bool is_degenerate(const BernoulliScanSpec& spec) { return spec.N < spec.m; }

inline constexpr int kMaxEmbeddingWindow = 25;
inline constexpr long kMaxBruteForceTrials = 22;
inline constexpr int kMaxBlockTerms = 64;
inline constexpr int kMaxBlockWindow = 20;

/// Markov chain over the last m-1 trial outcomes. Any completed window whose
/// sum exceeds n sends its mass to a single absorbing FAIL state.
class ScanEmbedding {
 public:
  /// Throws CapacityError for m > 25.
  ScanEmbedding(int m, double p, int n);

  /// Appends one trial.
  void step();
  void advance(long trials);

  long trials() const { return trials_; }
  std::size_t state_count() const { return live_.size(); }
  double fail_mass() const { return fail_; }
  double live_mass() const;
  /// P(S_m(trials) <= n) = 1 - FAIL mass.
  double cdf() const { return 1.0 - fail_; }
  const std::vector<double>& distribution() const { return live_; }

 private:
  int m_;
  double p_;
  int n_;
  std::uint32_t mask_;
  long trials_ = 0;
  double fail_ = 0.0;
  std::vector<double> live_;
  std::vector<double> next_;
};

/// P(S_m(N) <= n). Returns 1 when n >= m or N < m.
double exact_scan_cdf(const BernoulliScanSpec& spec);

/// P(S_m(t) <= n) for t = 0..n_max (entries below m are 1).
std::vector<double> exact_scan_cdf_curve(int m, double p, int n, long n_max);

/// P(S_m(t) > n) for t = 0..n_max, read directly from the absorbed mass so
/// that small tails keep full relative precision.
std::vector<double> exact_scan_tail_curve(int m, double p, int n, long n_max);

/// Same quantity by enumerating all 2^N outcomes; N <= 22. Returns 1 when
/// n >= m or N < m.
double brute_force_scan_cdf(const BernoulliScanSpec& spec);

/// q_k = P(W_1 <= n, ..., W_k <= n) = P(S_m((k+1)m) <= n), k = 1..kmax, where
/// W_k is the largest window sum among windows starting in [(k-1)m+1, km+1].
QSequence block_q_sequence(int m, double p, int n, int kmax);

/// p_k = P(W_1 > n, ..., W_k > n), k = 0..kmax, by a DP over the trials that
/// tracks whether the currently open block already holds an exceedance.
/// Requires m <= 20 and kmax <= 64 (CapacityError otherwise).
PSequence block_p_sequence(int m, double p, int n, int kmax);

}  // namespace scanex
