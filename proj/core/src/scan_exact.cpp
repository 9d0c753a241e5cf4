#include "scanex/scan_exact.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "scanex/errors.hpp"

namespace scanex {

void validate(const BernoulliScanSpec& spec) {
  if (spec.m < 1) throw DomainError("window length m must be at least 1");
  if (spec.N < 0) throw DomainError("number of trials N must be nonnegative");
  if (spec.n < 0) throw DomainError("threshold n must be nonnegative");
  if (!(spec.p >= 0.0 && spec.p <= 1.0)) throw DomainError("p must lie in [0, 1]");
}

ScanEmbedding::ScanEmbedding(int m, double p, int n) : m_(m), p_(p), n_(n) {
  validate(BernoulliScanSpec{m, p, 0, n});
  if (m > kMaxEmbeddingWindow) {
    throw CapacityError("window length m = " + std::to_string(m) +
                        " exceeds the embedding cap of " + std::to_string(kMaxEmbeddingWindow));
  }
  const std::size_t states = std::size_t{1} << (m - 1);
  mask_ = static_cast<std::uint32_t>(states - 1);
  live_.assign(states, 0.0);
  next_.assign(states, 0.0);
  live_[0] = 1.0;
}

void ScanEmbedding::step() {
  ++trials_;
  const bool window_complete = trials_ >= m_;
  const double q = 1.0 - p_;
  std::fill(next_.begin(), next_.end(), 0.0);
  for (std::uint32_t s = 0; s < live_.size(); ++s) {
    const double w = live_[s];
    if (w == 0.0) continue;
    const int ones = std::popcount(s);
    const std::uint32_t s0 = (s << 1) & mask_;
    const std::uint32_t s1 = ((s << 1) | 1u) & mask_;
    if (window_complete && ones > n_) {
      fail_ += w * q;
    } else {
      next_[s0] += w * q;
    }
    if (window_complete && ones + 1 > n_) {
      fail_ += w * p_;
    } else {
      next_[s1] += w * p_;
    }
  }
  live_.swap(next_);
}

void ScanEmbedding::advance(long trials) {
  for (long t = 0; t < trials; ++t) step();
}

double ScanEmbedding::live_mass() const {
  return std::accumulate(live_.begin(), live_.end(), 0.0);
}

std::vector<double> exact_scan_tail_curve(int m, double p, int n, long n_max) {
  validate(BernoulliScanSpec{m, p, n_max, n});
  std::vector<double> curve(static_cast<std::size_t>(n_max) + 1, 0.0);
  if (n >= m || n_max < m) return curve;
  ScanEmbedding chain(m, p, n);
  for (long t = 1; t <= n_max; ++t) {
    chain.step();
    if (t >= m) curve[static_cast<std::size_t>(t)] = chain.fail_mass();
  }
  return curve;
}

std::vector<double> exact_scan_cdf_curve(int m, double p, int n, long n_max) {
  auto curve = exact_scan_tail_curve(m, p, n, n_max);
  for (double& v : curve) v = 1.0 - v;
  return curve;
}

double exact_scan_cdf(const BernoulliScanSpec& spec) {
  validate(spec);
  if (spec.n >= spec.m || is_degenerate(spec)) return 1.0;
  return exact_scan_cdf_curve(spec.m, spec.p, spec.n, spec.N).back();
}

double brute_force_scan_cdf(const BernoulliScanSpec& spec) {
  validate(spec);
  if (spec.N > kMaxBruteForceTrials) {
    throw CapacityError("brute-force enumeration is limited to N <= " +
                        std::to_string(kMaxBruteForceTrials));
  }
  const int N = static_cast<int>(spec.N);
  const int m = spec.m;
  if (N < m || spec.n >= m) return 1.0;

  // Admissible outcome counts by number of successes; the probability is then
  // a single weighted sum over exact integer counts.
  std::vector<std::uint64_t> admissible(static_cast<std::size_t>(N) + 1, 0);
  const std::uint32_t window = (m >= 32) ? ~0u : ((1u << m) - 1u);
  const std::uint32_t total = 1u << N;
  for (std::uint32_t x = 0; x < total; ++x) {
    bool ok = true;
    for (int s = 0; s + m <= N; ++s) {
      if (std::popcount((x >> s) & window) > spec.n) {
        ok = false;
        break;
      }
    }
    if (ok) ++admissible[static_cast<std::size_t>(std::popcount(x))];
  }
  double sum = 0.0;
  for (int k = 0; k <= N; ++k) {
    if (admissible[k] == 0) continue;
    sum += static_cast<double>(admissible[k]) * std::pow(spec.p, k) *
           std::pow(1.0 - spec.p, N - k);
  }
  return sum;
}

QSequence block_q_sequence(int m, double p, int n, int kmax) {
  if (kmax < 1) throw DomainError("kmax must be at least 1");
  const long n_max = static_cast<long>(kmax + 1) * m;
  const auto curve = exact_scan_cdf_curve(m, p, n, n_max);
  std::vector<double> q(static_cast<std::size_t>(kmax));
  for (int k = 1; k <= kmax; ++k) {
    q[static_cast<std::size_t>(k - 1)] = curve[static_cast<std::size_t>((k + 1) * m)];
  }
  return QSequence(q);
}

PSequence block_p_sequence(int m, double p, int n, int kmax) {
  validate(BernoulliScanSpec{m, p, 0, n});
  if (kmax < 1) throw DomainError("kmax must be at least 1");
  if (m > kMaxBlockWindow) {
    throw CapacityError("block joint-tail DP is limited to m <= " +
                        std::to_string(kMaxBlockWindow));
  }
  if (kmax > kMaxBlockTerms) {
    throw CapacityError("block joint-tail DP is limited to kmax <= " +
                        std::to_string(kMaxBlockTerms));
  }

  // State index: (last m-1 outcomes) << 1 | (open block already exceeded).
  const std::uint32_t bits_mask = (1u << (m - 1)) - 1u;
  const std::size_t states = std::size_t{1} << m;
  std::vector<double> cur(states, 0.0);
  std::vector<double> nxt(states, 0.0);
  cur[0] = 1.0;
  const double q = 1.0 - p;

  std::vector<double> values{1.0};
  values.reserve(static_cast<std::size_t>(kmax) + 1);
  const long last_trial = static_cast<long>(kmax + 1) * m;
  for (long t = 1; t <= last_trial; ++t) {
    std::fill(nxt.begin(), nxt.end(), 0.0);
    const long s = t - m + 1;  // window completed by this trial, if s >= 1
    const bool has_window = s >= 1;
    // Window km+1 is the last of block k and the first of block k+1.
    const bool closes_block = has_window && s > 1 && (s - 1) % m == 0;
    for (std::uint32_t idx = 0; idx < states; ++idx) {
      const double w = cur[idx];
      if (w == 0.0) continue;
      const std::uint32_t bits = idx >> 1;
      const bool open_exceeded = (idx & 1u) != 0;
      const int ones = std::popcount(bits);
      for (std::uint32_t b = 0; b <= 1; ++b) {
        const double mass = w * (b ? p : q);
        const std::uint32_t nb = ((bits << 1) | b) & bits_mask;
        if (!has_window) {
          nxt[nb << 1] += mass;
          continue;
        }
        const bool exceed = ones + static_cast<int>(b) > n;
        if (closes_block) {
          if (!(open_exceeded || exceed)) continue;  // block k had no exceedance
          nxt[(nb << 1) | (exceed ? 1u : 0u)] += mass;
        } else {
          nxt[(nb << 1) | ((open_exceeded || exceed) ? 1u : 0u)] += mass;
        }
      }
    }
    cur.swap(nxt);
    if (closes_block) {
      values.push_back(std::accumulate(cur.begin(), cur.end(), 0.0));
      if (static_cast<int>(values.size()) > kmax) break;
    }
  }
  return PSequence(std::move(values));
}

}  // namespace scanex
