#pragma once

// Seeded simulation of Bernoulli scan statistics. Replicates are split across
// `stream_count` independent generator streams; results depend only on
// (seed, stream_count, reps), never on the number of worker threads.

#include <cstdint>
#include <vector>

#include "scanex/scan_exact.hpp"

namespace scanex {

struct SimulationPlan {
  BernoulliScanSpec spec;
  long reps = 1;
  std::uint64_t seed = 0;
  int stream_count = 8;
};

struct SimulationEstimate {
  double estimate = 0.0;
  double half_width_95 = 0.0;  ///< 1.96 sqrt(est (1 - est) / reps)
  long hits = 0;
  long reps = 0;
};

/// Fraction of replicates with S_m(N) <= n. `threads` <= 0 means one thread.
SimulationEstimate simulate_scan_cdf(const SimulationPlan& plan, int threads = 1);

struct BlockSimulation {
  long reps = 0;
  int blocks = 0;                    ///< L - 1
  std::vector<double> q_hat;         ///< freq(max(W_1..W_k) <= n), k = 1..L-1
  std::vector<double> p_hat;         ///< freq(min(W_1..W_k) > n)
  std::vector<double> exceed_freq;   ///< freq(W_k > n)
  std::vector<double> joint_exceed;  ///< freq(W_i > n, W_j > n), row-major (L-1)^2

  double joint(int i, int j) const {
    return joint_exceed[static_cast<std::size_t>(i - 1) * blocks + (j - 1)];
  }
};

/// Simulates W_1..W_{L-1} over N = L m trials (spec.N is ignored).
BlockSimulation simulate_block_sequence(const BernoulliScanSpec& spec, int L, long reps,
                                        std::uint64_t seed, int stream_count = 8,
                                        int threads = 1);

}  // namespace scanex
