#include "scanex/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "scanex/errors.hpp"

namespace scanex {
namespace {

// One Bernoulli trial per 64-bit draw: success iff draw < threshold.
class BernoulliSource {
 public:
  BernoulliSource(std::uint64_t seed, int stream, double p) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), 0x5ca1ab1eu};
    engine_.seed(seq);
    if (p <= 0.0) {
      mode_ = Mode::never;
    } else if (p >= 1.0) {
      mode_ = Mode::always;
    } else {
      threshold_ = static_cast<std::uint64_t>(std::ldexp(p, 64));
    }
  }

  int next() {
    switch (mode_) {
      case Mode::never: return 0;
      case Mode::always: return 1;
      case Mode::draw: break;
    }
    return engine_() < threshold_ ? 1 : 0;
  }

 private:
  enum class Mode { never, always, draw };
  std::mt19937_64 engine_;
  Mode mode_ = Mode::draw;
  std::uint64_t threshold_ = 0;
};

struct StreamRange {
  long begin;
  long end;
};

StreamRange stream_range(long reps, int streams, int s) {
  const long base = reps / streams;
  const long extra = reps % streams;
  const long begin = s * base + std::min<long>(s, extra);
  return {begin, begin + base + (s < extra ? 1 : 0)};
}

// Runs fn(stream) for every stream on up to `threads` workers.
template <class Fn>
void for_each_stream(int streams, int threads, Fn&& fn) {
  threads = std::clamp(threads, 1, streams);
  if (threads == 1) {
    for (int s = 0; s < streams; ++s) fn(s);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (int s = w; s < streams; s += threads) fn(s);
    });
  }
}

void validate_plan(const BernoulliScanSpec& spec, long reps, int stream_count) {
  validate(spec);
  if (reps < 1) throw DomainError("reps must be at least 1");
  if (stream_count < 1) throw DomainError("stream count must be at least 1");
}

}  // namespace

SimulationEstimate simulate_scan_cdf(const SimulationPlan& plan, int threads) {
  validate_plan(plan.spec, plan.reps, plan.stream_count);
  const auto& spec = plan.spec;
  const int m = spec.m;
  const long N = spec.N;

  std::vector<long> hits(static_cast<std::size_t>(plan.stream_count), 0);
  for_each_stream(plan.stream_count, threads, [&](int s) {
    const auto range = stream_range(plan.reps, plan.stream_count, s);
    BernoulliSource source(plan.seed, s, spec.p);
    std::vector<unsigned char> ring(static_cast<std::size_t>(m), 0);
    long count = 0;
    for (long r = range.begin; r < range.end; ++r) {
      int sum = 0;
      bool ok = true;
      for (long t = 0; t < N; ++t) {
        const int y = source.next();
        auto& slot = ring[static_cast<std::size_t>(t % m)];
        if (t >= m) sum -= slot;
        slot = static_cast<unsigned char>(y);
        sum += y;
        if (t + 1 >= m && sum > spec.n) {
          ok = false;
          break;
        }
      }
      if (ok) ++count;
    }
    hits[static_cast<std::size_t>(s)] = count;
  });

  SimulationEstimate out;
  out.reps = plan.reps;
  for (long h : hits) out.hits += h;
  out.estimate = static_cast<double>(out.hits) / static_cast<double>(plan.reps);
  out.half_width_95 =
      1.96 * std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(plan.reps));
  return out;
}

BlockSimulation simulate_block_sequence(const BernoulliScanSpec& spec, int L, long reps,
                                        std::uint64_t seed, int stream_count, int threads) {
  validate_plan(spec, reps, stream_count);
  if (L < 2) throw DomainError("L must be at least 2");
  const int m = spec.m;
  const int blocks = L - 1;
  const long N = static_cast<long>(L) * m;
  const auto nb = static_cast<std::size_t>(blocks);

  struct Counts {
    std::vector<long> q, p, exceed, joint;
  };
  std::vector<Counts> per_stream(static_cast<std::size_t>(stream_count));

  for_each_stream(stream_count, threads, [&](int s) {
    const auto range = stream_range(reps, stream_count, s);
    BernoulliSource source(seed, s, spec.p);
    Counts c{std::vector<long>(nb, 0), std::vector<long>(nb, 0), std::vector<long>(nb, 0),
             std::vector<long>(nb * nb, 0)};
    std::vector<int> y(static_cast<std::size_t>(N));
    std::vector<int> z(static_cast<std::size_t>(N - m + 1));
    std::vector<int> w(nb);
    std::vector<char> exc(nb);
    for (long r = range.begin; r < range.end; ++r) {
      for (auto& v : y) v = source.next();
      int sum = 0;
      for (long t = 0; t < N; ++t) {
        sum += y[static_cast<std::size_t>(t)];
        if (t >= m) sum -= y[static_cast<std::size_t>(t - m)];
        if (t + 1 >= m) z[static_cast<std::size_t>(t + 1 - m)] = sum;
      }
      // W_k = max Z_s over s in [(k-1)m+1, km+1] (1-based s)
      for (int k = 1; k <= blocks; ++k) {
        int best = 0;
        for (long sidx = static_cast<long>(k - 1) * m; sidx <= static_cast<long>(k) * m; ++sidx) {
          best = std::max(best, z[static_cast<std::size_t>(sidx)]);
        }
        w[static_cast<std::size_t>(k - 1)] = best;
        exc[static_cast<std::size_t>(k - 1)] = best > spec.n;
      }
      bool all_below = true;
      bool all_above = true;
      for (std::size_t k = 0; k < nb; ++k) {
        all_below = all_below && !exc[k];
        all_above = all_above && exc[k];
        c.q[k] += all_below;
        c.p[k] += all_above;
        c.exceed[k] += exc[k];
        if (!exc[k]) continue;
        for (std::size_t j = 0; j < nb; ++j) c.joint[k * nb + j] += exc[j];
      }
    }
    per_stream[static_cast<std::size_t>(s)] = std::move(c);
  });

  BlockSimulation out;
  out.reps = reps;
  out.blocks = blocks;
  out.q_hat.assign(nb, 0.0);
  out.p_hat.assign(nb, 0.0);
  out.exceed_freq.assign(nb, 0.0);
  out.joint_exceed.assign(nb * nb, 0.0);
  std::vector<long> q(nb, 0), p(nb, 0), e(nb, 0), j(nb * nb, 0);
  for (const auto& c : per_stream) {
    for (std::size_t k = 0; k < nb; ++k) {
      q[k] += c.q[k];
      p[k] += c.p[k];
      e[k] += c.exceed[k];
    }
    for (std::size_t k = 0; k < nb * nb; ++k) j[k] += c.joint[k];
  }
  const double dr = static_cast<double>(reps);
  for (std::size_t k = 0; k < nb; ++k) {
    out.q_hat[k] = static_cast<double>(q[k]) / dr;
    out.p_hat[k] = static_cast<double>(p[k]) / dr;
    out.exceed_freq[k] = static_cast<double>(e[k]) / dr;
  }
  for (std::size_t k = 0; k < nb * nb; ++k) out.joint_exceed[k] = static_cast<double>(j[k]) / dr;
  return out;
}

}  // namespace scanex
