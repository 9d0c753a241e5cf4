#pragma once

// Random inputs for property tests.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "scanex/sequences.hpp"

namespace scanex::gen {

/// Random p_0..p_K satisfying monotonicity and p_n <= p_1^[(n+1)/2].
inline PSequence random_p(std::mt19937_64& rng, std::size_t last, double max_p1 = 0.1) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double p1 = max_p1 * unit(rng);
  std::vector<double> v{1.0, p1};
  for (std::size_t n = 2; n <= last; ++n) {
    const double cap = std::min(v.back(), std::pow(p1, static_cast<double>((n + 1) / 2)));
    v.push_back(cap * unit(rng));
  }
  return PSequence(v);
}

}  // namespace scanex::gen
