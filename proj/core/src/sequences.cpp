#include "scanex/sequences.hpp"

#include <cmath>
#include <string>

#include "scanex/errors.hpp"

namespace scanex {
namespace {

// Slack for values produced by floating-point DPs that sit on a bound.
constexpr double kRelSlack = 1e-12;

bool exceeds(double value, double bound) {
  return value > bound * (1.0 + kRelSlack) + 1e-300;
}

}  // namespace

PSequence::PSequence(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty() || values_[0] != 1.0) {
    throw DomainError("p sequence must start with p_0 = 1");
  }
  const double p1 = this->p1();
  for (std::size_t n = 1; n < values_.size(); ++n) {
    const double v = values_[n];
    if (!(v >= 0.0 && v <= 1.0)) {
      throw DomainError("p_" + std::to_string(n) + " is not a probability");
    }
    if (exceeds(v, values_[n - 1])) {
      throw DomainError("p sequence is not nonincreasing at index " + std::to_string(n));
    }
    const auto power = static_cast<double>((n + 1) / 2);
    if (exceeds(v, std::pow(p1, power))) {
      throw DomainError("p_" + std::to_string(n) +
                        " violates the 1-dependence bound p_n <= p_1^[(n+1)/2]");
    }
  }
}

PSequence PSequence::from_tail(std::span<const double> p1_to_pk) {
  std::vector<double> v;
  v.reserve(p1_to_pk.size() + 1);
  v.push_back(1.0);
  v.insert(v.end(), p1_to_pk.begin(), p1_to_pk.end());
  return PSequence(std::move(v));
}

PSequence PSequence::geometric(double p1, std::size_t last) {
  std::vector<double> v(last + 1);
  v[0] = 1.0;
  for (std::size_t k = 1; k <= last; ++k) v[k] = v[k - 1] * p1;
  return PSequence(std::move(v));
}

double PSequence::at(std::size_t n) const {
  if (n >= values_.size()) {
    throw LengthError("p sequence has no entry at index " + std::to_string(n));
  }
  return values_[n];
}

QSequence::QSequence(std::span<const double> q1_to_qk) {
  values_.reserve(q1_to_qk.size() + 2);
  values_.push_back(1.0);
  values_.push_back(1.0);
  for (double q : q1_to_qk) {
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError("q value is not a probability");
    if (exceeds(q, values_.back())) throw DomainError("q sequence is not nonincreasing");
    values_.push_back(q);
  }
}

double QSequence::at(long n) const {
  if (n < -1 || n > last_index()) {
    throw LengthError("q sequence has no entry at index " + std::to_string(n));
  }
  return values_[static_cast<std::size_t>(n + 1)];
}

std::vector<double> q_values_from_p(const PSequence& p, std::size_t n) {
  if (n > p.last_index()) {
    throw LengthError("q_" + std::to_string(n) + " needs p through index " +
                      std::to_string(n));
  }
  // q[j + 1] holds q_j
  std::vector<double> q(n + 2, 1.0);
  for (std::size_t j = 1; j <= n; ++j) {
    double sum = 0.0;
    for (std::size_t k = 0; k <= j; ++k) {
      const double term = p[j - k] * q[k];
      sum += ((j - k) % 2 == 0) ? term : -term;
    }
    q[j + 1] = sum;
  }
  return {q.begin() + 2, q.end()};
}

double qn_from_p(const PSequence& p, std::size_t n) {
  if (n == 0) return 1.0;
  return q_values_from_p(p, n).back();
}

std::array<double, 4> p_from_q(std::span<const double> q) {
  if (q.size() < 4) throw LengthError("p_from_q needs q_1..q_4");
  const double q1 = q[0];
  const double q2 = q[1];
  const double q3 = q[2];
  const double q4 = q[3];
  return {
      1.0 - q1,
      1.0 - 2.0 * q1 + q2,
      1.0 - 3.0 * q1 + 2.0 * q2 + q1 * q1 - q3,
      1.0 - 4.0 * q1 + 3.0 * q2 - 2.0 * q1 * q2 + 3.0 * q1 * q1 - 2.0 * q3 + q4,
  };
}

std::array<double, 4> p_from_q(const QSequence& q) { return p_from_q(q.tail()); }

}  // namespace scanex
