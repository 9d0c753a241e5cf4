#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace scanex {

/// Joint upper-tail probabilities p_n = P(X_1 > x, ..., X_n > x) of a
/// stationary 1-dependent sequence, stored for n = 0..K with p_0 = 1.
///
/// Construction validates monotonicity and the 1-dependence bound
/// p_n <= p_1^floor((n+1)/2).
class PSequence {
 public:
  /// `values` must start with p_0 = 1.
  explicit PSequence(std::vector<double> values);

  /// Builds from p_1..p_K; p_0 = 1 is prepended.
  static PSequence from_tail(std::span<const double> p1_to_pk);

  /// p_k = p1^k, the sequence of an i.i.d. sequence, through index `last`.
  static PSequence geometric(double p1, std::size_t last);

  double operator[](std::size_t n) const { return values_[n]; }
  double at(std::size_t n) const;
  double p1() const { return values_.size() > 1 ? values_[1] : 0.0; }
  /// Largest stored index K.
  std::size_t last_index() const { return values_.size() - 1; }
  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> values_;
};

/// No-exceedance probabilities q_n = P(X_1 <= x, ..., X_n <= x), with the
/// convention q_{-1} = q_0 = 1. Indexed from -1.
class QSequence {
 public:
  /// Builds from q_1..q_K.
  explicit QSequence(std::span<const double> q1_to_qk);

  double at(long n) const;
  long last_index() const { return static_cast<long>(values_.size()) - 2; }
  /// q_1..q_K.
  std::span<const double> tail() const { return std::span<const double>(values_).subspan(2); }

 private:
  // values_[n + 1] holds q_n
  std::vector<double> values_;
};

/// q_n from p_0..p_n via q_n = sum_k (-1)^{n-k} p_{n-k} q_{k-1}.
/// Throws LengthError when p is shorter than n.
double qn_from_p(const PSequence& p, std::size_t n);

/// q_1..q_n from the same recursion, unclamped.
std::vector<double> q_values_from_p(const PSequence& p, std::size_t n);

/// Inverts the recursion for the first four terms:
/// p_1 = 1-q_1, ..., p_4 = 1-4q_1+3q_2-2q_1q_2+3q_1^2-2q_3+q_4.
std::array<double, 4> p_from_q(std::span<const double> q1_to_q4);
std::array<double, 4> p_from_q(const QSequence& q);

}  // namespace scanex
