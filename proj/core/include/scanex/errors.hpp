#pragma once

#include <stdexcept>
#include <string>

namespace scanex {

/// An argument lies outside the range where a result is defined
/// (e.g. alpha outside (0, 0.1]).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The requested problem exceeds a fixed computational cap
/// (state-space size, enumeration length).
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A finite sequence does not carry enough terms for the requested result.
class LengthError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// An internal invariant failed; indicates invalid input that slipped past
/// validation or a numerical breakdown.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace scanex
