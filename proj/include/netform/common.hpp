#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/rational.hpp>

namespace netform {

/// Dense node index in [0, n).
using NodeId = int;

/// Exact arithmetic for integral instances (reductions).
using Rational = boost::rational<std::int64_t>;

/// Absolute tolerance used for every utility comparison.
inline constexpr double kTolerance = 1e-9;

/// Malformed input, violated precondition, or an illegal game move.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A brute-force routine was asked to exceed its explicit size cap.
class BoundExceeded : public DomainError {
 public:
  using DomainError::DomainError;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace netform
