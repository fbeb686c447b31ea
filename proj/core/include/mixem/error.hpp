#pragma once

#include <stdexcept>

namespace mixem {

/// Malformed input: bad dimensions, negative densities, ill-formed intervals.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A mixture density collapsed to (numerically) zero during a solve.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mixem
