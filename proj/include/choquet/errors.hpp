#pragma once

#include <stdexcept>
#include <string>

namespace choquet {

// Inadmissible exponent or operator parameter. The message names the
// violated constraint.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input larger than an algorithm supports (e.g. brute-force enumeration).
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Grids of mismatched dimension or depth, malformed arrays.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Bad invocation: unknown command, missing input, empty corpus.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace choquet
