#pragma once

#include <stdexcept>
#include <string>

namespace gwqed {

/// Input outside the documented validity range of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation could not produce a trustworthy number (degenerate ground
/// state, vanishing overlap, negative radicand, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gwqed
