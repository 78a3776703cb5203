#pragma once

#include <stdexcept>
#include <string>

namespace dshlab {

/// A caller violated an operation's precondition (bad index, malformed
/// parameter vector, inconsistent dimensions).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The inputs were well formed but the requested construction does not
/// exist for them (word not in the language, chain too short, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dshlab
