#pragma once

#include <stdexcept>
#include <string>

namespace pivotal {

// Thrown when a computation would exceed a configured size limit. Callers
// are expected to fall back to a cheaper method (e.g. the asymptotic path).
class ResourceRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violated by the caller.
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace pivotal
