#pragma once

#include <stdexcept>
#include <string>

namespace erdos {

/// A caller broke an operation's precondition (bad argument, k > n, ...).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested computation would exceed the configured memory budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite check of a proven statement failed. This is always a bug.
class VerificationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace erdos
