#pragma once

#include <stdexcept>
#include <string>

namespace fria {

/// Precondition violation on a caller-supplied value (bad shape, sign, size).
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// A bound formula was requested for inputs where it does not apply,
/// e.g. the coarse bound for a weight with zero smallest eigenvalue.
class BoundUndefined : public std::domain_error {
 public:
  explicit BoundUndefined(const std::string& what) : std::domain_error(what) {}
};

/// An iterative solver did not reach its tolerance.
class ConvergenceFailure : public std::runtime_error {
 public:
  explicit ConvergenceFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fria
