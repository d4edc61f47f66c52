#pragma once

#include <stdexcept>
#include <string>

namespace esn {

/// Toolkit-wide error type. Messages name the offending file, field, or value.
class EsnError : public std::runtime_error {
 public:
  explicit EsnError(const std::string& what) : std::runtime_error(what) {}
};

/// Iterative solver ran out of iterations. Callers may switch to a dense path.
class NonConvergenceError : public EsnError {
 public:
  explicit NonConvergenceError(const std::string& what) : EsnError(what) {}
};

}  // namespace esn
