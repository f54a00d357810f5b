#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace betamodel {

enum class ErrorKind {
  DegreeBoundary,   // some degree sits at 0 or n-1, the MLE is at infinity
  NonConvergence,   // fixed-point iteration stalled or diverged
  Parse,            // malformed input file
  Validation,       // well-formed input that violates a model invariant
  InvalidArgument,  // caller passed an out-of-domain value
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace betamodel
