#pragma once

#include <stdexcept>
#include <string>

namespace qsuff {

enum class ErrorKind {
  NotSquare,
  NotHermitian,
  NotPSD,
  NotPSDOutput,
  ConvergenceFailure,
  DomainError,
  DimensionMismatch,
  InvalidLambda,
  EmptyGrid,
  QuadratureBudgetExceeded,
  SupportViolation,
  InvalidTruncation,
  EvenNodeCount,
  ParseError,
  ValidationError,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace qsuff
