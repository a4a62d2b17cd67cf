#include "qsuff/errors.hpp"

namespace qsuff {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::NotPSDOutput: return "NotPSDOutput";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidLambda: return "InvalidLambda";
    case ErrorKind::EmptyGrid: return "EmptyGrid";
    case ErrorKind::QuadratureBudgetExceeded: return "QuadratureBudgetExceeded";
    case ErrorKind::SupportViolation: return "SupportViolation";
    case ErrorKind::InvalidTruncation: return "InvalidTruncation";
    case ErrorKind::EvenNodeCount: return "EvenNodeCount";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "UnknownError";
}

}  // namespace qsuff
