#include "isingql/errors.hpp"

namespace isingql {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidOperand: return "invalid operand";
    case ErrorKind::InvalidParameter: return "invalid parameter";
    case ErrorKind::IndexOutOfRange: return "index out of range";
    case ErrorKind::DimensionMismatch: return "dimension mismatch";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Io: return "i/o error";
    case ErrorKind::InternalConsistency: return "internal consistency error";
    case ErrorKind::Numerical: return "numerical error";
    case ErrorKind::NotRealRepresentable: return "not real-representable";
    case ErrorKind::SingularMitigation: return "singular mitigation";
    case ErrorKind::InconsistentSystem: return "inconsistent system";
    case ErrorKind::StepTooLarge: return "step too large";
    case ErrorKind::DegenerateKrylov: return "degenerate Krylov space";
    case ErrorKind::NoConvergence: return "no convergence";
    case ErrorKind::MissingLevels: return "missing levels";
    case ErrorKind::RealnessViolation: return "realness violation";
  }
  return "unknown error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

NoConvergenceError::NoConvergenceError(const std::string& message, double best_delta_e)
    : Error(ErrorKind::NoConvergence, message), best_delta_e_(best_delta_e) {}

bool is_validation_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidOperand:
    case ErrorKind::InvalidParameter:
    case ErrorKind::IndexOutOfRange:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::Parse:
    case ErrorKind::Io:
      return true;
    default:
      return false;
  }
}

}  // namespace isingql
