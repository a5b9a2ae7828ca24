#pragma once

#include <stdexcept>
#include <string>

namespace isingql {

enum class ErrorKind {
  InvalidOperand,
  InvalidParameter,
  IndexOutOfRange,
  DimensionMismatch,
  Parse,
  Io,
  InternalConsistency,
  Numerical,
  NotRealRepresentable,
  SingularMitigation,
  InconsistentSystem,
  StepTooLarge,
  DegenerateKrylov,
  NoConvergence,
  MissingLevels,
  RealnessViolation,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised by the Krylov scan when no candidate passes the uncertainty filter.
class NoConvergenceError : public Error {
 public:
  NoConvergenceError(const std::string& message, double best_delta_e);
  double best_delta_e() const noexcept { return best_delta_e_; }

 private:
  double best_delta_e_;
};

// True for errors caused by bad user input rather than by the computation.
bool is_validation_error(ErrorKind kind);

}  // namespace isingql
