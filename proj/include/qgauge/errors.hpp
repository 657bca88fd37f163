#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qgauge {

/// Failure categories surfaced by the library. Tests match on the kind, not
/// the message text.
enum class ErrorKind {
  // weights / points
  EmptyWeights,
  NonPositiveWeight,
  NotCoprime,
  DimensionMismatch,
  // evaluation / calculus
  EvaluationError,
  JetUndefined,
  OrderTooLow,
  NotHermitian,
  ZeroGradient,
  // gauge solver
  ZeroPoint,
  BracketFailure,
  MaxIterations,
  DegenerateRadialDerivative,
  // verification
  SamplingFailure,
  // expression parsing
  SyntaxError,
  UnknownIdentifier,
  IndexOutOfRange,
  BareComplexVariable,
  // catalog / configuration
  UnknownFamily,
  BadParameters,
  NoOracle,
  InvalidDomain,
  ConfigError,
  IoError,
  UsageError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure carrying the byte offset into the source text.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, const std::string& message, std::size_t position)
      : Error(kind, message + " (at byte " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace qgauge
