#pragma once

#include <stdexcept>
#include <string>

namespace cohom {

enum class ErrorKind {
  // malformed input or out-of-range parameters (CLI exit code 1)
  MalformedInput,
  ParameterOutOfRange,
  GridTooLarge,
  VariableCountMismatch,
  // violated mathematical laws (CLI exit code 2)
  NotAComplex,
  InvariantViolation,
  ContainmentViolated,
  AmbientMismatch,
  IncompatibleRestrictions,
  MissingFaceSpace,
  LevelMapMismatch,
  ConvergenceFailure,
  NotClosed,
  NotExact,
  PoleOnNonInvertedAxis,
  WindowExhausted,
};

inline const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorKind::GridTooLarge: return "GridTooLarge";
    case ErrorKind::VariableCountMismatch: return "VariableCountMismatch";
    case ErrorKind::NotAComplex: return "NotAComplex";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::ContainmentViolated: return "ContainmentViolated";
    case ErrorKind::AmbientMismatch: return "AmbientMismatch";
    case ErrorKind::IncompatibleRestrictions: return "IncompatibleRestrictions";
    case ErrorKind::MissingFaceSpace: return "MissingFaceSpace";
    case ErrorKind::LevelMapMismatch: return "LevelMapMismatch";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotExact: return "NotExact";
    case ErrorKind::PoleOnNonInvertedAxis: return "PoleOnNonInvertedAxis";
    case ErrorKind::WindowExhausted: return "WindowExhausted";
  }
  return "Unknown";
}

/// True for errors caused by the caller's input rather than by a violated law.
inline bool is_input_error(ErrorKind k) {
  return k == ErrorKind::MalformedInput || k == ErrorKind::ParameterOutOfRange ||
         k == ErrorKind::GridTooLarge || k == ErrorKind::VariableCountMismatch;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cohom
