#pragma once

#include <stdexcept>
#include <string>

namespace qfdiv {

enum class ErrorKind {
  NotHermitian,
  NoConvergence,
  NegativeSpectrum,
  DomainError,
  SingularState,
  DimensionMismatch,
  BadRank,
  InvalidDistribution,
  InvalidGenerator,
  UnknownGenerator,
  ZeroReference,
  NotOperatorConvex,
  DegenerateExtremes,
  NoSecondDerivative,
  QuadratureFailure,
  OutOfRange,
  ParseError,
  InvariantViolation,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NegativeSpectrum: return "NegativeSpectrum";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::SingularState: return "SingularState";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::BadRank: return "BadRank";
    case ErrorKind::InvalidDistribution: return "InvalidDistribution";
    case ErrorKind::InvalidGenerator: return "InvalidGenerator";
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::ZeroReference: return "ZeroReference";
    case ErrorKind::NotOperatorConvex: return "NotOperatorConvex";
    case ErrorKind::DegenerateExtremes: return "DegenerateExtremes";
    case ErrorKind::NoSecondDerivative: return "NoSecondDerivative";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qfdiv
