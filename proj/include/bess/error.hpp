#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bess {

// Stable machine-readable error codes. The string form is part of the
// service and CLI contract; never renumber or rename.
enum class ErrorCode {
  Validation,
  Domain,
  EvidenceBelowThetaStar,
  NmaxExceeded,
  ImproperPrior,
  DegeneratePosterior,
  UnsupportedFamily,
  QuadratureConvergence,
  NoAttainablePair,
  NonInformativeDesign,
  DegenerateVariance,
  TooManyTrials,
  NotFound,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Validation: return "E_VALIDATION";
    case ErrorCode::Domain: return "E_DOMAIN";
    case ErrorCode::EvidenceBelowThetaStar: return "E_EVIDENCE_BELOW_THETA_STAR";
    case ErrorCode::NmaxExceeded: return "E_NMAX_EXCEEDED";
    case ErrorCode::ImproperPrior: return "E_IMPROPER_PRIOR";
    case ErrorCode::DegeneratePosterior: return "E_DEGENERATE_POSTERIOR";
    case ErrorCode::UnsupportedFamily: return "E_UNSUPPORTED_FAMILY";
    case ErrorCode::QuadratureConvergence: return "E_QUADRATURE_CONVERGENCE";
    case ErrorCode::NoAttainablePair: return "E_NO_ATTAINABLE_PAIR";
    case ErrorCode::NonInformativeDesign: return "E_NON_INFORMATIVE_DESIGN";
    case ErrorCode::DegenerateVariance: return "E_DEGENERATE_VARIANCE";
    case ErrorCode::TooManyTrials: return "E_TOO_MANY_TRIALS";
    case ErrorCode::NotFound: return "E_NOT_FOUND";
  }
  return "E_UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const char* message) {
  if (!condition) fail(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace bess
