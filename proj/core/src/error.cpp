#include "maxent/error.hpp"

#include <sstream>

namespace maxent {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonIntegerData: return "NonIntegerData";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::MarginMismatch: return "MarginMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::DualDomainViolation: return "DualDomainViolation";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::DualUnbounded: return "DualUnbounded";
    case ErrorCode::NotInInterior: return "NotInInterior";
    case ErrorCode::StateSpaceTooLarge: return "StateSpaceTooLarge";
    case ErrorCode::UnsupportedMatrix: return "UnsupportedMatrix";
    case ErrorCode::QuasiPolynomial: return "QuasiPolynomial";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
  }
  return "Unknown";
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotConverged:
    case ErrorCode::DualUnbounded:
    case ErrorCode::NotInInterior:
    case ErrorCode::NotPositiveDefinite:
      return 2;
    case ErrorCode::StateSpaceTooLarge:
    case ErrorCode::UnsupportedMatrix:
    case ErrorCode::QuasiPolynomial:
    case ErrorCode::DimensionTooLarge:
      return 3;
    default:
      return 1;
  }
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

namespace {
std::string not_converged_message(std::size_t iterations, double residual) {
  std::ostringstream os;
  os << "no convergence after " << iterations << " iterations (residual " << residual << ")";
  return os.str();
}
}  // namespace

NotConvergedError::NotConvergedError(std::size_t iterations, double residual)
    : Error(ErrorCode::NotConverged, not_converged_message(iterations, residual)),
      iterations_(iterations),
      residual_(residual) {}

}  // namespace maxent
