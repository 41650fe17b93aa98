#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace maxent {

enum class ErrorCode {
  // Input validation.
  DimensionMismatch,
  NonIntegerData,
  RankDeficient,
  MarginMismatch,
  ParseError,
  // Numerical linear algebra.
  NotPositiveDefinite,
  NotSymmetric,
  // Solver.
  DualDomainViolation,
  DomainViolation,
  NotConverged,
  DualUnbounded,
  NotInInterior,
  // Oracle guards.
  StateSpaceTooLarge,
  UnsupportedMatrix,
  QuasiPolynomial,
  DimensionTooLarge,
};

std::string_view to_string(ErrorCode code);

// Exit status the command-line tool uses for an error of this kind:
// 1 for validation, 2 for solver failures, 3 for oracle guards.
int exit_status(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class NotConvergedError : public Error {
 public:
  NotConvergedError(std::size_t iterations, double residual);

  std::size_t iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  std::size_t iterations_;
  double residual_;
};

}  // namespace maxent
