#pragma once

#include <cstdint>
#include <optional>

#include "maxent/generators.hpp"
#include "maxent/model.hpp"
#include "maxent/solver.hpp"

namespace maxent {

// A Gaussian approximation in natural-log scale with its additive parts:
//   log_value = entropy_term + half_logdet_AAT - half_logdet_BBT
//               + dim_term + lattice_term
// where absent parts contribute nothing.
struct LogEstimate {
  double log_value = 0.0;
  double entropy_term = 0.0;
  std::optional<double> half_logdet_AAT;  // volume only
  double half_logdet_BBT = 0.0;
  double dim_term = 0.0;                  // -(d/2) ln(2 pi)
  std::optional<double> lattice_term;     // ln det Lambda, counting only
  // Set when det Lambda != 1; the error guarantees assume Lambda = Z^d.
  bool lattice_warning = false;

  double log10_value() const;
};

// Volume of {Ax = b, x >= 0} from the Exponential solution:
//   e^{f(z)} (det AA^T / det BB^T)^{1/2} / (2 pi)^{d/2},  B = A diag(z).
LogEstimate gaussian_volume(const PolytopeSpec& spec, const MaxEntSolution& sol);

// Integer-point (Geometric) or 0-1 point (Bernoulli) count:
//   e^{entropy} det Lambda / ((2 pi)^{d/2} (det BB^T)^{1/2}),
// B = A diag(sqrt(var_j)).
LogEstimate gaussian_count(const PolytopeSpec& spec, const MaxEntSolution& sol);

// A diag(var_j) A^T, the covariance of AX under the maximum-entropy product
// distribution. This is B B^T.
Matrix covariance_matrix(const PolytopeSpec& spec, const MaxEntSolution& sol);

// Hypothesis quantities of the error theorems for the solution's model.
struct ConditionReport {
  EntropyModel model = EntropyModel::Exponential;
  double lambda_q = 0.0;  // min eigenvalue of q, the matrix of q being BB^T / 2
  double theta = 0.0;
  std::optional<double> alpha;
  std::optional<double> rho;
  double epsilon = 0.5;
  double gamma_constant = 1.0;
  double lambda_required = 0.0;
  bool hypotheses_met = false;
  std::optional<double> delta_bound;
  std::optional<std::int64_t> delta_exponent;  // m of the integer bound
};

// Additive error bounds. Integer points: (1 + 2 alpha pi^2 / 5)^(-m) with
// m = floor(1 / (16 pi^2 rho theta^2)). 0-1 points: exp(-alpha / (80 theta^2 rho)).
double delta_bound_integer(double alpha, double theta, double rho);
std::int64_t delta_exponent_integer(double theta, double rho);
double delta_bound_binary(double alpha, double theta, double rho);

// gamma * eps^-2 * theta^2 * (d + ln(1/eps))^2 * ln(n/eps)
double required_lambda(double gamma_constant, double epsilon, double theta, std::size_t d,
                       std::size_t n);

// `family` supplies rho for the counting models; it is ignored for volume.
// Throws DomainViolation unless 0 < epsilon <= 1/2.
ConditionReport condition_report(const PolytopeSpec& spec, const MaxEntSolution& sol,
                                 const YFamily* family, double epsilon,
                                 double gamma_constant = 1.0);

struct MCEstimate {
  std::optional<double> log_value;  // absent when no sample hit P
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
  double std_err_log = 0.0;
  std::uint64_t seed = 0;
  std::size_t shards = 1;
  double entropy = 0.0;

  // e^{entropy} * standard error of hits / samples, in log scale.
  double log_count_std_err() const;
};

// Rejection estimate |P cap Z^n| = e^{entropy} Pr{X in P} with X drawn from
// the maximum-entropy product distribution. Samples are split into fixed
// blocks of kMonteCarloBlock, block k drawing from mt19937_64 seeded with
// (seed, k), so the result depends on the seed only, not on `shards`.
inline constexpr std::uint64_t kMonteCarloBlock = 4096;
MCEstimate monte_carlo_count(const PolytopeSpec& spec, const MaxEntSolution& sol,
                             std::uint64_t samples, std::uint64_t seed, std::size_t shards = 1);

}  // namespace maxent
