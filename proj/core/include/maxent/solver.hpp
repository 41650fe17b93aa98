#pragma once

#include <cstddef>
#include <string_view>
#include <optional>

#include "maxent/error.hpp"
#include "maxent/model.hpp"

namespace maxent {

// Per-coordinate entropy of the product distribution whose mean is the
// coordinate value:
//   Exponential: 1 + ln x                         (density on [0, inf))
//   Geometric:   (x + 1) ln(x + 1) - x ln x       (mass on 0, 1, 2, ...)
//   Bernoulli:   -x ln x - (1 - x) ln(1 - x)      (mass on {0, 1})
enum class EntropyModel { Exponential, Geometric, Bernoulli };

std::string_view to_string(EntropyModel model);
std::optional<EntropyModel> parse_model(std::string_view word);
EntropyModel default_model(DomainKind kind);

struct MaxEntSolution {
  EntropyModel model = EntropyModel::Exponential;
  Vector z;       // primal maximizer, all coordinates in the open domain
  Vector lambda;  // dual multipliers, one per constraint row
  double entropy = 0.0;  // model entropy at z plus <tilt, z>
  double residual = 0.0;  // ||Az - b||_inf
  std::size_t iterations = 0;
};

// Solves grad entropy(z)_j = (A^T lambda)_j - tilt_j for z in closed form.
// Throws DualDomainViolation when Exponential or Geometric would need a
// non-positive (A^T lambda - tilt)_j.
Vector dual_to_primal(std::span<const double> lambda, const PolytopeSpec& spec,
                      EntropyModel model);

// Entropy of z under `model` plus the tilt term. Throws DomainViolation when
// z is outside the open domain of the model.
double entropy_value(std::span<const double> z, const PolytopeSpec& spec, EntropyModel model);

// Gradient of entropy_value with respect to z.
Vector entropy_gradient(std::span<const double> z, const PolytopeSpec& spec,
                        EntropyModel model);

// Variance of the product distribution at mean z_j: z^2, z + z^2, z - z^2.
Vector coordinate_variances(std::span<const double> z, EntropyModel model);

// Dual objective <lambda, b> + sum_j conj(c_j), c = A^T lambda - tilt. Its
// minimum equals the maximum entropy. Returns +inf outside the dual domain.
double dual_objective(std::span<const double> lambda, const PolytopeSpec& spec,
                      EntropyModel model);

struct SolverOptions {
  std::size_t max_iterations = 200;
  std::size_t max_halvings = 60;
  double armijo = 1e-4;
  // Converged when ||Az - b||_inf <= tolerance * (1 + ||b||_inf).
  double tolerance = 1e-10;
};

// Raised when the dual iterates run off to infinity: the polyhedron has an
// empty interior or the tilted entropy is unbounded on it. `direction` is the
// accumulated dual displacement, a candidate emptiness certificate.
class DualUnboundedError : public Error {
 public:
  DualUnboundedError(const std::string& what, Vector direction)
      : Error(ErrorCode::DualUnbounded, what), direction_(std::move(direction)) {}
  const Vector& direction() const noexcept { return direction_; }

 private:
  Vector direction_;
};

// Maximizes the model entropy (plus tilt) over {Ax = b} by damped Newton
// iteration on the d-dimensional dual. Throws NotConvergedError,
// DualUnboundedError, or RankDeficient.
MaxEntSolution solve_max_entropy(const PolytopeSpec& spec, EntropyModel model,
                                 const SolverOptions& options = {});

// Optional observer used by tests: called with the dual objective after every
// accepted Newton step.
using DualTrace = std::vector<double>;
MaxEntSolution solve_max_entropy_traced(const PolytopeSpec& spec, EntropyModel model,
                                        DualTrace& trace, const SolverOptions& options = {});

}  // namespace maxent
