#pragma once

#include <cstdint>
#include <vector>

#include "maxent/generators.hpp"
#include "maxent/lattice.hpp"
#include "maxent/model.hpp"
#include "maxent/solver.hpp"

namespace maxent {

struct ExactCount {
  BigInt value;
};

struct ExactCountOptions {
  // Upper bound on the product of the per-row residual ranges.
  double max_states = 1e8;
};

// Number of points of P cap Z^n (IntegerNonneg) or P cap {0,1}^n (Binary) by
// dynamic programming over residual right-hand sides, one variable at a time.
// IntegerNonneg needs every column of A non-negative and non-zero
// (UnsupportedMatrix otherwise). Throws StateSpaceTooLarge past the guard.
ExactCount exact_count(const PolytopeSpec& spec, const ExactCountOptions& options = {});

// (n-d)-dimensional volume of {Ax = b, x >= 0} for integer A, b with
// A(Z^n) = Z^d and integral vertices: counts the dilations t*b for
// t = 1..n-d+2, fits the Ehrhart polynomial exactly, and scales its leading
// coefficient by sqrt(det AA^T). Throws QuasiPolynomial when the extra
// dilation disagrees with the fit.
double exact_volume_ehrhart(const PolytopeSpec& spec, const ExactCountOptions& options = {});

// The Ehrhart counts and leading coefficient behind exact_volume_ehrhart.
struct EhrhartFit {
  std::vector<BigInt> counts;  // counts[t-1] for t = 1..n-d+2
  BigRational leading_coefficient;
  BigInt det_AAT;
  double volume = 0.0;
};
EhrhartFit ehrhart_fit(const PolytopeSpec& spec, const ExactCountOptions& options = {});

// Maximum-entropy distribution on an explicit finite set S of integer
// points whose image under A has mean b: p_s proportional to
// exp(<lambda, A s>).
struct FiniteMaxEntResult {
  std::vector<IntVector> points;
  Vector masses;  // aligned with points
  double phi = 0.0;
  Vector mean;    // sum_s p_s s
  Vector lambda;
};

// Throws NotInInterior when b is not interior to conv(A S), NotConverged on
// the iteration cap, DimensionMismatch for |S| > 2^16 or bad shapes.
FiniteMaxEntResult finite_maxent(const std::vector<IntVector>& points, const Matrix& a,
                                 std::span<const double> b);

// Lattice points of the cube {0, 1}^n, or the box {0..m}^n.
std::vector<IntVector> cube_points(std::size_t n, std::int64_t max_coordinate = 1);

// e^{entropy} times the probability that AX = b under the solution's product
// distribution, with the probability written as a Fourier integral over
// [-pi, pi]^d and evaluated by the trapezoid rule on `nodes_per_axis` points
// per axis. Needs d <= 2 (DimensionTooLarge otherwise).
double char_integral_count(const PolytopeSpec& spec, const MaxEntSolution& sol,
                           std::size_t nodes_per_axis = 4096);

}  // namespace maxent
