#include <algorithm>
#include <cmath>
#include <limits>

#include "maxent/error.hpp"
#include "maxent/oracles.hpp"

namespace maxent {

namespace {

struct FamilyState {
  double log_partition = 0.0;
  Vector probabilities;
  Vector mean;      // E[A s]
  Matrix covariance;  // Cov[A s]
};

// Exponential family p_s ~ exp(<lambda, y_s>) over the images y_s = A s.
FamilyState evaluate(const std::vector<Vector>& images, std::span<const double> lambda,
                     bool with_covariance) {
  const std::size_t d = lambda.size();
  FamilyState st;
  st.probabilities.resize(images.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < images.size(); ++s) {
    st.probabilities[s] = dot(lambda, images[s]);
    top = std::max(top, st.probabilities[s]);
  }
  double total = 0.0;
  for (double& p : st.probabilities) {
    p = std::exp(p - top);
    total += p;
  }
  st.log_partition = top + std::log(total);
  st.mean.assign(d, 0.0);
  for (std::size_t s = 0; s < images.size(); ++s) {
    st.probabilities[s] /= total;
    for (std::size_t i = 0; i < d; ++i) st.mean[i] += st.probabilities[s] * images[s][i];
  }
  if (with_covariance) {
    st.covariance = Matrix(d, d);
    for (std::size_t s = 0; s < images.size(); ++s) {
      for (std::size_t i = 0; i < d; ++i) {
        const double di = images[s][i] - st.mean[i];
        for (std::size_t k = 0; k <= i; ++k) {
          st.covariance(i, k) += st.probabilities[s] * di * (images[s][k] - st.mean[k]);
        }
      }
    }
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < i; ++k) st.covariance(k, i) = st.covariance(i, k);
  }
  return st;
}

}  // namespace

FiniteMaxEntResult finite_maxent(const std::vector<IntVector>& points, const Matrix& a,
                                 std::span<const double> b) {
  if (points.empty() || points.size() > (std::size_t{1} << 16)) {
    throw Error(ErrorCode::DimensionMismatch, "finite_maxent needs 1 to 65536 points");
  }
  const std::size_t d = a.rows();
  const std::size_t n = a.cols();
  if (d == 0 || b.size() != d) throw Error(ErrorCode::DimensionMismatch, "b must have one entry per row of A");
  std::vector<Vector> images;
  images.reserve(points.size());
  for (const auto& p : points) {
    if (p.size() != n) throw Error(ErrorCode::DimensionMismatch, "point length differs from A");
    Vector x(p.begin(), p.end());
    images.push_back(multiply(a, x));
  }

  // Dual: minimize ln Z(lambda) - <lambda, b>; gradient E[As] - b, Hessian Cov[As].
  auto objective = [&](const FamilyState& st, std::span<const double> lambda) {
    return st.log_partition - dot(lambda, b);
  };
  const double tol = 1e-12 * (1.0 + norm_inf(b));
  // Near a face the mass collapses onto it and Cov[As] loses rank along the normal.
  auto on_boundary = [](const FamilyState& st) {
    const auto spec = sym_eig_range(st.covariance);
    return !(spec.min_eigenvalue > 1e-6 * (1.0 + spec.max_eigenvalue));
  };
  Vector lambda(d, 0.0);
  FamilyState st = evaluate(images, lambda, true);
  double value = objective(st, lambda);
  for (std::size_t iter = 0; iter < 200; ++iter) {
    Vector grad(d);
    for (std::size_t i = 0; i < d; ++i) grad[i] = st.mean[i] - b[i];
    if (norm_inf(grad) <= tol) {
      FiniteMaxEntResult r;
      r.points = points;
      r.masses = st.probabilities;
      r.lambda = lambda;
      r.mean.assign(n, 0.0);
      r.phi = 0.0;
      for (std::size_t s = 0; s < points.size(); ++s) {
        const double p = st.probabilities[s];
        if (p > 0.0) r.phi -= p * std::log(p);
        for (std::size_t j = 0; j < n; ++j) r.mean[j] += p * static_cast<double>(points[s][j]);
      }
      if (on_boundary(st)) {
        throw Error(ErrorCode::NotInInterior, "b lies on the boundary of the convex hull of A S");
      }
      return r;
    }
    Vector step;
    try {
      step = Cholesky(st.covariance).solve(grad);
    } catch (const Error&) {
      throw Error(ErrorCode::NotInInterior,
                  "the images A s span a lower-dimensional set; b has no interior");
    }
    const double slope = -dot(grad, step);
    // Near the optimum the decrease drops below the rounding of the objective.
    const double slack = 8.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(value));
    double t = 1.0;
    bool accepted = false;
    for (int h = 0; h < 60; ++h, t *= 0.5) {
      Vector trial(lambda);
      for (std::size_t i = 0; i < d; ++i) trial[i] -= t * step[i];
      FamilyState cand = evaluate(images, trial, true);
      const double v = objective(cand, trial);
      if (v <= value + 1e-4 * t * slope + slack) {
        lambda = std::move(trial);
        st = std::move(cand);
        value = v;
        accepted = true;
        break;
      }
    }
    if (!accepted || norm_inf(lambda) > 1e6) {
      throw Error(ErrorCode::NotInInterior, "b is not interior to the convex hull of A S");
    }
  }
  Vector grad(d);
  for (std::size_t i = 0; i < d; ++i) grad[i] = st.mean[i] - b[i];
  if (on_boundary(st)) {
    throw Error(ErrorCode::NotInInterior, "b lies on the boundary of the convex hull of A S");
  }
  throw NotConvergedError(200, norm_inf(grad));
}

}  // namespace maxent
