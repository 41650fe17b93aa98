#include "maxent/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace maxent {

std::string_view to_string(EntropyModel model) {
  switch (model) {
    case EntropyModel::Exponential: return "exponential";
    case EntropyModel::Geometric: return "geometric";
    case EntropyModel::Bernoulli: return "bernoulli";
  }
  return "unknown";
}

std::optional<EntropyModel> parse_model(std::string_view word) {
  if (word == "exponential") return EntropyModel::Exponential;
  if (word == "geometric") return EntropyModel::Geometric;
  if (word == "bernoulli") return EntropyModel::Bernoulli;
  return std::nullopt;
}

EntropyModel default_model(DomainKind kind) {
  switch (kind) {
    case DomainKind::ContinuousNonneg: return EntropyModel::Exponential;
    case DomainKind::IntegerNonneg: return EntropyModel::Geometric;
    case DomainKind::Binary: return EntropyModel::Bernoulli;
  }
  return EntropyModel::Exponential;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool needs_positive_dual(EntropyModel model) { return model != EntropyModel::Bernoulli; }

// Mean of the coordinate distribution at dual value c.
double mean_at(double c, EntropyModel model) {
  switch (model) {
    case EntropyModel::Exponential: return 1.0 / c;
    case EntropyModel::Geometric: return 1.0 / std::expm1(c);
    case EntropyModel::Bernoulli:
      return c >= 0.0 ? std::exp(-c) / (1.0 + std::exp(-c)) : 1.0 / (1.0 + std::exp(c));
  }
  return 0.0;
}

// Variance of the coordinate distribution at dual value c, computed from c
// directly so the Bernoulli case keeps precision near 0 and 1.
double variance_at(double c, EntropyModel model) {
  switch (model) {
    case EntropyModel::Exponential: return 1.0 / (c * c);
    case EntropyModel::Geometric: {
      const double z = 1.0 / std::expm1(c);
      return z + z * z;
    }
    case EntropyModel::Bernoulli: {
      const double e = std::exp(-std::abs(c));
      return e / ((1.0 + e) * (1.0 + e));
    }
  }
  return 0.0;
}

// sup_x [entropy(x) - c x]
double conjugate_at(double c, EntropyModel model) {
  switch (model) {
    case EntropyModel::Exponential: return -std::log(c);
    case EntropyModel::Geometric: return -std::log(-std::expm1(-c));
    case EntropyModel::Bernoulli:
      return c >= 0.0 ? std::log1p(std::exp(-c)) : -c + std::log1p(std::exp(c));
  }
  return 0.0;
}

Vector dual_image(std::span<const double> lambda, const PolytopeSpec& spec) {
  Vector c = multiply_transposed(spec.A, lambda);
  if (spec.tilt) {
    for (std::size_t j = 0; j < c.size(); ++j) c[j] -= (*spec.tilt)[j];
  }
  return c;
}

bool dual_feasible(std::span<const double> c, EntropyModel model) {
  if (!needs_positive_dual(model)) {
    return std::all_of(c.begin(), c.end(), [](double v) { return std::isfinite(v); });
  }
  return std::all_of(c.begin(), c.end(), [](double v) { return v > 0.0 && std::isfinite(v); });
}

// Starting multipliers for Exponential and Geometric when the least-squares
// start is outside the dual domain: Newton steps on sum_j exp(-c_j / s) until
// every c_j is positive.
std::optional<Vector> positive_dual_start(const PolytopeSpec& spec, Vector lambda, double scale) {
  const std::size_t n = spec.num_variables();
  for (int iter = 0; iter < 100; ++iter) {
    const Vector c = dual_image(lambda, spec);
    if (dual_feasible(c, EntropyModel::Exponential)) return lambda;
    Vector w(n), g(n);
    double phi = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      w[j] = std::exp(std::min(-c[j] / scale, 700.0));
      phi += w[j];
    }
    const Vector grad_lambda = multiply(spec.A, w);  // times -1/scale
    Matrix h = weighted_gram(spec.A, w);
    for (std::size_t i = 0; i < h.rows(); ++i) h(i, i) += 1e-12 * (1.0 + h(i, i));
    Vector step;
    try {
      step = Cholesky(h).solve(grad_lambda);  // Newton step scaled by `scale`
    } catch (const Error&) {
      return std::nullopt;
    }
    double t = scale;
    bool moved = false;
    for (int h2 = 0; h2 < 60; ++h2, t *= 0.5) {
      Vector trial = lambda;
      for (std::size_t i = 0; i < trial.size(); ++i) trial[i] += t * step[i];
      const Vector ct = dual_image(trial, spec);
      double phi_t = 0.0;
      for (std::size_t j = 0; j < n; ++j) phi_t += std::exp(std::min(-ct[j] / scale, 700.0));
      if (phi_t < phi) {
        lambda = std::move(trial);
        moved = true;
        break;
      }
    }
    if (!moved) return std::nullopt;
  }
  return std::nullopt;
}

Vector initial_dual(const PolytopeSpec& spec, EntropyModel model) {
  const std::size_t n = spec.num_variables();
  double c0 = 0.0;
  if (model != EntropyModel::Bernoulli) {
    const double scale = norm_1(spec.A.data());
    const double bbar = scale > 0.0 ? norm_1(spec.b) / scale : 0.0;
    const double z0 = std::max(bbar, 1e-3);
    c0 = model == EntropyModel::Exponential ? 1.0 / z0 : std::log1p(1.0 / z0);
  }
  Vector target(n, c0);
  if (spec.tilt) {
    for (std::size_t j = 0; j < n; ++j) target[j] += (*spec.tilt)[j];
  }
  Vector lambda = least_squares_transposed(spec.A, target);
  if (needs_positive_dual(model) && !dual_feasible(dual_image(lambda, spec), model)) {
    auto fixed = positive_dual_start(spec, lambda, c0);
    if (!fixed) {
      throw DualUnboundedError(
          "no multipliers with A^T lambda > tilt: the polyhedron is unbounded in a direction "
          "the tilt does not penalize",
          Vector{});
    }
    lambda = std::move(*fixed);
  }
  return lambda;
}

MaxEntSolution solve_impl(const PolytopeSpec& spec, EntropyModel model, DualTrace* trace,
                          const SolverOptions& options) {
  check_shape(spec);
  try {
    Cholesky rank_check(gram(spec.A));
  } catch (const Error&) {
    throw Error(ErrorCode::RankDeficient, "constraint matrix does not have full row rank");
  }

  const std::size_t d = spec.num_constraints();
  const std::size_t n = spec.num_variables();
  const double tol = options.tolerance * (1.0 + norm_inf(spec.b));
  const double zeta_limit = 1e15 * (1.0 + norm_inf(spec.b));

  const Vector lambda0 = initial_dual(spec, model);
  Vector lambda = lambda0;
  double value = dual_objective(lambda, spec, model);
  const double value0 = value;
  if (trace) trace->push_back(value);

  auto unbounded = [&](const char* why) {
    Vector dir(d);
    for (std::size_t i = 0; i < d; ++i) dir[i] = lambda[i] - lambda0[i];
    throw DualUnboundedError(why, std::move(dir));
  };

  double residual = kInf;
  for (std::size_t iter = 0;; ++iter) {
    const Vector c = dual_image(lambda, spec);
    Vector z(n), v(n);
    for (std::size_t j = 0; j < n; ++j) {
      z[j] = mean_at(c[j], model);
      v[j] = variance_at(c[j], model);
    }
    if (norm_inf(z) > zeta_limit) unbounded("primal coordinates diverge");

    Vector grad = multiply(spec.A, z);  // A z - b, the negated dual gradient
    for (std::size_t i = 0; i < d; ++i) grad[i] -= spec.b[i];
    residual = norm_inf(grad);
    if (residual <= tol) {
      MaxEntSolution sol;
      sol.model = model;
      sol.z = std::move(z);
      sol.lambda = std::move(lambda);
      sol.entropy = entropy_value(sol.z, spec, model);
      sol.residual = residual;
      sol.iterations = iter;
      return sol;
    }
    if (iter >= options.max_iterations) throw NotConvergedError(iter, residual);

    Vector step;
    try {
      step = Cholesky(weighted_gram(spec.A, v)).solve(grad);
    } catch (const Error&) {
      throw NotConvergedError(iter, residual);
    }
    const double slope = -dot(grad, step);

    double t = 1.0;
    bool accepted = false;
    for (std::size_t h = 0; h <= options.max_halvings; ++h, t *= 0.5) {
      Vector trial = lambda;
      for (std::size_t i = 0; i < d; ++i) trial[i] += t * step[i];
      const double trial_value = dual_objective(trial, spec, model);
      if (!std::isfinite(trial_value)) {
        if (trial_value == -kInf) {
          lambda = std::move(trial);
          unbounded("dual objective is unbounded below");
        }
        continue;
      }
      // Below the resolution of the objective the Armijo test is noise; the
      // approximate Armijo test on the directional derivative is used instead.
      const double noise = 1e-14 * (1.0 + std::abs(value));
      const bool flat = std::abs(slope) * t <= 1e-13 * (1.0 + std::abs(value));
      bool ok = trial_value <= value + options.armijo * t * slope;
      if (!ok && flat && trial_value <= value + noise) {
        const Vector ct = dual_image(trial, spec);
        Vector gt(n);
        for (std::size_t j = 0; j < n; ++j) gt[j] = mean_at(ct[j], model);
        gt = multiply(spec.A, gt);
        for (std::size_t i = 0; i < d; ++i) gt[i] -= spec.b[i];
        ok = -dot(gt, step) <= (2.0 * options.armijo - 1.0) * slope;
      }
      if (ok) {
        lambda = std::move(trial);
        value = trial_value;
        accepted = true;
        break;
      }
    }
    if (!accepted) throw NotConvergedError(iter, residual);
    if (trace) trace->push_back(value);

    if (norm_inf(lambda) > 1e15 * (1.0 + norm_inf(lambda0))) unbounded("dual multipliers diverge");
    if (value < -1e15 * (1.0 + std::abs(value0))) {
      unbounded("dual objective diverges");
    }
  }
}

}  // namespace

Vector dual_to_primal(std::span<const double> lambda, const PolytopeSpec& spec,
                      EntropyModel model) {
  if (lambda.size() != spec.num_constraints()) {
    throw Error(ErrorCode::DimensionMismatch, "lambda length differs from the number of rows");
  }
  const Vector c = dual_image(lambda, spec);
  Vector z(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (needs_positive_dual(model) && !(c[j] > 0.0)) {
      std::ostringstream os;
      os << "(A^T lambda - tilt)_" << j << " = " << c[j] << " must be positive";
      throw Error(ErrorCode::DualDomainViolation, os.str());
    }
    z[j] = mean_at(c[j], model);
  }
  return z;
}

double entropy_value(std::span<const double> z, const PolytopeSpec& spec, EntropyModel model) {
  if (z.size() != spec.num_variables()) {
    throw Error(ErrorCode::DimensionMismatch, "point length differs from the number of columns");
  }
  double s = model == EntropyModel::Exponential ? static_cast<double>(z.size()) : 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    const double x = z[j];
    const bool inside = model == EntropyModel::Bernoulli ? (x > 0.0 && x < 1.0) : x > 0.0;
    if (!inside || !std::isfinite(x)) {
      std::ostringstream os;
      os << "coordinate " << j << " = " << x << " outside the open domain of the "
         << to_string(model) << " model";
      throw Error(ErrorCode::DomainViolation, os.str());
    }
    switch (model) {
      case EntropyModel::Exponential: s += std::log(x); break;
      case EntropyModel::Geometric: s += (x + 1.0) * std::log1p(x) - x * std::log(x); break;
      case EntropyModel::Bernoulli: s += -x * std::log(x) - (1.0 - x) * std::log1p(-x); break;
    }
    s += spec.tilt_at(j) * x;
  }
  return s;
}

Vector entropy_gradient(std::span<const double> z, const PolytopeSpec& spec,
                        EntropyModel model) {
  Vector g(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    const double x = z[j];
    switch (model) {
      case EntropyModel::Exponential: g[j] = 1.0 / x; break;
      case EntropyModel::Geometric: g[j] = std::log1p(1.0 / x); break;
      case EntropyModel::Bernoulli: g[j] = std::log1p(-x) - std::log(x); break;
    }
    g[j] += spec.tilt_at(j);
  }
  return g;
}

Vector coordinate_variances(std::span<const double> z, EntropyModel model) {
  Vector v(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    const double x = z[j];
    switch (model) {
      case EntropyModel::Exponential: v[j] = x * x; break;
      case EntropyModel::Geometric: v[j] = x + x * x; break;
      case EntropyModel::Bernoulli: v[j] = x - x * x; break;
    }
  }
  return v;
}

double dual_objective(std::span<const double> lambda, const PolytopeSpec& spec,
                      EntropyModel model) {
  const Vector c = dual_image(lambda, spec);
  if (!dual_feasible(c, model)) return kInf;
  double s = dot(lambda, spec.b);
  for (double cj : c) s += conjugate_at(cj, model);
  return s;
}

MaxEntSolution solve_max_entropy(const PolytopeSpec& spec, EntropyModel model,
                                 const SolverOptions& options) {
  return solve_impl(spec, model, nullptr, options);
}

MaxEntSolution solve_max_entropy_traced(const PolytopeSpec& spec, EntropyModel model,
                                        DualTrace& trace, const SolverOptions& options) {
  trace.clear();
  return solve_impl(spec, model, &trace, options);
}

}  // namespace maxent
