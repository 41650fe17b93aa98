#include "maxent/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "maxent/error.hpp"

namespace maxent {

namespace {

constexpr double kPi = std::numbers::pi;

double dimension_term(std::size_t d) {
  return -0.5 * static_cast<double>(d) * std::log(2.0 * kPi);
}

void finish(LogEstimate& e) {
  e.log_value = e.entropy_term + e.half_logdet_AAT.value_or(0.0) - e.half_logdet_BBT +
                e.dim_term + e.lattice_term.value_or(0.0);
}

Vector column_norms(const Matrix& a, int p) {
  Vector out(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out[j] += p == 1 ? std::abs(a(i, j)) : a(i, j) * a(i, j);
  if (p == 2)
    for (double& v : out) v = std::sqrt(v);
  return out;
}

}  // namespace

double LogEstimate::log10_value() const { return log_value / std::numbers::ln10; }

Matrix covariance_matrix(const PolytopeSpec& spec, const MaxEntSolution& sol) {
  return weighted_gram(spec.A, coordinate_variances(sol.z, sol.model));
}

LogEstimate gaussian_volume(const PolytopeSpec& spec, const MaxEntSolution& sol) {
  if (sol.model != EntropyModel::Exponential) {
    throw Error(ErrorCode::DomainViolation, "volume estimate needs the exponential solution");
  }
  LogEstimate e;
  e.entropy_term = sol.entropy;
  e.half_logdet_AAT = 0.5 * logdet_gram(spec.A);
  e.half_logdet_BBT = 0.5 * Cholesky(covariance_matrix(spec, sol)).logdet();
  e.dim_term = dimension_term(spec.num_constraints());
  finish(e);
  return e;
}

LogEstimate gaussian_count(const PolytopeSpec& spec, const MaxEntSolution& sol) {
  const EntropyModel expected = default_model(spec.domain);
  if (!is_discrete(spec.domain) || sol.model != expected) {
    throw Error(ErrorCode::DomainViolation,
                "count estimate needs a counting domain and its matching model");
  }
  const BigInt index = hnf_lattice_index(spec.A);
  LogEstimate e;
  e.entropy_term = sol.entropy;
  e.half_logdet_BBT = 0.5 * Cholesky(covariance_matrix(spec, sol)).logdet();
  e.dim_term = dimension_term(spec.num_constraints());
  e.lattice_term = std::log(index.convert_to<double>());
  e.lattice_warning = index != 1;
  finish(e);
  return e;
}

double delta_bound_integer(double alpha, double theta, double rho) {
  const auto m = delta_exponent_integer(theta, rho);
  return std::pow(1.0 + 0.4 * alpha * kPi * kPi, -static_cast<double>(m));
}

std::int64_t delta_exponent_integer(double theta, double rho) {
  return static_cast<std::int64_t>(std::floor(1.0 / (16.0 * kPi * kPi * rho * theta * theta)));
}

double delta_bound_binary(double alpha, double theta, double rho) {
  return std::exp(-alpha / (80.0 * theta * theta * rho));
}

double required_lambda(double gamma_constant, double epsilon, double theta, std::size_t d,
                       std::size_t n) {
  const double spread = static_cast<double>(d) + std::log(1.0 / epsilon);
  return gamma_constant * theta * theta * spread * spread *
         std::log(static_cast<double>(n) / epsilon) / (epsilon * epsilon);
}

ConditionReport condition_report(const PolytopeSpec& spec, const MaxEntSolution& sol,
                                 const YFamily* family, double epsilon, double gamma_constant) {
  if (!(epsilon > 0.0 && epsilon <= 0.5)) {
    throw Error(ErrorCode::DomainViolation, "epsilon must lie in (0, 1/2]");
  }
  ConditionReport r;
  r.model = sol.model;
  r.epsilon = epsilon;
  r.gamma_constant = gamma_constant;
  r.lambda_q = 0.5 * sym_eig_range(covariance_matrix(spec, sol)).min_eigenvalue;

  const std::size_t n = spec.num_variables();
  const auto& z = sol.z;
  switch (sol.model) {
    case EntropyModel::Exponential: {
      const Vector len = column_norms(spec.A, 2);
      r.theta = 0.0;
      for (std::size_t j = 0; j < n; ++j) r.theta = std::max(r.theta, z[j] * len[j]);
      break;
    }
    case EntropyModel::Geometric: {
      const Vector len = column_norms(spec.A, 1);
      r.theta = 1.0;
      double alpha = z.front() * (1.0 + z.front());
      for (std::size_t j = 0; j < n; ++j) {
        r.theta = std::max(r.theta, len[j] / std::sqrt(z[j] / std::pow(1.0 + z[j], 3)));
        alpha = std::min(alpha, z[j] * (1.0 + z[j]));
      }
      r.alpha = alpha;
      break;
    }
    case EntropyModel::Bernoulli: {
      const Vector len = column_norms(spec.A, 1);
      r.theta = 1.0;
      double alpha = z.front() * (1.0 - z.front());
      for (std::size_t j = 0; j < n; ++j) {
        r.theta = std::max(r.theta, len[j] / std::sqrt(z[j] * (1.0 - z[j])));
        alpha = std::min(alpha, z[j] * (1.0 - z[j]));
      }
      r.alpha = alpha;
      break;
    }
  }

  if (family != nullptr && sol.model != EntropyModel::Exponential) {
    double rho = 0.0;
    for (std::size_t i = 0; i < family->sets.size(); ++i) {
      rho = std::max(rho, psi_eigen_max(*family, i));
    }
    r.rho = rho;
    if (sol.model == EntropyModel::Geometric) {
      r.delta_exponent = delta_exponent_integer(r.theta, rho);
      r.delta_bound = delta_bound_integer(*r.alpha, r.theta, rho);
    } else {
      r.delta_bound = delta_bound_binary(*r.alpha, r.theta, rho);
    }
  }

  r.lambda_required =
      required_lambda(gamma_constant, epsilon, r.theta, spec.num_constraints(), n);
  const bool arithmetic_ok = sol.model == EntropyModel::Exponential || (r.alpha && r.rho);
  r.hypotheses_met = arithmetic_ok && r.lambda_q >= r.lambda_required;
  return r;
}

}  // namespace maxent
