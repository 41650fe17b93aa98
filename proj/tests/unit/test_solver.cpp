#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "maxent/error.hpp"
#include "maxent/estimators.hpp"
#include "maxent/generators.hpp"
#include "maxent/solver.hpp"
#include "test_support.hpp"

using namespace maxent;

namespace {

PolytopeSpec make(Matrix a, Vector b, DomainKind domain) {
  PolytopeSpec s;
  s.A = std::move(a);
  s.b = std::move(b);
  s.domain = domain;
  return s;
}

PolytopeSpec ones_row(std::size_t n, double b, DomainKind domain) {
  return make(Matrix(1, n, 1.0), {b}, domain);
}

double model_gradient(double z, EntropyModel m) {
  switch (m) {
    case EntropyModel::Exponential: return 1.0 / z;
    case EntropyModel::Geometric: return std::log1p(1.0 / z);
    case EntropyModel::Bernoulli: return std::log((1.0 - z) / z);
  }
  return 0.0;
}

}  // namespace

TEST(DualToPrimal, Examples) {
  auto one = [&](double c, EntropyModel m) {
    PolytopeSpec s = make({{1, 1}}, {1}, DomainKind::ContinuousNonneg);
    return dual_to_primal(Vector{c}, s, m)[0];
  };
  EXPECT_NEAR(one(std::log(2.0), EntropyModel::Geometric), 1.0, 1e-15);
  EXPECT_NEAR(one(0.0, EntropyModel::Bernoulli), 0.5, 1e-15);
  EXPECT_NEAR(one(4.0, EntropyModel::Exponential), 0.25, 1e-15);
}

TEST(DualToPrimal, DomainViolation) {
  const auto s = make({{1, 1}}, {1}, DomainKind::ContinuousNonneg);
  for (auto m : {EntropyModel::Exponential, EntropyModel::Geometric}) {
    try {
      dual_to_primal(Vector{0.0}, s, m);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::DualDomainViolation);
    }
  }
  EXPECT_NO_THROW(dual_to_primal(Vector{-3.0}, s, EntropyModel::Bernoulli));
}

TEST(SolveMaxEntropy, SymmetricSimplex) {
  const auto sol = solve_max_entropy(ones_row(4, 8, DomainKind::ContinuousNonneg),
                                     EntropyModel::Exponential);
  for (double z : sol.z) EXPECT_NEAR(z, 2.0, 1e-10);
  EXPECT_LE(sol.residual, 1e-10 * 9);
}

TEST(SolveMaxEntropy, HalfCube) {
  const auto sol = solve_max_entropy(ones_row(10, 5, DomainKind::Binary), EntropyModel::Bernoulli);
  for (double z : sol.z) EXPECT_NEAR(z, 0.5, 1e-12);
  EXPECT_NEAR(sol.entropy, 10 * std::numbers::ln2, 1e-12);
}

TEST(SolveMaxEntropy, GeometricMatchesBisection) {
  const auto sol = solve_max_entropy(make({{1, 2}}, {3}, DomainKind::IntegerNonneg),
                                     EntropyModel::Geometric);
  const Vector ref = testsupport::bisect_single_row({1, 2}, 3, EntropyModel::Geometric);
  EXPECT_NEAR(sol.z[0], ref[0], 1e-9);
  EXPECT_NEAR(sol.z[1], ref[1], 1e-9);
  // ln((1+z2)/z2) = 2 ln((1+z1)/z1)
  EXPECT_NEAR(std::log1p(1 / sol.z[1]), 2 * std::log1p(1 / sol.z[0]), 1e-9);
  EXPECT_NEAR(sol.z[0] + 2 * sol.z[1], 3.0, 1e-9);
}

TEST(SolveMaxEntropy, SingleRowAllModelsMatchBisection) {
  testsupport::Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(2, 8));
    std::vector<double> a(n);
    double cap = 0.0;
    for (auto& v : a) {
      v = static_cast<double>(rng.integer(1, 4));
      cap += v;
    }
    for (auto m : {EntropyModel::Exponential, EntropyModel::Geometric, EntropyModel::Bernoulli}) {
      const double b = m == EntropyModel::Bernoulli ? rng.real(0.1, 0.9) * cap : rng.real(0.5, 20.0);
      PolytopeSpec s;
      s.A = Matrix(1, n);
      for (std::size_t j = 0; j < n; ++j) s.A(0, j) = a[j];
      s.b = {b};
      const auto sol = solve_max_entropy(s, m);
      const Vector ref = testsupport::bisect_single_row(a, b, m);
      for (std::size_t j = 0; j < n; ++j) EXPECT_NEAR(sol.z[j], ref[j], 1e-8 * (1 + ref[j]));
    }
  }
}

TEST(SolveMaxEntropy, DualUnboundedOnEmptyInterior) {
  try {
    solve_max_entropy(make({{1, 1}}, {-1}, DomainKind::ContinuousNonneg), EntropyModel::Exponential);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DualUnbounded);
  }
}

TEST(SolveMaxEntropy, RankDeficient) {
  try {
    solve_max_entropy(make({{1, 1, 1}, {1, 1, 1}}, {3, 3}, DomainKind::ContinuousNonneg),
                      EntropyModel::Exponential);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RankDeficient);
  }
}

TEST(SolveMaxEntropy, NotConvergedOnTinyCap) {
  SolverOptions opts;
  opts.max_iterations = 1;
  try {
    solve_max_entropy(gen_transport({220, 215, 93, 64}, {108, 286, 71, 127}),
                      EntropyModel::Geometric, opts);
    FAIL();
  } catch (const NotConvergedError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotConverged);
    EXPECT_GT(e.residual(), 0.0);
  }
}

TEST(SolveMaxEntropy, TiltedSegment) {
  // maximize 1 + ln x1 + 1 + ln x2 + x1 on x1 + x2 = 4
  auto spec = make({{1, 1}}, {4}, DomainKind::ContinuousNonneg);
  spec.tilt = Vector{1.0, 0.0};
  const auto sol = solve_max_entropy(spec, EntropyModel::Exponential);
  // 1/x1 + 1 = 1/x2, x2 = 4 - x1
  const double x1 = sol.z[0];
  EXPECT_NEAR(1 / x1 + 1, 1 / (4 - x1), 1e-9);
  EXPECT_GT(x1, 2.0);
}

TEST(EntropyValue, Examples) {
  const auto three = make({{1, 1, 1}}, {3}, DomainKind::ContinuousNonneg);
  EXPECT_NEAR(entropy_value(Vector{1, 1, 1}, three, EntropyModel::Exponential), 3.0, 1e-15);
  const auto two = make({{1, 1}}, {2}, DomainKind::IntegerNonneg);
  EXPECT_NEAR(entropy_value(Vector{1, 1}, two, EntropyModel::Geometric), 4 * std::numbers::ln2, 1e-15);
  const auto ten = ones_row(10, 5, DomainKind::Binary);
  EXPECT_NEAR(entropy_value(Vector(10, 0.5), ten, EntropyModel::Bernoulli), 10 * std::numbers::ln2,
              1e-14);
}

TEST(EntropyValue, DomainViolation) {
  const auto s = make({{1, 1}}, {1}, DomainKind::Binary);
  EXPECT_THROW(entropy_value(Vector{1.5, 0.5}, s, EntropyModel::Bernoulli), Error);
  EXPECT_THROW(entropy_value(Vector{-1, 0.5}, s, EntropyModel::Geometric), Error);
  EXPECT_THROW(entropy_value(Vector{0, 0.5}, s, EntropyModel::Exponential), Error);
}

TEST(SolverProperties, KktResidual) {
  testsupport::Rng rng(101);
  for (auto domain : {DomainKind::IntegerNonneg, DomainKind::Binary}) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto spec = testsupport::random_instance(rng, domain);
      const auto model = default_model(domain);
      const auto sol = solve_max_entropy(spec, model);
      const Vector c = multiply_transposed(spec.A, sol.lambda);
      for (std::size_t j = 0; j < sol.z.size(); ++j) {
        EXPECT_NEAR(model_gradient(sol.z[j], model), c[j], 1e-8);
      }
      EXPECT_LE(sol.residual, 1e-10 * (1 + norm_inf(spec.b)));
    }
  }
}

TEST(SolverProperties, ProductMassIsConstantOnLatticePoints) {
  testsupport::Rng rng(202);
  for (auto domain : {DomainKind::IntegerNonneg, DomainKind::Binary}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto spec = testsupport::random_instance(rng, domain);
      const auto sol = solve_max_entropy(spec, default_model(domain));
      const auto pts = testsupport::enumerate_points(spec);
      ASSERT_FALSE(pts.empty());
      for (const auto& x : pts) {
        EXPECT_NEAR(std::exp(testsupport::log_product_mass(sol, x) + sol.entropy), 1.0, 1e-8);
      }
      EXPECT_LE(std::log(static_cast<double>(pts.size())) - sol.entropy, 1e-12);
    }
  }
}

TEST(SolverProperties, GradientMatchesFiniteDifferences) {
  testsupport::Rng rng(303);
  for (auto m : {EntropyModel::Exponential, EntropyModel::Geometric, EntropyModel::Bernoulli}) {
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 4;
      PolytopeSpec s = make(Matrix(1, n, 1.0), {1.0}, DomainKind::ContinuousNonneg);
      s.tilt = Vector(n);
      Vector z(n);
      for (std::size_t j = 0; j < n; ++j) {
        z[j] = m == EntropyModel::Bernoulli ? rng.real(0.05, 0.95) : rng.real(0.1, 5.0);
        (*s.tilt)[j] = rng.real(-1.0, 1.0);
      }
      const Vector g = entropy_gradient(z, s, m);
      for (std::size_t j = 0; j < n; ++j) {
        Vector up = z, down = z;
        up[j] += 1e-6;
        down[j] -= 1e-6;
        const double fd = (entropy_value(up, s, m) - entropy_value(down, s, m)) / 2e-6;
        EXPECT_NEAR(g[j], fd, 1e-5);
      }
    }
  }
}

TEST(SolverProperties, CovarianceIdentity) {
  testsupport::Rng rng(404);
  for (auto domain : {DomainKind::ContinuousNonneg, DomainKind::IntegerNonneg, DomainKind::Binary}) {
    for (int trial = 0; trial < 7; ++trial) {
      auto spec = testsupport::random_instance(
          rng, domain == DomainKind::ContinuousNonneg ? DomainKind::IntegerNonneg : domain);
      spec.domain = domain;
      const auto sol = solve_max_entropy(spec, default_model(domain));
      const Vector v = coordinate_variances(sol.z, sol.model);
      const Matrix ref = testsupport::outer_product_sum(spec.A, v);
      const Matrix got = covariance_matrix(spec, sol);
      Matrix b = spec.A;
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) *= std::sqrt(v[j]);
      const Matrix bbt = multiply(b, b.transpose());
      for (std::size_t p = 0; p < ref.rows(); ++p)
        for (std::size_t q = 0; q < ref.cols(); ++q) {
          EXPECT_NEAR(got(p, q), ref(p, q), 1e-10);
          EXPECT_NEAR(bbt(p, q), ref(p, q), 1e-10);
        }
    }
  }
}

TEST(SolverProperties, DualObjectiveIsMonotone) {
  testsupport::Rng rng(505);
  std::vector<PolytopeSpec> specs{gen_transport({220, 215, 93, 64}, {108, 286, 71, 127})};
  for (int i = 0; i < 10; ++i) specs.push_back(testsupport::random_instance(rng, DomainKind::Binary));
  for (const auto& spec : specs) {
    DualTrace trace;
    const auto sol = solve_max_entropy_traced(spec, default_model(spec.domain), trace);
    for (std::size_t k = 1; k < trace.size(); ++k) {
      EXPECT_LE(trace[k], trace[k - 1] + 1e-12 * (1 + std::abs(trace[k - 1])));
    }
    EXPECT_NEAR(dual_objective(sol.lambda, spec, sol.model), sol.entropy,
                1e-8 * (1 + std::abs(sol.entropy)));
  }
}

TEST(ParseModel, Names) {
  EXPECT_EQ(parse_model("exponential"), EntropyModel::Exponential);
  EXPECT_EQ(parse_model("geometric"), EntropyModel::Geometric);
  EXPECT_EQ(parse_model("bernoulli"), EntropyModel::Bernoulli);
  EXPECT_FALSE(parse_model("gauss").has_value());
  EXPECT_EQ(default_model(DomainKind::Binary), EntropyModel::Bernoulli);
}
