#include "test_support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "maxent/error.hpp"

namespace testsupport {

namespace {

// Depth-first walk over the coordinates; the last one is solved for directly.
template <class Visit>
void dfs(const maxent::IntMatrix& a, bool binary, std::size_t j,
         std::vector<std::int64_t>& residual, IntVector& x, Visit& visit) {
  const std::size_t d = a.rows;
  const std::size_t n = a.cols;
  if (j + 1 == n) {
    auto fits = [&](std::int64_t v) {
      for (std::size_t i = 0; i < d; ++i)
        if (residual[i] != a(i, j) * v) return false;
      return true;
    };
    std::vector<std::int64_t> candidates{0, 1};
    if (!binary) {
      // integer mode: columns are non-zero, so v is forced by one row
      std::size_t i = 0;
      while (a(i, j) == 0) ++i;
      if (residual[i] < 0 || residual[i] % a(i, j) != 0) return;
      candidates = {residual[i] / a(i, j)};
    }
    for (auto v : candidates) {
      if (!fits(v)) continue;
      x[j] = v;
      visit(x);
    }
    x[j] = 0;
    return;
  }
  const std::int64_t cap = binary ? 1 : std::numeric_limits<std::int64_t>::max();
  for (std::int64_t v = 0; v <= cap; ++v) {
    bool ok = true;
    if (!binary) {
      for (std::size_t i = 0; i < d; ++i) ok = ok && residual[i] - a(i, j) * v >= 0;
      if (!ok) break;
    }
    x[j] = v;
    for (std::size_t i = 0; i < d; ++i) residual[i] -= a(i, j) * v;
    dfs(a, binary, j + 1, residual, x, visit);
    for (std::size_t i = 0; i < d; ++i) residual[i] += a(i, j) * v;
  }
  x[j] = 0;
}

template <class Visit>
void walk(const PolytopeSpec& spec, Visit visit) {
  const auto a = maxent::to_integer_matrix(spec.A);
  std::vector<std::int64_t> residual = maxent::to_integer_vector(spec.b);
  IntVector x(a.cols, 0);
  dfs(a, spec.domain == maxent::DomainKind::Binary, 0, residual, x, visit);
}

}  // namespace

std::vector<IntVector> enumerate_points(const PolytopeSpec& spec) {
  std::vector<IntVector> out;
  walk(spec, [&](const IntVector& x) { out.push_back(x); });
  return out;
}

BigInt brute_force_count(const PolytopeSpec& spec) {
  std::uint64_t count = 0;
  walk(spec, [&](const IntVector&) { ++count; });
  return BigInt(count);
}

double cofactor_determinant(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  double det = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    Matrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, k = 0; j < n; ++j)
        if (j != c) minor(i - 1, k++) = m(i, j);
    det += (c % 2 == 0 ? 1.0 : -1.0) * m(0, c) * cofactor_determinant(minor);
  }
  return det;
}

BigInt cofactor_determinant(const std::vector<std::vector<std::int64_t>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  BigInt det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<std::int64_t>> minor(n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) minor[i - 1].push_back(m[i][j]);
    const BigInt term = BigInt(m[0][c]) * cofactor_determinant(minor);
    det += c % 2 == 0 ? term : BigInt(-term);
  }
  return det;
}

BigInt minors_gcd(const Matrix& a) {
  const auto ia = maxent::to_integer_matrix(a);
  const std::size_t d = ia.rows;
  const std::size_t n = ia.cols;
  std::vector<std::size_t> pick(d);
  std::iota(pick.begin(), pick.end(), 0);
  BigInt g = 0;
  while (true) {
    std::vector<std::vector<std::int64_t>> sub(d, std::vector<std::int64_t>(d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) sub[i][k] = ia(i, pick[k]);
    BigInt det = cofactor_determinant(sub);
    if (det < 0) det = -det;
    g = boost::multiprecision::gcd(g, det);
    // next combination
    std::size_t i = d;
    while (i-- > 0) {
      if (pick[i] < n - d + i) break;
    }
    if (i == static_cast<std::size_t>(-1)) break;
    ++pick[i];
    for (std::size_t k = i + 1; k < d; ++k) pick[k] = pick[k - 1] + 1;
  }
  return g;
}

PolytopeSpec random_instance(Rng& rng, maxent::DomainKind domain, const InstanceShape& shape) {
  for (;;) {
    const auto d = static_cast<std::size_t>(rng.integer(1, static_cast<std::int64_t>(shape.max_d)));
    const auto n = static_cast<std::size_t>(
        rng.integer(static_cast<std::int64_t>(d) + 2, static_cast<std::int64_t>(shape.max_n)));
    PolytopeSpec spec;
    spec.domain = domain;
    spec.A = Matrix(d, n);
    for (std::size_t j = 0; j < n; ++j) {
      bool nonzero = false;
      while (!nonzero) {
        for (std::size_t i = 0; i < d; ++i) {
          spec.A(i, j) = static_cast<double>(rng.integer(0, shape.max_entry));
          nonzero = nonzero || spec.A(i, j) != 0.0;
        }
      }
    }
    try {
      maxent::Cholesky chol(maxent::gram(spec.A));
    } catch (const maxent::Error&) {
      continue;
    }
    Vector x0(n);
    for (auto& v : x0) {
      v = static_cast<double>(domain == maxent::DomainKind::Binary ? rng.integer(0, 1)
                                                                   : rng.integer(1, 2));
    }
    spec.b = maxent::multiply(spec.A, x0);
    try {
      const auto sol = maxent::solve_max_entropy(spec, maxent::default_model(domain));
      // b = A x0 for a vertex x0 may sit on a face of A[0,1]^n
      if (domain == maxent::DomainKind::Binary &&
          std::any_of(sol.z.begin(), sol.z.end(), [](double z) { return z < 1e-6 || z > 1.0 - 1e-6; })) {
        continue;
      }
    } catch (const maxent::Error&) {
      continue;
    }
    return spec;
  }
}

Vector bisect_single_row(const std::vector<double>& a, double b, maxent::EntropyModel model) {
  auto primal = [&](double t) {
    Vector z(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
      const double c = a[j] * t;
      switch (model) {
        case maxent::EntropyModel::Exponential: z[j] = 1.0 / c; break;
        case maxent::EntropyModel::Geometric: z[j] = 1.0 / std::expm1(c); break;
        case maxent::EntropyModel::Bernoulli: z[j] = 1.0 / (1.0 + std::exp(c)); break;
      }
    }
    return z;
  };
  auto excess = [&](double t) {
    const Vector z = primal(t);
    double s = -b;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * z[j];
    return s;  // decreasing in t
  };
  double lo = model == maxent::EntropyModel::Bernoulli ? -50.0 : 1e-12;
  double hi = 50.0;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0 ? lo : hi) = mid;
  }
  return primal(0.5 * (lo + hi));
}

double log_product_mass(const maxent::MaxEntSolution& sol, const IntVector& x) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double z = sol.z[j];
    const auto xj = static_cast<double>(x[j]);
    if (sol.model == maxent::EntropyModel::Geometric) {
      s += -std::log1p(z) + xj * (std::log(z) - std::log1p(z));
    } else {
      s += xj * std::log(z) + (1.0 - xj) * std::log1p(-z);
    }
  }
  return s;
}

Matrix outer_product_sum(const Matrix& a, const Vector& v) {
  Matrix out(a.rows(), a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t p = 0; p < a.rows(); ++p)
      for (std::size_t q = 0; q < a.rows(); ++q) out(p, q) += v[j] * a(p, j) * a(q, j);
  return out;
}

}  // namespace testsupport
