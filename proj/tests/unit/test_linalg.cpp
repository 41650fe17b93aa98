#include <gtest/gtest.h>

#include <cmath>

#include "maxent/error.hpp"
#include "maxent/generators.hpp"
#include "maxent/lattice.hpp"
#include "maxent/linalg.hpp"
#include "test_support.hpp"

using namespace maxent;

TEST(LogdetGram, OnesRow) { EXPECT_NEAR(logdet_gram(Matrix{{1, 1}}), std::log(2.0), 1e-15); }

TEST(LogdetGram, Identity) { EXPECT_NEAR(logdet_gram(Matrix::identity(2)), 0.0, 1e-15); }

TEST(LogdetGram, MultiwayDeterminantIdentity) {
  for (auto [nu, k] : {std::pair{2, 3}, {3, 3}, {3, 4}}) {
    const std::vector<std::int64_t> dims(static_cast<std::size_t>(nu), k);
    std::int64_t total = 1;
    for (int i = 0; i < nu; ++i) total *= k;
    const auto spec = gen_multiway(dims, uniform_margins(dims, total));
    const double expected = (nu * nu - nu) * (k - 1) * std::log(static_cast<double>(k));
    EXPECT_NEAR(logdet_gram(spec.A), expected, 1e-10 * expected) << nu << "," << k;
  }
}

TEST(LogdetGram, RankDeficientThrows) {
  try {
    logdet_gram(Matrix{{1, 1}, {2, 2}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPositiveDefinite);
  }
}

TEST(LogdetGram, MoreRowsThanColumnsThrows) {
  EXPECT_THROW(logdet_gram(Matrix{{1}, {1}}), Error);
}

TEST(LogdetGram, AgreesWithCofactorExpansion) {
  testsupport::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = static_cast<std::size_t>(rng.integer(1, 5));
    const auto n = static_cast<std::size_t>(rng.integer(static_cast<std::int64_t>(d), 8));
    Matrix m(d, n);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.real(-2.0, 2.0);
    const double ref = testsupport::cofactor_determinant(gram(m));
    if (ref < 1e-6) continue;
    EXPECT_NEAR(std::exp(logdet_gram(m)) / ref, 1.0, 1e-8);
  }
}

TEST(SymEigRange, Diagonal) {
  const auto s = sym_eig_range(Matrix{{1, 0}, {0, 5}});
  EXPECT_NEAR(s.min_eigenvalue, 1.0, 1e-12);
  EXPECT_NEAR(s.max_eigenvalue, 5.0, 1e-12);
}

TEST(SymEigRange, TwoByTwo) {
  const auto s = sym_eig_range(Matrix{{2, 1}, {1, 2}});
  EXPECT_NEAR(s.min_eigenvalue, 1.0, 1e-12);
  EXPECT_NEAR(s.max_eigenvalue, 3.0, 1e-12);
}

TEST(SymEigRange, TransportRowPsiForm) {
  const auto fam = gen_yfamily(TransportKind{3, 4});
  const auto s = sym_eig_range(psi_form(fam, 0, 12));
  EXPECT_NEAR(s.max_eigenvalue, 0.5, 1e-9);
}

TEST(SymEigRange, RejectsAsymmetric) {
  try {
    sym_eig_range(Matrix{{1, 2}, {0, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSymmetric);
  }
}

TEST(SymEigRange, RayleighQuotientsInsideRange) {
  testsupport::Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(2, 9));
    Matrix s(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) s(i, j) = s(j, i) = rng.real(-3.0, 3.0);
    const auto range = sym_eig_range(s);
    ASSERT_LE(range.min_eigenvalue, range.max_eigenvalue);
    for (int k = 0; k < 1000; ++k) {
      Vector x(n);
      for (auto& v : x) v = rng.real(-1.0, 1.0);
      const double q = dot(x, multiply(s, x)) / dot(x, x);
      EXPECT_GE(q, range.min_eigenvalue - 1e-8);
      EXPECT_LE(q, range.max_eigenvalue + 1e-8);
    }
  }
}

TEST(SymEigenvalues, TraceAndDeterminant) {
  const Matrix s{{4, 1, 0}, {1, 3, 1}, {0, 1, 2}};
  const Vector ev = sym_eigenvalues(s);
  EXPECT_NEAR(ev[0] + ev[1] + ev[2], 9.0, 1e-12);
  EXPECT_NEAR(ev[0] * ev[1] * ev[2], testsupport::cofactor_determinant(s), 1e-10);
}

TEST(Cholesky, SolveRoundTrip) {
  const Matrix s{{4, 2}, {2, 3}};
  const Vector x = Cholesky(s).solve(Vector{2, 1});
  const Vector back = multiply(s, x);
  EXPECT_NEAR(back[0], 2.0, 1e-14);
  EXPECT_NEAR(back[1], 1.0, 1e-14);
}

TEST(LeastSquares, ExactWhenConsistent) {
  const Matrix a{{1, 1, 0}, {0, 1, 1}};
  const Vector y = least_squares_transposed(a, multiply_transposed(a, Vector{2, -1}));
  EXPECT_NEAR(y[0], 2.0, 1e-12);
  EXPECT_NEAR(y[1], -1.0, 1e-12);
}

TEST(HnfLatticeIndex, Examples) {
  EXPECT_EQ(hnf_lattice_index(Matrix{{1, 1}}), 1);
  EXPECT_EQ(hnf_lattice_index(Matrix{{2, 2}}), 2);
  const auto spec = gen_transport({1, 1}, {1, 1});
  EXPECT_EQ(testsupport::minors_gcd(spec.A), 1);
  EXPECT_EQ(hnf_lattice_index(spec.A), testsupport::minors_gcd(spec.A));
}

TEST(HnfLatticeIndex, RankDeficient) {
  try {
    hnf_lattice_index(Matrix{{1, 2}, {2, 4}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RankDeficient);
  }
}

TEST(HnfLatticeIndex, MatchesMinorsGcdOnRandomMatrices) {
  testsupport::Rng rng(3);
  int checked = 0;
  while (checked < 100) {
    const auto d = static_cast<std::size_t>(rng.integer(1, 3));
    const auto n = static_cast<std::size_t>(rng.integer(static_cast<std::int64_t>(d), 6));
    Matrix a(d, n);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = static_cast<double>(rng.integer(-4, 4));
    const BigInt g = testsupport::minors_gcd(a);
    if (g == 0) {
      EXPECT_THROW(hnf_lattice_index(a), Error);
      continue;
    }
    EXPECT_EQ(hnf_lattice_index(a), g);
    ++checked;
  }
}

TEST(HnfLatticeIndex, InvariantUnderUnimodularColumnOperations) {
  testsupport::Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix a(2, 4);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 4; ++j) a(i, j) = static_cast<double>(rng.integer(-3, 3));
    if (testsupport::minors_gcd(a) == 0) continue;
    const BigInt before = hnf_lattice_index(a);
    Matrix b = a;
    for (int op = 0; op < 6; ++op) {
      const auto p = static_cast<std::size_t>(rng.integer(0, 3));
      auto q = static_cast<std::size_t>(rng.integer(0, 3));
      if (p == q) q = (q + 1) % 4;
      const auto k = static_cast<double>(rng.integer(-2, 2));
      for (std::size_t i = 0; i < 2; ++i) b(i, p) += k * b(i, q);
      if (op % 2 == 0)
        for (std::size_t i = 0; i < 2; ++i) std::swap(b(i, p), b(i, q));
    }
    EXPECT_EQ(hnf_lattice_index(b), before);
  }
}

TEST(IntegerDeterminant, MatchesCofactor) {
  testsupport::Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(1, 5));
    std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n));
    std::vector<std::vector<BigInt>> big(n, std::vector<BigInt>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) big[i][j] = m[i][j] = rng.integer(-5, 5);
    EXPECT_EQ(integer_determinant(big), testsupport::cofactor_determinant(m));
  }
}

TEST(ToIntegerMatrix, RejectsFractions) {
  try {
    to_integer_matrix(Matrix{{1.5}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonIntegerData);
  }
}
