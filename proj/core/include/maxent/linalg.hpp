#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace maxent {

using Vector = std::vector<double>;

// Dense row-major real matrix. Generators store small exact integers here;
// doubles represent them losslessly.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  Vector column(std::size_t j) const;

  std::span<const double> data() const noexcept { return data_; }

  Matrix transpose() const;
  double frobenius_norm() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Vector multiply(const Matrix& a, std::span<const double> x);
// a^T x
Vector multiply_transposed(const Matrix& a, std::span<const double> x);
Matrix multiply(const Matrix& a, const Matrix& b);

// M M^T
Matrix gram(const Matrix& m);
// A diag(w) A^T
Matrix weighted_gram(const Matrix& a, std::span<const double> w);

double norm_inf(std::span<const double> x);
double norm_1(std::span<const double> x);
double norm_2(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);

// Cholesky factorization S = L L^T of a symmetric positive-definite matrix.
// A pivot that is not larger than 1e-12 times its own diagonal entry is
// treated as non-positive and reported as NotPositiveDefinite.
class Cholesky {
 public:
  explicit Cholesky(const Matrix& s);

  std::size_t dim() const noexcept { return lower_.rows(); }
  const Matrix& lower() const noexcept { return lower_; }

  double logdet() const;
  Vector solve(std::span<const double> rhs) const;

 private:
  Matrix lower_;
};

// ln det(M M^T) through a Cholesky factorization of the Gram matrix.
double logdet_gram(const Matrix& m);

struct SymmetricSpectrum {
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
};

// All eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi sweeps.
Vector sym_eigenvalues(const Matrix& s);
SymmetricSpectrum sym_eig_range(const Matrix& s);

// Least-squares solution of A^T y = c for a full-row-rank A, through the
// normal equations (A A^T) y = A c.
Vector least_squares_transposed(const Matrix& a, std::span<const double> c);

}  // namespace maxent
