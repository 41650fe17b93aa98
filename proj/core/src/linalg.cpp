#include "maxent/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "maxent/error.hpp"

namespace maxent {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) {
      throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
    }
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

Vector Matrix::column(std::size_t j) const {
  Vector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

Vector multiply(const Matrix& a, std::span<const double> x) {
  if (x.size() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector product");
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

Vector multiply_transposed(const Matrix& a, std::span<const double> x) {
  if (x.size() != a.rows()) throw Error(ErrorCode::DimensionMismatch, "transposed product");
  Vector y(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) y[j] += r[j] * x[i];
  }
  return y;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix gram(const Matrix& m) {
  const Vector ones(m.cols(), 1.0);
  return weighted_gram(m, ones);
}

Matrix weighted_gram(const Matrix& a, std::span<const double> w) {
  if (w.size() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "weighted Gram");
  const std::size_t d = a.rows();
  Matrix g(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto ri = a.row(i);
    for (std::size_t k = i; k < d; ++k) {
      const auto rk = a.row(k);
      double s = 0.0;
      for (std::size_t j = 0; j < a.cols(); ++j) s += ri[j] * w[j] * rk[j];
      g(i, k) = s;
      g(k, i) = s;
    }
  }
  return g;
}

double norm_inf(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double norm_1(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += std::abs(v);
  return s;
}

double norm_2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

Cholesky::Cholesky(const Matrix& s) : lower_(s.rows(), s.cols()) {
  if (s.rows() != s.cols() || s.empty()) {
    throw Error(ErrorCode::DimensionMismatch, "Cholesky needs a non-empty square matrix");
  }
  const std::size_t n = s.rows();
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = s(j, j);
    for (std::size_t k = 0; k < j; ++k) pivot -= lower_(j, k) * lower_(j, k);
    if (!(pivot > 1e-12 * std::abs(s(j, j)))) {
      std::ostringstream os;
      os << "pivot " << pivot << " at index " << j;
      throw Error(ErrorCode::NotPositiveDefinite, os.str());
    }
    const double ljj = std::sqrt(pivot);
    lower_(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = s(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= lower_(i, k) * lower_(j, k);
      lower_(i, j) = v / ljj;
    }
  }
}

double Cholesky::logdet() const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) s += std::log(lower_(i, i));
  return 2.0 * s;
}

Vector Cholesky::solve(std::span<const double> rhs) const {
  const std::size_t n = dim();
  if (rhs.size() != n) throw Error(ErrorCode::DimensionMismatch, "Cholesky solve");
  Vector y(rhs.begin(), rhs.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) y[i] -= lower_(i, k) * y[k];
    y[i] /= lower_(i, i);
  }
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t k = ii + 1; k < n; ++k) y[ii] -= lower_(k, ii) * y[k];
    y[ii] /= lower_(ii, ii);
  }
  return y;
}

double logdet_gram(const Matrix& m) {
  if (m.rows() > m.cols()) {
    throw Error(ErrorCode::NotPositiveDefinite, "more rows than columns, M M^T is singular");
  }
  return Cholesky(gram(m)).logdet();
}

Vector sym_eigenvalues(const Matrix& s) {
  if (s.rows() != s.cols() || s.empty()) {
    throw Error(ErrorCode::DimensionMismatch, "eigenvalues need a non-empty square matrix");
  }
  const std::size_t n = s.rows();
  const double fro = s.frobenius_norm();
  double asym = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) asym = std::max(asym, std::abs(s(i, j) - s(j, i)));
  if (asym > 1e-12 * fro) {
    std::ostringstream os;
    os << "max asymmetry " << asym;
    throw Error(ErrorCode::NotSymmetric, os.str());
  }

  Matrix a = s;
  const double threshold = 1e-12 * fro;
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * a(i, j) * a(i, j);
    if (std::sqrt(off) <= threshold) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
      }
    }
  }

  Vector eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

SymmetricSpectrum sym_eig_range(const Matrix& s) {
  const Vector eig = sym_eigenvalues(s);
  return {eig.front(), eig.back()};
}

Vector least_squares_transposed(const Matrix& a, std::span<const double> c) {
  return Cholesky(gram(a)).solve(multiply(a, c));
}

}  // namespace maxent
