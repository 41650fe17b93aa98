#include "maxent/lattice.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "maxent/error.hpp"

namespace maxent {

bool is_integral(double v) {
  return std::isfinite(v) && std::nearbyint(v) == v &&
         std::abs(v) <= static_cast<double>(std::numeric_limits<std::int64_t>::max() / 2);
}

bool is_integral(std::span<const double> v) {
  for (double x : v)
    if (!is_integral(x)) return false;
  return true;
}

IntMatrix to_integer_matrix(const Matrix& a) {
  if (!is_integral(a.data())) {
    throw Error(ErrorCode::NonIntegerData, "matrix has non-integer entries");
  }
  IntMatrix m{a.rows(), a.cols(), {}};
  m.data.reserve(a.data().size());
  for (double v : a.data()) m.data.push_back(static_cast<std::int64_t>(v));
  return m;
}

std::vector<std::int64_t> to_integer_vector(std::span<const double> v) {
  if (!is_integral(v)) throw Error(ErrorCode::NonIntegerData, "vector has non-integer entries");
  std::vector<std::int64_t> out;
  out.reserve(v.size());
  for (double x : v) out.push_back(static_cast<std::int64_t>(x));
  return out;
}

BigInt hnf_lattice_index(const Matrix& a) {
  const IntMatrix ia = to_integer_matrix(a);
  const std::size_t d = ia.rows;
  const std::size_t n = ia.cols;

  // Column-major working copy: cols[j][i] = A(i, j).
  std::vector<std::vector<BigInt>> cols(n, std::vector<BigInt>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < n; ++j) cols[j][i] = ia(i, j);

  BigInt index = 1;
  std::size_t pivot_col = 0;
  for (std::size_t r = 0; r < d; ++r) {
    if (pivot_col >= n) throw Error(ErrorCode::RankDeficient, "fewer columns than rows");
    // Euclid on row r across the remaining columns until one non-zero remains.
    for (;;) {
      std::size_t best = n;
      for (std::size_t j = pivot_col; j < n; ++j) {
        if (cols[j][r] == 0) continue;
        if (best == n || abs(cols[j][r]) < abs(cols[best][r])) best = j;
      }
      if (best == n) {
        throw Error(ErrorCode::RankDeficient, "no Hermite pivot in row " + std::to_string(r));
      }
      bool reduced_any = false;
      for (std::size_t j = pivot_col; j < n; ++j) {
        if (j == best || cols[j][r] == 0) continue;
        const BigInt q = cols[j][r] / cols[best][r];
        for (std::size_t i = r; i < d; ++i) cols[j][i] -= q * cols[best][i];
        reduced_any = true;
      }
      if (!reduced_any) {
        std::swap(cols[pivot_col], cols[best]);
        break;
      }
    }
    index *= abs(cols[pivot_col][r]);
    ++pivot_col;
  }
  return index;
}

BigInt integer_determinant(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  if (n == 0) return 1;

  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace maxent
