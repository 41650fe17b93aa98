#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "maxent/linalg.hpp"

namespace maxent {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Dense row-major integer matrix with 64-bit entries.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> data;

  std::int64_t operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
};

bool is_integral(double v);
bool is_integral(std::span<const double> v);

// Throws NonIntegerData when an entry is not an exact integer.
IntMatrix to_integer_matrix(const Matrix& a);
std::vector<std::int64_t> to_integer_vector(std::span<const double> v);

// Index det(Lambda) of the image lattice Lambda = A(Z^n) in Z^d, computed as
// the product of the pivots of a column-style Hermite normal form over
// arbitrary-precision integers. Throws RankDeficient when A has fewer than d
// pivots, NonIntegerData for non-integer entries.
BigInt hnf_lattice_index(const Matrix& a);

// Exact determinant of a square integer matrix (fraction-free Bareiss
// elimination).
BigInt integer_determinant(std::vector<std::vector<BigInt>> m);

}  // namespace maxent
