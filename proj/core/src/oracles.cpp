#include "maxent/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "maxent/error.hpp"

namespace maxent {

namespace {

// Residual vectors r with lo_i <= r_i <= hi_i, packed into one mixed-radix key.
struct ResidualCodec {
  std::vector<std::int64_t> lo;
  std::vector<std::uint64_t> radix;

  std::uint64_t encode(const std::vector<std::int64_t>& r) const {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      key = key * radix[i] + static_cast<std::uint64_t>(r[i] - lo[i]);
    }
    return key;
  }

  void decode(std::uint64_t key, std::vector<std::int64_t>& r) const {
    for (std::size_t i = r.size(); i-- > 0;) {
      r[i] = static_cast<std::int64_t>(key % radix[i]) + lo[i];
      key /= radix[i];
    }
  }
};

}  // namespace

ExactCount exact_count(const PolytopeSpec& spec, const ExactCountOptions& options) {
  if (!is_discrete(spec.domain)) {
    throw Error(ErrorCode::DomainViolation, "exact_count needs an integer or binary domain");
  }
  check_shape(spec);
  const IntMatrix a = to_integer_matrix(spec.A);
  const std::vector<std::int64_t> b = to_integer_vector(spec.b);
  const std::size_t d = a.rows;
  const std::size_t n = a.cols;
  const bool binary = spec.domain == DomainKind::Binary;

  if (!binary) {
    for (std::size_t j = 0; j < n; ++j) {
      bool nonzero = false;
      for (std::size_t i = 0; i < d; ++i) {
        if (a(i, j) < 0) {
          throw Error(ErrorCode::UnsupportedMatrix,
                      "integer counting needs a non-negative constraint matrix");
        }
        nonzero = nonzero || a(i, j) != 0;
      }
      if (!nonzero) {
        throw Error(ErrorCode::UnsupportedMatrix,
                    "zero column " + std::to_string(j) + ": infinitely many integer points");
      }
    }
    if (std::any_of(b.begin(), b.end(), [](std::int64_t v) { return v < 0; })) return {0};
  }

  // suffix_lo[j][i], suffix_hi[j][i]: range of sum_{k >= j} a_ik x_k.
  std::vector<std::vector<std::int64_t>> suffix_lo(n + 1, std::vector<std::int64_t>(d, 0));
  std::vector<std::vector<std::int64_t>> suffix_hi(n + 1, std::vector<std::int64_t>(d, 0));
  std::vector<std::vector<char>> suffix_positive(n + 1, std::vector<char>(d, 0));
  for (std::size_t j = n; j-- > 0;) {
    for (std::size_t i = 0; i < d; ++i) {
      suffix_lo[j][i] = suffix_lo[j + 1][i] + std::min<std::int64_t>(0, a(i, j));
      suffix_hi[j][i] = suffix_hi[j + 1][i] + std::max<std::int64_t>(0, a(i, j));
      suffix_positive[j][i] = suffix_positive[j + 1][i] || a(i, j) > 0;
    }
  }

  ResidualCodec codec;
  codec.lo.resize(d);
  codec.radix.resize(d);
  double estimate = 1.0;
  for (std::size_t i = 0; i < d; ++i) {
    std::int64_t lo = 0, hi = b[i];
    if (binary) {
      lo = std::max<std::int64_t>(b[i] - suffix_hi[0][i], suffix_lo[0][i]);
      hi = std::min<std::int64_t>(b[i] - suffix_lo[0][i], suffix_hi[0][i]);
      if (lo > hi) return {0};
    }
    codec.lo[i] = lo;
    codec.radix[i] = static_cast<std::uint64_t>(hi - lo + 1);
    estimate *= static_cast<double>(hi - lo + 1);
  }
  if (binary) estimate = std::min(estimate, std::ldexp(1.0, static_cast<int>(std::min<std::size_t>(n, 1000))));
  if (estimate > options.max_states) {
    std::ostringstream os;
    os << "estimated " << estimate << " residual states exceed the guard of "
       << options.max_states;
    throw Error(ErrorCode::StateSpaceTooLarge, os.str());
  }

  auto alive = [&](const std::vector<std::int64_t>& r, std::size_t next) {
    for (std::size_t i = 0; i < d; ++i) {
      if (binary) {
        if (r[i] < suffix_lo[next][i] || r[i] > suffix_hi[next][i]) return false;
      } else {
        if (r[i] < 0 || (r[i] > 0 && !suffix_positive[next][i])) return false;
      }
    }
    return true;
  };

  std::unordered_map<std::uint64_t, BigInt> states;
  if (!alive(b, 0)) return {0};
  states.emplace(codec.encode(b), BigInt(1));

  std::vector<std::int64_t> r(d), next_r(d);
  for (std::size_t j = 0; j < n; ++j) {
    std::unordered_map<std::uint64_t, BigInt> next;
    next.reserve(states.size() * 2);
    for (const auto& [key, mult] : states) {
      codec.decode(key, r);
      next_r = r;
      for (std::int64_t m = 0;; ++m) {
        if (m > 0) {
          for (std::size_t i = 0; i < d; ++i) next_r[i] -= a(i, j);
        }
        if (binary && m > 1) break;
        if (!binary) {
          bool negative = false;
          for (std::size_t i = 0; i < d; ++i) negative = negative || next_r[i] < 0;
          if (negative) break;
        }
        if (alive(next_r, j + 1)) next[codec.encode(next_r)] += mult;
      }
    }
    states = std::move(next);
    if (states.empty()) return {0};
  }

  std::vector<std::int64_t> zero(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (zero[i] < codec.lo[i] || zero[i] >= codec.lo[i] + static_cast<std::int64_t>(codec.radix[i])) {
      return {0};
    }
  }
  const auto it = states.find(codec.encode(zero));
  return {it == states.end() ? BigInt(0) : it->second};
}

EhrhartFit ehrhart_fit(const PolytopeSpec& spec, const ExactCountOptions& options) {
  check_shape(spec);
  if (!is_integral(spec.A.data()) || !is_integral(spec.b)) {
    throw Error(ErrorCode::NonIntegerData, "Ehrhart volume needs integer A and b");
  }
  if (hnf_lattice_index(spec.A) != 1) {
    throw Error(ErrorCode::UnsupportedMatrix, "Ehrhart volume needs A(Z^n) = Z^d");
  }
  const std::size_t d = spec.num_constraints();
  const std::size_t n = spec.num_variables();
  const std::size_t dim = n - d;

  EhrhartFit fit;
  PolytopeSpec dilated = spec;
  dilated.domain = DomainKind::IntegerNonneg;
  dilated.tilt.reset();
  for (std::size_t t = 1; t <= dim + 2; ++t) {
    for (std::size_t i = 0; i < d; ++i) dilated.b[i] = spec.b[i] * static_cast<double>(t);
    fit.counts.push_back(exact_count(dilated, options).value);
  }

  // Forward differences: after dim rounds the first entry is dim! * leading.
  std::vector<BigInt> diff = fit.counts;
  for (std::size_t round = 0; round < dim; ++round) {
    for (std::size_t k = 0; k + 1 < diff.size(); ++k) diff[k] = diff[k + 1] - diff[k];
    diff.pop_back();
  }
  // Two values remain; a polynomial of degree dim has constant dim-th differences.
  if (diff.size() != 2 || diff[0] != diff[1]) {
    throw Error(ErrorCode::QuasiPolynomial,
                "lattice counts are not a polynomial of degree n-d (non-integral vertices?)");
  }
  BigInt factorial = 1;
  for (std::size_t k = 2; k <= dim; ++k) factorial *= k;
  fit.leading_coefficient = BigRational(diff[0], factorial);

  std::vector<std::vector<BigInt>> aat(d, std::vector<BigInt>(d));
  const IntMatrix a = to_integer_matrix(spec.A);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      BigInt s = 0;
      for (std::size_t j = 0; j < n; ++j) s += BigInt(a(i, j)) * a(k, j);
      aat[i][k] = s;
    }
  fit.det_AAT = integer_determinant(aat);
  fit.volume = fit.leading_coefficient.convert_to<double>() *
               std::sqrt(fit.det_AAT.convert_to<double>());
  return fit;
}

double exact_volume_ehrhart(const PolytopeSpec& spec, const ExactCountOptions& options) {
  return ehrhart_fit(spec, options).volume;
}

std::vector<IntVector> cube_points(std::size_t n, std::int64_t max_coordinate) {
  std::vector<IntVector> pts;
  IntVector x(n, 0);
  for (;;) {
    pts.push_back(x);
    std::size_t j = n;
    while (j-- > 0) {
      if (x[j] < max_coordinate) {
        ++x[j];
        break;
      }
      x[j] = 0;
    }
    if (j == static_cast<std::size_t>(-1)) break;
  }
  return pts;
}

}  // namespace maxent
