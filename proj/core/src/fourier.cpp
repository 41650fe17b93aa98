#include <cmath>
#include <complex>
#include <map>
#include <numbers>

#include "maxent/error.hpp"
#include "maxent/oracles.hpp"

namespace maxent {

namespace {

using Complex = std::complex<double>;

std::int64_t mod(std::int64_t v, std::int64_t n) {
  const std::int64_t r = v % n;
  return r < 0 ? r + n : r;
}

}  // namespace

double char_integral_count(const PolytopeSpec& spec, const MaxEntSolution& sol,
                           std::size_t nodes_per_axis) {
  check_shape(spec);
  const std::size_t d = spec.num_constraints();
  const std::size_t n = spec.num_variables();
  if (d > 2) {
    throw Error(ErrorCode::DimensionTooLarge,
                "Fourier quadrature supports d <= 2, got d = " + std::to_string(d));
  }
  if (!is_discrete(spec.domain) || sol.model != default_model(spec.domain)) {
    throw Error(ErrorCode::DomainViolation,
                "Fourier counting needs a counting domain and its matching model");
  }
  if (nodes_per_axis < 2 || nodes_per_axis % 2 != 0) {
    throw Error(ErrorCode::DimensionMismatch, "nodes_per_axis must be even and positive");
  }
  const IntMatrix a = to_integer_matrix(spec.A);
  const std::vector<std::int64_t> b = to_integer_vector(spec.b);
  const auto big_n = static_cast<std::int64_t>(nodes_per_axis);
  const std::int64_t half = big_n / 2;

  // Node k of an axis sits at t = 2 pi (k - N/2) / N, so an integer row
  // combination <a, t> lands on the grid angle 2 pi r / N with
  // r = <a, k> - (N/2) sum a  (mod N).
  auto table_for = [&](auto&& factor) {
    std::vector<Complex> t(nodes_per_axis);
    for (std::int64_t r = 0; r < big_n; ++r) {
      t[static_cast<std::size_t>(r)] =
          factor(2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(big_n));
    }
    return t;
  };

  // Equal columns share one table: the product of their factors.
  std::map<std::vector<std::int64_t>, std::vector<Complex>> tables;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::int64_t> key(d);
    for (std::size_t i = 0; i < d; ++i) key[i] = a(i, j);
    const double z = sol.z[j];
    std::vector<Complex> t;
    if (sol.model == EntropyModel::Geometric) {
      const double p = 1.0 / (1.0 + z);
      const double q = z / (1.0 + z);
      t = table_for([&](double s) { return p / (1.0 - q * std::polar(1.0, s)); });
    } else {
      t = table_for([&](double s) { return (1.0 - z) + z * std::polar(1.0, s); });
    }
    auto [it, fresh] = tables.try_emplace(key, std::move(t));
    if (!fresh) {
      for (std::size_t r = 0; r < nodes_per_axis; ++r) it->second[r] *= t[r];
    }
  }
  // The phase e^{-i <t, b>} is one more "column".
  {
    std::vector<std::int64_t> key(d);
    for (std::size_t i = 0; i < d; ++i) key[i] = -b[i];
    auto t = table_for([](double s) { return std::polar(1.0, s); });
    auto [it, fresh] = tables.try_emplace(key, std::move(t));
    if (!fresh) {
      for (std::size_t r = 0; r < nodes_per_axis; ++r) it->second[r] *= t[r];
    }
  }

  struct Column {
    std::int64_t base;  // index at k = 0
    std::int64_t step1;
    std::int64_t step2;
    const std::vector<Complex>* table;
  };
  std::vector<Column> cols;
  for (const auto& [key, table] : tables) {
    std::int64_t sum = 0;
    for (auto v : key) sum += v;
    Column c;
    c.base = mod(-half * sum, big_n);
    c.step1 = mod(key[0], big_n);
    c.step2 = d == 2 ? mod(key[1], big_n) : 0;
    c.table = &table;
    cols.push_back(c);
  }

  Complex total = 0.0;
  std::vector<std::int64_t> idx(cols.size());
  const std::int64_t outer = big_n;
  const std::int64_t inner = d == 2 ? big_n : 1;
  for (std::int64_t k1 = 0; k1 < outer; ++k1) {
    for (std::size_t c = 0; c < cols.size(); ++c) idx[c] = mod(cols[c].base + cols[c].step1 * k1, big_n);
    Complex row = 0.0;
    for (std::int64_t k2 = 0; k2 < inner; ++k2) {
      Complex v = 1.0;
      for (std::size_t c = 0; c < cols.size(); ++c) {
        v *= (*cols[c].table)[static_cast<std::size_t>(idx[c])];
        idx[c] += cols[c].step2;
        if (idx[c] >= big_n) idx[c] -= big_n;
      }
      row += v;
    }
    total += row;
  }
  double scale = static_cast<double>(big_n);
  if (d == 2) scale *= static_cast<double>(big_n);
  const Complex mu = total / scale;
  if (std::abs(mu.imag()) > 1e-8) {
    throw Error(ErrorCode::NotConverged, "quadrature self-check failed: imaginary part " +
                                             std::to_string(mu.imag()));
  }
  return std::exp(sol.entropy) * mu.real();
}

}  // namespace maxent
