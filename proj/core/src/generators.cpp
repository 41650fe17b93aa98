#include "maxent/generators.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "maxent/error.hpp"

namespace maxent {

namespace {

std::vector<std::int64_t> dims_of(const FamilyKind& kind) {
  if (const auto* t = std::get_if<TransportKind>(&kind)) return {t->m, t->n};
  return std::get<MultiwayKind>(kind).dims;
}

void check_dims(const std::vector<std::int64_t>& dims) {
  if (dims.size() < 2) throw Error(ErrorCode::DimensionMismatch, "need at least two axes");
  for (auto k : dims) {
    if (k < 2) throw Error(ErrorCode::DimensionMismatch, "every axis needs length >= 2");
  }
}

std::size_t cell_count(const std::vector<std::int64_t>& dims) {
  std::size_t n = 1;
  for (auto k : dims) {
    n *= static_cast<std::size_t>(k);
    if (n > (std::size_t{1} << 24)) {
      throw Error(ErrorCode::DimensionMismatch, "array has too many cells");
    }
  }
  return n;
}

// Row-major strides, last axis fastest.
std::vector<std::size_t> strides_of(const std::vector<std::int64_t>& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t i = dims.size() - 1; i-- > 0;) s[i] = s[i + 1] * static_cast<std::size_t>(dims[i + 1]);
  return s;
}

// 0/1 matrix of sectional sums, independent of the margins.
Matrix multiway_matrix(const std::vector<std::int64_t>& dims) {
  const std::size_t n = cell_count(dims);
  std::size_t d = 1;
  for (auto k : dims) d += static_cast<std::size_t>(k - 1);
  Matrix a(d, n);
  const auto strides = strides_of(dims);
  std::size_t row = 0;
  for (std::size_t axis = 0; axis < dims.size(); ++axis) {
    for (std::int64_t section = 0; section + 1 < dims[axis]; ++section, ++row) {
      for (std::size_t cell = 0; cell < n; ++cell) {
        const auto coord = static_cast<std::int64_t>(cell / strides[axis]) % dims[axis];
        if (coord == section) a(row, cell) = 1.0;
      }
    }
  }
  for (std::size_t cell = 0; cell < n; ++cell) a(row, cell) = 1.0;
  return a;
}

std::string join_dims(const std::vector<std::int64_t>& dims) {
  std::ostringstream os;
  for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? "x" : "") << dims[i];
  return os.str();
}

}  // namespace

PolytopeSpec gen_multiway(const std::vector<std::int64_t>& dims,
                          const std::vector<IntVector>& margins, DomainKind domain) {
  check_dims(dims);
  if (margins.size() != dims.size()) {
    throw Error(ErrorCode::DimensionMismatch, "need one margin list per axis");
  }
  std::int64_t total = -1;
  for (std::size_t axis = 0; axis < dims.size(); ++axis) {
    if (margins[axis].size() != static_cast<std::size_t>(dims[axis])) {
      throw Error(ErrorCode::DimensionMismatch,
                  "axis " + std::to_string(axis + 1) + " needs " + std::to_string(dims[axis]) +
                      " margins");
    }
    std::int64_t sum = 0;
    for (auto v : margins[axis]) {
      if (v <= 0) throw Error(ErrorCode::MarginMismatch, "margins must be positive");
      sum += v;
    }
    if (total >= 0 && sum != total) {
      throw Error(ErrorCode::MarginMismatch, "margin totals differ between axes");
    }
    total = sum;
  }

  PolytopeSpec spec;
  spec.name = family_name(MultiwayKind{dims});
  spec.A = multiway_matrix(dims);
  spec.domain = domain;
  for (std::size_t axis = 0; axis < dims.size(); ++axis) {
    for (std::size_t section = 0; section + 1 < margins[axis].size(); ++section) {
      spec.b.push_back(static_cast<double>(margins[axis][section]));
    }
  }
  spec.b.push_back(static_cast<double>(total));
  return spec;
}

PolytopeSpec gen_transport(const IntVector& row_sums, const IntVector& col_sums,
                           DomainKind domain) {
  if (row_sums.size() < 2 || col_sums.size() < 2) {
    throw Error(ErrorCode::DimensionMismatch, "transportation tables need m, n >= 2");
  }
  const auto m = static_cast<std::int64_t>(row_sums.size());
  const auto n = static_cast<std::int64_t>(col_sums.size());
  PolytopeSpec spec = gen_multiway({m, n}, {row_sums, col_sums}, domain);
  spec.name = family_name(TransportKind{m, n});
  return spec;
}

std::vector<IntVector> uniform_margins(const std::vector<std::int64_t>& dims, std::int64_t total) {
  check_dims(dims);
  if (total <= 0) throw Error(ErrorCode::MarginMismatch, "total must be positive");
  std::vector<IntVector> out;
  for (auto k : dims) {
    if (total % k != 0) {
      throw Error(ErrorCode::MarginMismatch,
                  std::to_string(k) + " does not divide the total " + std::to_string(total));
    }
    out.emplace_back(static_cast<std::size_t>(k), total / k);
  }
  return out;
}

PolytopeSpec gen_polystochastic(std::int64_t k, std::int64_t nu, DomainKind domain) {
  if (nu < 2 || k < 2) throw Error(ErrorCode::DimensionMismatch, "need k >= 2 and nu >= 2");
  std::int64_t total = 1;
  for (std::int64_t i = 0; i < nu; ++i) total *= k;
  const std::vector<std::int64_t> dims(static_cast<std::size_t>(nu), k);
  return gen_multiway(dims, uniform_margins(dims, total), domain);
}

YFamily gen_yfamily(const FamilyKind& kind) {
  const auto dims = dims_of(kind);
  check_dims(dims);
  const std::size_t nu = dims.size();
  const std::size_t n = cell_count(dims);
  const auto strides = strides_of(dims);
  auto offset = [&](const std::vector<std::int64_t>& idx) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < nu; ++i) c += static_cast<std::size_t>(idx[i]) * strides[i];
    return c;
  };
  // Odometer over idx[i] in [0, limit[i]) skipping axis `skip`.
  auto advance = [&](std::vector<std::int64_t>& idx, const std::vector<std::int64_t>& limit,
                     std::size_t skip) {
    for (std::size_t i = nu; i-- > 0;) {
      if (i == skip) continue;
      if (++idx[i] < limit[i]) return true;
      idx[i] = 0;
    }
    return false;
  };

  YFamily fam;
  std::size_t row = 0;
  for (std::size_t axis = 0; axis < nu; ++axis) {
    for (std::int64_t section = 0; section + 1 < dims[axis]; ++section, ++row) {
      std::vector<IntVector> set;
      std::vector<std::int64_t> idx(nu, 0);
      do {
        IntVector y(n, 0);
        idx[axis] = section;
        y[offset(idx)] = 1;
        idx[axis] = dims[axis] - 1;
        y[offset(idx)] = -1;
        idx[axis] = 0;
        set.push_back(std::move(y));
      } while (advance(idx, dims, axis));
      fam.sets.push_back(std::move(set));
      fam.target_index.push_back(row);
    }
  }

  std::vector<std::int64_t> inner(dims);
  for (auto& k : inner) k -= 1;
  std::vector<IntVector> y0;
  std::vector<std::int64_t> idx(nu, 0);
  do {
    IntVector y(n, 0);
    y[offset(idx)] = 1 - static_cast<std::int64_t>(nu);
    for (std::size_t i = 0; i < nu; ++i) {
      auto moved = idx;
      moved[i] = dims[i] - 1;
      y[offset(moved)] += 1;
    }
    y0.push_back(std::move(y));
  } while (advance(idx, inner, nu));
  fam.sets.push_back(std::move(y0));
  fam.target_index.push_back(row);

  const IntMatrix a = to_integer_matrix(multiway_matrix(dims));
  for (std::size_t s = 0; s < fam.sets.size(); ++s) {
    for (const auto& y : fam.sets[s]) {
      for (std::size_t i = 0; i < a.rows; ++i) {
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < n; ++j) acc += a(i, j) * y[j];
        if (acc != (i == fam.target_index[s] ? 1 : 0)) {
          throw std::logic_error("Y-family member violates A y = e_i");
        }
      }
    }
  }
  return fam;
}

Matrix psi_form(const YFamily& family, std::size_t set, std::size_t num_variables) {
  const auto& ys = family.sets.at(set);
  Matrix out(num_variables, num_variables);
  const double w = 1.0 / static_cast<double>(ys.size());
  for (const auto& y : ys) {
    for (std::size_t p = 0; p < num_variables; ++p) {
      if (y[p] == 0) continue;
      for (std::size_t q = 0; q < num_variables; ++q) {
        out(p, q) += w * static_cast<double>(y[p] * y[q]);
      }
    }
  }
  return out;
}

double psi_eigen_max(const YFamily& family, std::size_t set) {
  const auto& ys = family.sets.at(set);
  const std::size_t n = ys.front().size();
  if (ys.size() >= n) return sym_eig_range(psi_form(family, set, n)).max_eigenvalue;
  // Same non-zero spectrum as the n x n form, smaller matrix.
  const std::size_t k = ys.size();
  Matrix g(k, k);
  const double w = 1.0 / static_cast<double>(k);
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t q = 0; q < k; ++q) {
      std::int64_t acc = 0;
      for (std::size_t j = 0; j < n; ++j) acc += ys[p][j] * ys[q][j];
      g(p, q) = w * static_cast<double>(acc);
    }
  return sym_eig_range(g).max_eigenvalue;
}

std::string family_name(const FamilyKind& kind) {
  if (const auto* t = std::get_if<TransportKind>(&kind)) {
    return "transport:" + join_dims({t->m, t->n});
  }
  return "multiway:" + join_dims(std::get<MultiwayKind>(kind).dims);
}

std::optional<FamilyKind> parse_family_name(std::string_view name) {
  const auto colon = name.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  const auto prefix = name.substr(0, colon);
  std::string_view rest = name.substr(colon + 1);
  std::vector<std::int64_t> dims;
  while (!rest.empty()) {
    const auto x = rest.find('x');
    const auto token = rest.substr(0, x);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size() || v < 2) return std::nullopt;
    dims.push_back(v);
    if (x == std::string_view::npos) break;
    rest = rest.substr(x + 1);
    if (rest.empty()) return std::nullopt;
  }
  if (dims.size() < 2) return std::nullopt;
  if (prefix == "transport") {
    if (dims.size() != 2) return std::nullopt;
    return TransportKind{dims[0], dims[1]};
  }
  if (prefix == "multiway") return MultiwayKind{dims};
  return std::nullopt;
}

std::optional<FamilyKind> detect_family(const PolytopeSpec& spec) {
  const auto kind = parse_family_name(spec.name);
  if (!kind) return std::nullopt;
  const auto dims = dims_of(*kind);
  std::size_t n = 1;
  for (auto k : dims) {
    n *= static_cast<std::size_t>(k);
    if (n > spec.num_variables()) return std::nullopt;
  }
  if (n != spec.num_variables()) return std::nullopt;
  if (multiway_matrix(dims) != spec.A) return std::nullopt;
  return kind;
}

}  // namespace maxent
