#include "maxent/model.hpp"

#include <cmath>

#include "maxent/error.hpp"
#include "maxent/solver.hpp"

namespace maxent {

std::string_view to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::ContinuousNonneg: return "ContinuousNonneg";
    case DomainKind::IntegerNonneg: return "IntegerNonneg";
    case DomainKind::Binary: return "Binary";
  }
  return "Unknown";
}

std::string_view domain_keyword(DomainKind kind) {
  switch (kind) {
    case DomainKind::ContinuousNonneg: return "volume";
    case DomainKind::IntegerNonneg: return "integer";
    case DomainKind::Binary: return "binary";
  }
  return "volume";
}

std::optional<DomainKind> parse_domain_keyword(std::string_view word) {
  if (word == "volume") return DomainKind::ContinuousNonneg;
  if (word == "integer") return DomainKind::IntegerNonneg;
  if (word == "binary") return DomainKind::Binary;
  return std::nullopt;
}

void check_shape(const PolytopeSpec& spec) {
  const std::size_t d = spec.num_constraints();
  const std::size_t n = spec.num_variables();
  if (d == 0 || n == 0) throw Error(ErrorCode::DimensionMismatch, "empty constraint matrix");
  if (spec.b.size() != d) {
    throw Error(ErrorCode::DimensionMismatch, "b has " + std::to_string(spec.b.size()) +
                                                  " entries, A has " + std::to_string(d) + " rows");
  }
  if (d >= n) {
    throw Error(ErrorCode::DimensionMismatch,
                "need fewer constraints than variables (d=" + std::to_string(d) +
                    ", n=" + std::to_string(n) + ")");
  }
  if (spec.tilt && spec.tilt->size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "tilt length differs from the number of columns");
  }
  for (double v : spec.A.data())
    if (!std::isfinite(v)) throw Error(ErrorCode::DimensionMismatch, "non-finite entry in A");
  for (double v : spec.b)
    if (!std::isfinite(v)) throw Error(ErrorCode::DimensionMismatch, "non-finite entry in b");
  if (is_discrete(spec.domain)) {
    if (!is_integral(spec.A.data()) || !is_integral(spec.b)) {
      throw Error(ErrorCode::NonIntegerData, "A and b must be integer for counting domains");
    }
  }
}

bool certifies_empty_interior(const PolytopeSpec& spec, std::span<const double> u) {
  if (u.size() != spec.num_constraints()) return false;
  Vector w = multiply_transposed(spec.A, u);
  const double scale = norm_inf(w);
  const double target = dot(u, spec.b);
  if (scale == 0.0) return target != 0.0;
  for (double& x : w)
    if (std::abs(x) <= 1e-9 * scale) x = 0.0;

  // <w, x> over the open orthant or open cube is an open interval (lo, hi).
  double lo = 0.0, hi = 0.0;
  bool lo_finite = true, hi_finite = true;
  for (double x : w) {
    if (spec.domain == DomainKind::Binary) {
      if (x < 0.0) lo += x; else hi += x;
    } else {
      if (x < 0.0) lo_finite = false;
      if (x > 0.0) hi_finite = false;
    }
  }
  if (spec.domain != DomainKind::Binary) {
    lo = 0.0;
    hi = 0.0;
  }
  return (lo_finite && target <= lo) || (hi_finite && target >= hi);
}

ValidationReport validate_spec(const PolytopeSpec& spec) {
  check_shape(spec);
  ValidationReport report;
  try {
    Cholesky factor(gram(spec.A));
    report.rank_ok = true;
  } catch (const Error&) {
    report.rank_ok = false;
  }
  if (report.rank_ok && is_discrete(spec.domain)) {
    report.lattice_index = hnf_lattice_index(spec.A);
  }

  const std::size_t d = spec.num_constraints();
  for (std::size_t i = 0; i < d; ++i) {
    for (double sign : {1.0, -1.0}) {
      Vector u(d, 0.0);
      u[i] = sign;
      if (certifies_empty_interior(spec, u)) {
        report.interior_hint = EmptyInterior{std::move(u)};
        return report;
      }
    }
  }

  if (!report.rank_ok) {
    report.interior_hint = InteriorUnknown{};
    return report;
  }
  try {
    MaxEntSolution probe = solve_max_entropy(spec, default_model(spec.domain));
    report.interior_hint = InteriorPoint{std::move(probe.z)};
  } catch (const DualUnboundedError& e) {
    if (!e.direction().empty() && certifies_empty_interior(spec, e.direction())) {
      report.interior_hint = EmptyInterior{e.direction()};
    } else {
      report.interior_hint = InteriorUnknown{};
    }
  } catch (const Error&) {
    report.interior_hint = InteriorUnknown{};
  }
  return report;
}

}  // namespace maxent
