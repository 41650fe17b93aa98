#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "maxent/lattice.hpp"
#include "maxent/linalg.hpp"

namespace maxent {

// What is being measured on {x : Ax = b}:
//   ContinuousNonneg - (n-d)-dimensional volume of x >= 0,
//   IntegerNonneg    - number of non-negative integer points,
//   Binary           - number of 0-1 points.
enum class DomainKind { ContinuousNonneg, IntegerNonneg, Binary };

std::string_view to_string(DomainKind kind);
// Problem-file spelling: "volume", "integer", "binary".
std::string_view domain_keyword(DomainKind kind);
std::optional<DomainKind> parse_domain_keyword(std::string_view word);

inline bool is_discrete(DomainKind kind) { return kind != DomainKind::ContinuousNonneg; }

// The polyhedron Ax = b intersected with the orthant (or the unit cube for
// Binary), with an optional linear tilt l(x) = <tilt, x>.
struct PolytopeSpec {
  std::string name;
  Matrix A;
  Vector b;
  DomainKind domain = DomainKind::ContinuousNonneg;
  std::optional<Vector> tilt;

  std::size_t num_constraints() const noexcept { return A.rows(); }
  std::size_t num_variables() const noexcept { return A.cols(); }
  double tilt_at(std::size_t j) const { return tilt ? (*tilt)[j] : 0.0; }
};

// Throws DimensionMismatch for inconsistent shapes or d >= n, and
// NonIntegerData when a discrete domain carries non-integer A or b.
void check_shape(const PolytopeSpec& spec);

struct InteriorUnknown {};
struct InteriorPoint {
  Vector point;
};
// `certificate` is a vector u for which <A^T u, x> = <u, b> cannot hold at
// any point strictly inside the orthant or cube.
struct EmptyInterior {
  Vector certificate;
};
using InteriorHint = std::variant<InteriorUnknown, InteriorPoint, EmptyInterior>;

struct ValidationReport {
  bool rank_ok = false;
  // Present for discrete domains with full row rank.
  std::optional<BigInt> lattice_index;
  InteriorHint interior_hint;
};

ValidationReport validate_spec(const PolytopeSpec& spec);

// True when `u` proves that no point of Ax = b lies strictly inside the
// domain's orthant or cube.
bool certifies_empty_interior(const PolytopeSpec& spec, std::span<const double> u);

}  // namespace maxent
