#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "maxent/model.hpp"

namespace maxent {

using IntVector = std::vector<std::int64_t>;

// Transportation polytope of m x n tables with row sums R and column sums C.
// Rows of A: the first m-1 row sums, the first n-1 column sums, the total.
// Cells are variables in row-major order. Throws MarginMismatch when
// sum R != sum C or a margin is not positive, DimensionMismatch when m or
// n < 2.
PolytopeSpec gen_transport(const IntVector& row_sums, const IntVector& col_sums,
                           DomainKind domain = DomainKind::IntegerNonneg);

// Multi-index transportation polytope of k_1 x ... x k_v arrays. margins[i]
// lists the k_i sectional sums along axis i. Rows of A: the first k_1 - 1
// sections of axis 1, then axis 2, ..., and the total sum last. Cells are
// variables in lexicographic order (last index fastest). For v = 2 the
// result equals gen_transport with the same margins, row for row.
PolytopeSpec gen_multiway(const std::vector<std::int64_t>& dims,
                          const std::vector<IntVector>& margins,
                          DomainKind domain = DomainKind::IntegerNonneg);

// Uniform margins with total N: each section along axis i sums to N / k_i.
// Throws MarginMismatch when some k_i does not divide N.
std::vector<IntVector> uniform_margins(const std::vector<std::int64_t>& dims, std::int64_t total);

// Polystochastic tensors dilated so that every sectional sum is k^(v-1).
PolytopeSpec gen_polystochastic(std::int64_t k, std::int64_t nu,
                                DomainKind domain = DomainKind::ContinuousNonneg);

// Finite integer sets Y_i with A y = e_i for every member y of Y_i.
struct YFamily {
  std::vector<std::vector<IntVector>> sets;
  std::vector<std::size_t> target_index;
};

struct TransportKind {
  std::int64_t m = 0;
  std::int64_t n = 0;
};
struct MultiwayKind {
  std::vector<std::int64_t> dims;
};
using FamilyKind = std::variant<TransportKind, MultiwayKind>;

// Builds the short-vector families for the row ordering of gen_transport or
// gen_multiway. Every member is checked against the constraint matrix.
YFamily gen_yfamily(const FamilyKind& kind);

// psi_i(x) = (1/|Y_i|) sum_y <y, x>^2 as an n x n matrix.
Matrix psi_form(const YFamily& family, std::size_t set, std::size_t num_variables);
// Largest eigenvalue of psi_i.
double psi_eigen_max(const YFamily& family, std::size_t set);

// Problem names written by the generators ("transport:3x4",
// "multiway:3x3x3") and their inverse.
std::string family_name(const FamilyKind& kind);
std::optional<FamilyKind> parse_family_name(std::string_view name);

// Recovers the generator family of a spec from its name, provided the
// constraint matrix matches the regenerated one exactly.
std::optional<FamilyKind> detect_family(const PolytopeSpec& spec);

}  // namespace maxent
