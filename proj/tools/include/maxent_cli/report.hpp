#pragma once

#include <string>

#include "maxent/lattice.hpp"

namespace maxent::cli {

// exp(log_value) as "m.mmmmmeE" with 6 significant digits, built from the
// base-10 logarithm so huge values never pass through exp().
std::string scientific_from_log(double log_value);

// Same rendering for an exact integer, rounded half-up on its decimal digits.
std::string scientific_from_integer(const BigInt& value);

}  // namespace maxent::cli
