#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "maxent/model.hpp"

namespace maxent {

// Problem file: one JSON object
//   { "name": optional string, "A": [[...], ...], "b": [...],
//     "domain": "volume" | "integer" | "binary", "tilt": optional [...] }
// Throws ParseError for malformed input; shape errors come from check_shape.
PolytopeSpec parse_problem(std::string_view json_text);
PolytopeSpec read_problem(std::istream& in);

// Serializes to the same schema. Integer-valued entries are written as JSON
// integers so the output parses back into an identical spec.
std::string write_problem(const PolytopeSpec& spec, int indent = -1);

}  // namespace maxent
