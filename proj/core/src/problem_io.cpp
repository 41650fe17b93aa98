#include "maxent/problem_io.hpp"

#include <cstdint>
#include <istream>
#include <iterator>

#include <nlohmann/json.hpp>
#include "maxent/error.hpp"

namespace maxent {

namespace {

using nlohmann::json;

double as_number(const json& v, const char* where) {
  if (!v.is_number()) throw Error(ErrorCode::ParseError, std::string(where) + " must hold numbers");
  return v.get<double>();
}

Vector as_vector(const json& v, const char* where) {
  if (!v.is_array()) throw Error(ErrorCode::ParseError, std::string(where) + " must be an array");
  Vector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(as_number(x, where));
  return out;
}

json number_json(double v) {
  if (is_integral(v)) return static_cast<std::int64_t>(v);
  return v;
}

json vector_json(std::span<const double> v) {
  json arr = json::array();
  for (double x : v) arr.push_back(number_json(x));
  return arr;
}

}  // namespace

PolytopeSpec parse_problem(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "problem file must be a JSON object");

  PolytopeSpec spec;
  if (auto it = doc.find("name"); it != doc.end() && !it->is_null()) {
    if (!it->is_string()) throw Error(ErrorCode::ParseError, "\"name\" must be a string");
    spec.name = it->get<std::string>();
  }

  const auto a = doc.find("A");
  if (a == doc.end() || !a->is_array()) throw Error(ErrorCode::ParseError, "missing array \"A\"");
  std::vector<Vector> rows;
  for (const auto& r : *a) rows.push_back(as_vector(r, "\"A\" rows"));
  for (const auto& r : rows)
    if (r.size() != rows.front().size())
      throw Error(ErrorCode::DimensionMismatch, "rows of \"A\" differ in length");
  spec.A = Matrix::from_rows(rows);

  const auto b = doc.find("b");
  if (b == doc.end()) throw Error(ErrorCode::ParseError, "missing array \"b\"");
  spec.b = as_vector(*b, "\"b\"");

  const auto dom = doc.find("domain");
  if (dom == doc.end() || !dom->is_string()) {
    throw Error(ErrorCode::ParseError, "missing string \"domain\"");
  }
  const auto kind = parse_domain_keyword(dom->get<std::string>());
  if (!kind) {
    throw Error(ErrorCode::ParseError,
                "\"domain\" must be \"volume\", \"integer\" or \"binary\", got \"" +
                    dom->get<std::string>() + "\"");
  }
  spec.domain = *kind;

  if (auto t = doc.find("tilt"); t != doc.end() && !t->is_null()) {
    spec.tilt = as_vector(*t, "\"tilt\"");
  }
  check_shape(spec);
  return spec;
}

PolytopeSpec read_problem(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_problem(text);
}

std::string write_problem(const PolytopeSpec& spec, int indent) {
  json doc = json::object();
  if (!spec.name.empty()) doc["name"] = spec.name;
  json rows = json::array();
  for (std::size_t i = 0; i < spec.A.rows(); ++i) rows.push_back(vector_json(spec.A.row(i)));
  doc["A"] = std::move(rows);
  doc["b"] = vector_json(spec.b);
  doc["domain"] = std::string(domain_keyword(spec.domain));
  if (spec.tilt) doc["tilt"] = vector_json(*spec.tilt);
  return doc.dump(indent);
}

}  // namespace maxent
