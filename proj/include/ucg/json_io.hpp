#pragma once

#include <json.hpp>

#include "ucg/geometry.hpp"
#include "ucg/metric.hpp"
#include "ucg/oracle.hpp"
#include "ucg/virtual_space.hpp"

namespace ucg {

using Json = nlohmann::ordered_json;

// Matrices are row-major arrays of integer rows; vectors and elements are plain integers.
// Every parser throws Error(InvalidInput) on malformed documents.

Json field_to_json(const FieldSpec& spec);
const Field& field_from_json(const Json& j);

Json vector_to_json(const Vector& v);
Vector vector_from_json(const Field& f, const Json& j, Eigen::Index expected_dim = -1);
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Field& f, const Json& j);

/// "inf" or the integer value.
Json arf_to_json(const ArfValue& a);

Json form_to_json(const QuadraticForm& form);
QuadraticForm form_from_json(const Json& j);

Json virtual_space_to_json(const VirtualSpace& vs);
VirtualSpace virtual_space_from_json(const Json& j);

Json geometry_to_json(const Geometry& g);
Geometry geometry_from_json(const Json& j);

Json distance_to_json(const DistanceClass& d);
Json report_to_json(const VerificationReport& r);

/// Parses text, mapping syntax errors to Error(InvalidInput).
Json parse_json(const std::string& text);

}  // namespace ucg
