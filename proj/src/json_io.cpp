#include "ucg/json_io.hpp"

namespace ucg {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::uint32_t as_uint(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0 || j.get<std::int64_t>() > 0xFFFFFFFF)
    bad(std::string(what) + " must be a non-negative integer");
  return j.get<std::uint32_t>();
}

Element element_from_json(const Field& f, const Json& j) {
  const std::uint32_t v = as_uint(j, "field element");
  if (v >= f.order()) bad("field element " + std::to_string(v) + " is outside GF(" + std::to_string(f.order()) + ")");
  return f.element(v);
}

}  // namespace

Json field_to_json(const FieldSpec& spec) { return Json{{"n", spec.n}, {"modulus", spec.modulus}}; }

const Field& field_from_json(const Json& j) {
  const std::uint32_t n = as_uint(member(j, "n"), "n");
  std::optional<std::uint32_t> modulus;
  if (j.contains("modulus") && !j.at("modulus").is_null()) modulus = as_uint(j.at("modulus"), "modulus");
  return Field::make(n, modulus);
}

Json vector_to_json(const Vector& v) { return Json(to_values(v)); }

Vector vector_from_json(const Field& f, const Json& j, Eigen::Index expected_dim) {
  if (!j.is_array()) bad("vector must be an array");
  if (expected_dim >= 0 && static_cast<Eigen::Index>(j.size()) != expected_dim)
    bad("vector has length " + std::to_string(j.size()) + ", expected " + std::to_string(expected_dim));
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = element_from_json(f, j[i]);
  return v;
}

Json matrix_to_json(const Matrix& m) { return Json(to_values(m)); }

Matrix matrix_from_json(const Field& f, const Json& j) {
  if (!j.is_array()) bad("matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = rows == 0 ? 0 : (j[0].is_array() ? static_cast<Eigen::Index>(j[0].size()) : -1);
  if (cols < 0) bad("matrix rows must be arrays");
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) m.row(r) = vector_from_json(f, j[static_cast<std::size_t>(r)], cols).transpose();
  return m;
}

Json arf_to_json(const ArfValue& a) {
  if (a.infinite) return "inf";
  return a.value.value();
}

Json form_to_json(const QuadraticForm& form) {
  return Json{{"field", field_to_json(form.field().spec())},
              {"dim", form.dim()},
              {"coeffs", matrix_to_json(form.coeffs())}};
}

QuadraticForm form_from_json(const Json& j) {
  const Field& f = field_from_json(member(j, "field"));
  const Matrix c = matrix_from_json(f, member(j, "coeffs"));
  if (j.contains("dim") && as_uint(j.at("dim"), "dim") != c.rows()) bad("'dim' does not match 'coeffs'");
  return QuadraticForm(f, c);
}

Json virtual_space_to_json(const VirtualSpace& vs) {
  return Json{{"ambient", form_to_json(vs.ambient())}, {"u_basis", matrix_to_json(vs.u().basis())}};
}

VirtualSpace virtual_space_from_json(const Json& j) {
  QuadraticForm ambient = form_from_json(member(j, "ambient"));
  const Field& f = ambient.field();
  Matrix rows = matrix_from_json(f, member(j, "u_basis"));
  if (rows.rows() == 0) rows = zero_matrix(f, 0, ambient.dim());
  if (rows.cols() != ambient.dim()) bad("u_basis vectors must have the ambient dimension");
  const Eigen::Index d = ambient.dim();
  return VirtualSpace(std::move(ambient), Subspace(f, d, rows));
}

Json geometry_to_json(const Geometry& g) {
  return Json{{"field", field_to_json(g.field().spec())},
              {"form", form_to_json(g.form())},
              {"omega", vector_to_json(g.omega().rep())},
              {"P", vector_to_json(g.p().rep())},
              {"L", vector_to_json(g.l().rep())}};
}

Geometry geometry_from_json(const Json& j) {
  const Field& f = field_from_json(member(j, "field"));
  QuadraticForm form = form_from_json(member(j, "form"));
  if (&form.field() != &f) bad("form field differs from geometry field");
  const Eigen::Index d = form.dim();
  auto vec = [&](const char* key) {
    const Vector v = vector_from_json(f, member(j, key), d);
    if (is_zero_vector(v)) bad(std::string("'") + key + "' is the zero vector");
    return v;
  };
  return Geometry(std::move(form), vec("omega"), vec("P"), vec("L"));
}

Json distance_to_json(const DistanceClass& d) {
  Json out = Json::array();
  for (const Matrix& m : d.members) out.push_back(matrix_to_json(m));
  return out;
}

Json report_to_json(const VerificationReport& r) {
  Json obs = Json::object();
  for (const auto& [k, v] : r.observations) obs[k] = v;
  return Json{{"claim_id", r.claim_id},
              {"field_n", r.field_n},
              {"cases_checked", r.cases_checked},
              {"failures", r.failures},
              {"observations", obs}};
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace ucg
