#include "ucg/cli.hpp"

#include <CLI11.hpp>

#include <array>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "ucg/json_io.hpp"

namespace ucg::cli {

namespace {

constexpr ArfClass kTableOrder[3] = {ArfClass::E, ArfClass::Infinity, ArfClass::Zero};

std::string read_source(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
  } else {
    std::ifstream file(path);
    if (!file) throw Error(ErrorCode::InvalidInput, "cannot open '" + path + "'");
    buf << file.rdbuf();
  }
  return buf.str();
}

std::uint32_t parse_uint(const std::string& s) {
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &used, 0);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || s[0] == '-' || v > 0xFFFFFFFFul)
    throw Error(ErrorCode::InvalidInput, "expected a non-negative integer, got '" + s + "'");
  return static_cast<std::uint32_t>(v);
}

Element parse_element(const Field& f, const std::string& s) {
  const std::uint32_t v = parse_uint(s);
  if (v >= f.order()) throw Error(ErrorCode::InvalidInput, "element " + s + " is outside the field");
  return f.element(v);
}

// 0, e, inf, or raw:<int>.
ArfValue parse_arf(const Field& f, const std::string& s) {
  if (s == "inf") return ArfValue::infinity();
  if (s == "e") return ArfValue::finite(f.e());
  if (s == "0") return ArfValue::finite(f.zero());
  if (s.rfind("raw:", 0) == 0) return ArfValue::finite(parse_element(f, s.substr(4)));
  throw Error(ErrorCode::InvalidInput, "Arf value must be 0, e, inf or raw:<int>, got '" + s + "'");
}

Vector parse_vector_arg(const Field& f, const std::string& s, Eigen::Index dim) {
  if (!s.empty() && s.front() == '[') return vector_from_json(f, parse_json(s), dim);
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  if (static_cast<Eigen::Index>(parts.size()) != dim)
    throw Error(ErrorCode::InvalidInput, "vector '" + s + "' must have " + std::to_string(dim) + " entries");
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = parse_element(f, parts[static_cast<std::size_t>(i)]);
  return v;
}

std::pair<unsigned, unsigned> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const unsigned n = parse_uint(s);
    return {n, n};
  }
  return {parse_uint(s.substr(0, dots)), parse_uint(s.substr(dots + 2))};
}

std::string matrix_text(const Matrix& m) {
  std::ostringstream os;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    os << "  ";
    for (Eigen::Index c = 0; c < m.cols(); ++c) os << (c ? " " : "") << std::setw(2) << m(r, c).value();
    os << "\n";
  }
  return os.str();
}

struct Options {
  bool json = false;

  // field
  unsigned n = 1;
  std::optional<std::uint32_t> modulus;
  std::string op;
  std::vector<std::string> operands;

  // arf / classify / distance
  std::string file;
  std::string line, p1, p2;

  // build
  std::string arf_p, arf_l;
  std::optional<std::string> arf_v;
  std::string out_file;

  // verify
  std::string suite;
  std::string range;
  std::uint64_t seed = kDefaultSeed;
};

int cmd_field(const Options& o, std::ostream& out) {
  const Field& f = Field::make(o.n, o.modulus);
  auto arg = [&](std::size_t i) {
    if (o.operands.size() <= i) throw Error(ErrorCode::InvalidInput, "'" + o.op + "' needs more operands");
    return parse_element(f, o.operands[i]);
  };
  const std::map<std::string, std::size_t> arity = {{"add", 2},  {"mul", 2},  {"inv", 1},   {"sqrt", 1},
                                                    {"trace", 1}, {"harf", 1}, {"solve", 1}, {"info", 0}};
  const auto it = arity.find(o.op);
  if (it == arity.end()) throw Error(ErrorCode::InvalidInput, "unknown field operation '" + o.op + "'");
  if (o.operands.size() != it->second)
    throw Error(ErrorCode::InvalidInput, "'" + o.op + "' takes " + std::to_string(it->second) + " operand(s)");

  Json result;
  std::string text;
  if (o.op == "info") {
    result = Json{{"n", f.degree()}, {"modulus", f.modulus()}, {"order", f.order()}, {"e", f.e().value()}};
    text = "GF(" + std::to_string(f.order()) + ") modulus " + std::to_string(f.modulus()) + " e " +
           std::to_string(f.e().value());
  } else if (o.op == "harf") {
    const HarfResult h = harf(arg(0));
    result = Json{{"image", h.image.value()}, {"member", h.member}};
    text = std::to_string(h.image.value()) + (h.member ? " (in image)" : " (not in image)");
  } else if (o.op == "solve") {
    const auto roots = fsolve_as(arg(0));
    if (roots) {
      result = Json::array({roots->first.value(), roots->second.value()});
      text = std::to_string(roots->first.value()) + " " + std::to_string(roots->second.value());
    } else {
      result = nullptr;
      text = "none";
    }
  } else {
    Element r;
    if (o.op == "add") r = arg(0) + arg(1);
    if (o.op == "mul") r = fmul(arg(0), arg(1));
    if (o.op == "inv") r = finv(arg(0));
    if (o.op == "sqrt") r = fsqrt(arg(0));
    if (o.op == "trace") r = ftrace(arg(0));
    result = r.value();
    text = std::to_string(r.value());
  }
  if (o.json)
    out << Json{{"op", o.op}, {"field", field_to_json(f.spec())}, {"result", result}}.dump() << "\n";
  else
    out << text << "\n";
  return kOk;
}

int cmd_arf(const Options& o, std::ostream& out, std::istream& in) {
  const QuadraticForm form = form_from_json(parse_json(read_source(o.file, in)));
  const ArfValue a = arf_invariant(form);
  const ArfClass c = arf_normalize(a);
  if (o.json)
    out << Json{{"arf", arf_to_json(a)}, {"class", to_string(c)}}.dump() << "\n";
  else
    out << "arf " << a << " class " << to_string(c) << "\n";
  return kOk;
}

int cmd_build(const Options& o, std::ostream& out, std::ostream& err) {
  const Field& f = Field::make(o.n, o.modulus);
  std::optional<ArfValue> arf_v;
  if (o.arf_v) arf_v = parse_arf(f, *o.arf_v);
  const Geometry g = build_geometry(f, parse_arf(f, o.arf_p), parse_arf(f, o.arf_l), arf_v);
  const Json doc = geometry_to_json(g);
  if (o.out_file.empty()) {
    out << doc.dump(2) << "\n";
    return kOk;
  }
  std::ofstream file(o.out_file);
  if (!file) throw Error(ErrorCode::InvalidInput, "cannot write '" + o.out_file + "'");
  file << doc.dump(2) << "\n";
  const GeometryClass cls = classify_geometry(g);
  err << "wrote " << o.out_file << "\n";
  if (o.json)
    out << Json{{"written", o.out_file}, {"class", to_string(cls.name)}}.dump() << "\n";
  else
    out << to_string(cls.name) << "\n";
  return kOk;
}

Geometry load_valid_geometry(const Options& o, std::istream& in) {
  Geometry g = geometry_from_json(parse_json(read_source(o.file, in)));
  if (!g.valid()) {
    std::string msg = "geometry violates:";
    for (const auto& v : g.violations()) msg += " " + v;
    throw Error(ErrorCode::PreconditionViolated, msg);
  }
  return g;
}

int cmd_classify(const Options& o, std::ostream& out, std::istream& in) {
  const Geometry g = load_valid_geometry(o, in);
  const GeometryClass cls = classify_geometry(g);
  const ArfValue ap = arf_of(g, g.p()), al = arf_of(g, g.l());
  if (o.json) {
    out << Json{{"name", to_string(cls.name)},
                {"arf_p", arf_to_json(ap)},
                {"arf_l", arf_to_json(al)},
                {"arf_p_class", to_string(cls.arf_p)},
                {"arf_l_class", to_string(cls.arf_l)}}
               .dump()
        << "\n";
  } else {
    out << to_string(cls.name) << " (Arf(P) " << ap << " class " << to_string(cls.arf_p) << ", Arf(L) " << al
        << " class " << to_string(cls.arf_l) << ")\n";
  }
  return kOk;
}

int cmd_distance(const Options& o, std::ostream& out, std::istream& in) {
  const Geometry g = load_valid_geometry(o, in);
  const Field& f = g.field();
  const Eigen::Index d = g.form().dim();
  const ProjPoint ell(parse_vector_arg(f, o.line, d));
  const ProjPoint p1(parse_vector_arg(f, o.p1, d));
  const ProjPoint p2(parse_vector_arg(f, o.p2, d));
  const Matrix oriented = oriented_distance(g, ell, p1, p2);
  const DistanceClass cls = distance(g, ell, p1, p2);
  if (o.json) {
    out << Json{{"oriented", matrix_to_json(oriented)}, {"distance", distance_to_json(cls)}}.dump() << "\n";
    return kOk;
  }
  out << "oriented distance:\n" << matrix_text(oriented);
  out << "distance class (" << cls.members.size() << " member" << (cls.members.size() == 1 ? "" : "s") << "):\n";
  for (const Matrix& m : cls.members) out << matrix_text(m) << "\n";
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const auto [lo, hi] = parse_range(o.range);
  const std::vector<VerificationReport> reports = run_suite(o.suite, lo, hi, o.seed);
  bool ok = true;
  Json all = Json::array();
  for (const VerificationReport& r : reports) {
    ok = ok && r.ok();
    err << (r.ok() ? "PASS " : "FAIL ") << r.claim_id << " n=" << r.field_n << " cases=" << r.cases_checked << "\n";
    if (o.json)
      all.push_back(report_to_json(r));
    else
      out << report_to_json(r).dump() << "\n";
  }
  if (o.json) out << Json{{"ok", ok}, {"reports", all}}.dump() << "\n";
  return ok ? kOk : kVerificationFailed;
}

int cmd_table(const Options& o, std::ostream& out) {
  if (o.json) {
    Json rows = Json::array(), cells = Json::array();
    for (ArfClass p : kTableOrder) {
      rows.push_back(to_string(p));
      Json row = Json::array();
      for (ArfClass l : kTableOrder) row.push_back(to_string(table_cell(p, l)));
      cells.push_back(row);
    }
    out << Json{{"rows", "Arf(P)"}, {"columns", "Arf(L)"}, {"labels", rows}, {"cells", cells}}.dump() << "\n";
    return kOk;
  }
  auto row = [&](std::string_view head, const std::array<std::string_view, 3>& cells) {
    auto pad = [](std::string_view v) { return std::string(v) + std::string(v.size() < 18 ? 18 - v.size() : 1, ' '); };
    out << pad(head) << pad(cells[0]) << pad(cells[1]) << cells[2] << "\n";
  };
  row("Arf(P) \\ Arf(L)", {to_string(kTableOrder[0]), to_string(kTableOrder[1]), to_string(kTableOrder[2])});
  for (ArfClass p : kTableOrder)
    row(to_string(p), {to_string(table_cell(p, kTableOrder[0])), to_string(table_cell(p, kTableOrder[1])),
                       to_string(table_cell(p, kTableOrder[2]))});
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
  Options o;
  CLI::App app{"Conformal geometries over GF(2^n)", "ucg"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Emit a single JSON document on standard output");

  auto add_field_opts = [&](CLI::App* sub) {
    sub->add_option("--n", o.n, "Extension degree n of GF(2^n)")->required()->check(CLI::Range(1u, kMaxDegree));
    sub->add_option("--modulus", o.modulus, "Irreducible modulus (bit i = coefficient of x^i)");
  };

  CLI::App* field = app.add_subcommand("field", "Field arithmetic: add mul inv sqrt trace harf solve info");
  add_field_opts(field);
  field->add_option("op", o.op, "Operation")->required();
  field->add_option("operands", o.operands, "Integer-encoded elements");

  CLI::App* arf = app.add_subcommand("arf", "Arf invariant of a form file");
  arf->add_option("file", o.file, "Form JSON, or - for standard input")->required();

  CLI::App* build = app.add_subcommand("build", "Build a geometry with prescribed Arf(P), Arf(L)");
  add_field_opts(build);
  build->add_option("--arf-p", o.arf_p, "0, e, inf or raw:<int>")->required();
  build->add_option("--arf-l", o.arf_l, "0, e, inf or raw:<int>")->required();
  build->add_option("--arf-v", o.arf_v, "Arf class of the whole space (default 0)");
  build->add_option("--out", o.out_file, "Write the geometry JSON here instead of standard output");

  CLI::App* classify = app.add_subcommand("classify", "Name the geometry in a geometry file");
  classify->add_option("file", o.file, "Geometry JSON, or - for standard input")->required();

  CLI::App* dist = app.add_subcommand("distance", "Oriented distance and distance of two points on a line");
  dist->add_option("file", o.file, "Geometry JSON, or - for standard input")->required();
  dist->add_option("--line", o.line, "Line vector, comma separated or a JSON array")->required();
  dist->add_option("--p1", o.p1, "First point")->required();
  dist->add_option("--p2", o.p2, "Second point")->required();

  CLI::App* verify = app.add_subcommand("verify", "Run brute-force verification suites");
  verify->add_option("--suite", o.suite, "lindex, arf, ort-orbits, lambda, transformation or all")->required();
  verify->add_option("--n", o.range, "Degree or range a..b")->required();
  verify->add_option("--seed", o.seed, "Sampling seed");

  CLI::App* table = app.add_subcommand("table", "Print the classification table");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInputError;
  }

  try {
    if (field->parsed()) return cmd_field(o, out);
    if (arf->parsed()) return cmd_arf(o, out, in);
    if (build->parsed()) return cmd_build(o, out, err);
    if (classify->parsed()) return cmd_classify(o, out, in);
    if (dist->parsed()) return cmd_distance(o, out, in);
    if (verify->parsed()) return cmd_verify(o, out, err);
    if (table->parsed()) return cmd_table(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  err << app.help();
  return kInputError;
}

}  // namespace ucg::cli
