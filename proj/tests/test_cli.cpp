#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "ucg/cli.hpp"
#include "ucg/json_io.hpp"

using namespace ucg;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  std::ostringstream out, err;
  std::istringstream in(input);
  const int code = cli::run(args, out, err, in);
  return {code, out.str(), err.str()};
}

std::string csv(const Vector& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v(i).value());
  return s;
}

}  // namespace

TEST(Cli, Table) {
  const Result r = run({"table"});
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::vector<std::string> rows;
  for (std::string line; std::getline(lines, line);) {
    EXPECT_TRUE(line.empty() || line.back() != ' ') << "trailing space: '" << line << "'";
    rows.push_back(line);
  }
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[1].rfind("e", 0), 0u);
  EXPECT_NE(rows[1].find("elliptic"), std::string::npos);
  EXPECT_NE(rows[2].find("laguerre-galilei"), std::string::npos);
  EXPECT_NE(rows[3].find("minkowski"), std::string::npos);
  EXPECT_NE(rows[3].find("anti-de-sitter"), std::string::npos);

  const Result j = run({"--json", "table"});
  ASSERT_EQ(j.code, 0);
  const Json doc = parse_json(j.out);
  EXPECT_EQ(doc.at("rows"), "Arf(P)");
  EXPECT_EQ(doc.at("cells").at(0).at(0), "elliptic");
  EXPECT_EQ(doc.at("cells").at(1).at(1), "laguerre-galilei");
  EXPECT_EQ(doc.at("cells").at(2).at(1), "minkowski");
}

TEST(Cli, FieldOperations) {
  const Field& f = Field::make(4);
  const Result t = run({"field", "--n", "4", "trace", "5"});
  ASSERT_EQ(t.code, 0);
  EXPECT_EQ(t.out, std::to_string(ftrace(f.element(5)).value()) + "\n");
  EXPECT_EQ(run({"field", "--n", "2", "mul", "2", "3"}).out, "1\n");
  EXPECT_EQ(run({"field", "--n", "2", "sqrt", "2"}).out, "3\n");
  EXPECT_EQ(run({"field", "--n", "2", "solve", "1"}).out, "2 3\n");
  EXPECT_EQ(run({"field", "--n", "1", "solve", "1"}).out, "none\n");
  const Json inv = parse_json(run({"--json", "field", "--n", "3", "inv", "2"}).out);
  EXPECT_EQ(inv.at("result"), finv(Field::make(3).element(2)).value());
}

TEST(Cli, InputErrorsExitOne) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"bogus"}).code, 1);
  EXPECT_EQ(run({"field", "--n", "2", "inv", "0"}).code, 1);
  EXPECT_EQ(run({"field", "--n", "2", "mul", "2", "9"}).code, 1);
  EXPECT_EQ(run({"field", "--n", "3", "--modulus", "9", "info"}).code, 1);
  EXPECT_EQ(run({"field", "--n", "17", "info"}).code, 1);
  EXPECT_EQ(run({"build", "--n", "1", "--arf-p", "x", "--arf-l", "0"}).code, 1);
  EXPECT_EQ(run({"classify", "-"}, "{]").code, 1);
  EXPECT_EQ(run({"verify", "--suite", "nope", "--n", "2"}).code, 1);
  const Result e = run({"arf", "/nonexistent/file.json"});
  EXPECT_EQ(e.code, 1);
  EXPECT_NE(e.err.find("error:"), std::string::npos);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ArfCommand) {
  const std::string doc = R"({"field": {"n": 2}, "coeffs": [[1, 1], [0, 2]]})";
  const Result r = run({"--json", "arf", "-"}, doc);
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = parse_json(r.out);
  EXPECT_EQ(j.at("arf"), 2);
  EXPECT_EQ(j.at("class"), "e");
  EXPECT_EQ(run({"arf", "-"}, R"({"field": {"n": 1}, "coeffs": [[1, 0], [0, 1]]})").out, "arf inf class inf\n");
}

TEST(Cli, BuildClassifyRoundTrip) {
  for (const char* n : {"1", "2"})
    for (const char* p : {"0", "e", "inf"})
      for (const char* l : {"0", "e", "inf"}) {
        const Result b = run({"build", "--n", n, "--arf-p", p, "--arf-l", l});
        ASSERT_EQ(b.code, 0) << b.err;
        const Result c = run({"--json", "classify", "-"}, b.out);
        ASSERT_EQ(c.code, 0) << c.err;
        const Json j = parse_json(c.out);
        EXPECT_EQ(j.at("arf_p_class"), p);
        EXPECT_EQ(j.at("arf_l_class"), l);
      }
  const Result anchor = run({"classify", "-"}, run({"build", "--n", "1", "--arf-p", "0", "--arf-l", "inf"}).out);
  EXPECT_EQ(anchor.out.rfind("minkowski", 0), 0u);
}

TEST(Cli, BuildWritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "ucg_cli_build_test.json";
  const Result b = run({"--json", "build", "--n", "2", "--arf-p", "raw:3", "--arf-l", "e", "--arf-v", "e", "--out",
                        path.string()});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(parse_json(b.out).at("class"), "elliptic");
  EXPECT_NE(b.err.find("wrote"), std::string::npos);
  const Result c = run({"--json", "classify", path.string()});
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(parse_json(c.out).at("arf_p"), 3);
  std::filesystem::remove(path);
}

TEST(Cli, ClassifyRejectsInvalidGeometry) {
  Json g = geometry_to_json(build_geometry(Field::make(1), ArfValue::finite(Field::make(1).e()), ArfValue::infinity()));
  g["L"] = g["P"];
  const Result r = run({"classify", "-"}, g.dump());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("assumption-1"), std::string::npos);
}

TEST(Cli, Distance) {
  const Field& f = Field::make(1);
  const Geometry g = build_geometry(f, ArfValue::finite(f.e()), ArfValue::finite(f.e()));
  std::optional<ProjPoint> line;
  std::vector<ProjPoint> pts;
  for (const ProjPoint& c : quadric_points(g)) {
    const CycleFlags fl = classify_cycle(g, c);
    if (!fl.line || fl.ideal || !fl.independent || !fl.real) continue;
    const PointOrbit o = point_orbit(g, c, f.zero());
    if (o.points.size() < 2) continue;
    line = c;
    pts = o.points;
    break;
  }
  ASSERT_TRUE(line);
  const std::string geo = geometry_to_json(g).dump();
  const Result r = run({"--json", "distance", "-", "--line", csv(line->rep()), "--p1", csv(pts[0].rep()), "--p2",
                        vector_to_json(pts[1].rep()).dump()},
                       geo);
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = parse_json(r.out);
  const Matrix expected = oriented_distance(g, *line, pts[0], pts[1]);
  EXPECT_TRUE(equal(matrix_from_json(f, j.at("oriented")), expected));
  EXPECT_EQ(j.at("distance").size(), distance(g, *line, pts[0], pts[1]).members.size());

  const Result text = run({"distance", "-", "--line", csv(line->rep()), "--p1", csv(pts[0].rep()), "--p2",
                           csv(pts[0].rep())},
                          geo);
  ASSERT_EQ(text.code, 0);
  EXPECT_NE(text.out.find("1 member"), std::string::npos);

  EXPECT_EQ(run({"distance", "-", "--line", "1,0", "--p1", "1", "--p2", "1"}, geo).code, 1);
  EXPECT_EQ(run({"distance", "-", "--line", csv(pts[0].rep()), "--p1", csv(pts[0].rep()), "--p2", csv(pts[1].rep())},
                geo)
                .code,
            1);
}

TEST(Cli, VerifyExitCodesAndJson) {
  const Result r = run({"verify", "--suite", "lindex", "--n", "2..8"});
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  int count = 0;
  for (std::string line; std::getline(lines, line); ++count) {
    const Json j = parse_json(line);
    EXPECT_GT(j.at("cases_checked").get<std::uint64_t>(), 0u);
  }
  EXPECT_EQ(count, 7);
  EXPECT_NE(r.err.find("PASS lindex n=2"), std::string::npos);

  const Result j = run({"--json", "verify", "--suite", "ort-orbits", "--n", "1..2"});
  ASSERT_EQ(j.code, 0);
  const Json doc = parse_json(j.out);
  EXPECT_TRUE(doc.at("ok").get<bool>());
  EXPECT_EQ(doc.at("reports").size(), 2u);

  EXPECT_EQ(run({"verify", "--suite", "lambda", "--n", "5"}).code, 1);
}
