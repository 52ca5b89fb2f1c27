#include <gtest/gtest.h>

#include <set>

#include "test_util.hpp"
#include "ucg/metric.hpp"

using namespace ucg;
using namespace testutil;

namespace {

const Field& gf2() { return Field::make(1); }
const Field& gf4() { return Field::make(2); }

std::vector<ArfValue> class_reps(const Field& f) {
  return {ArfValue::finite(f.zero()), ArfValue::finite(f.e()), ArfValue::infinity()};
}

/// Non-ideal independent lines of g.
std::vector<ProjPoint> independent_lines(const Geometry& g) {
  std::vector<ProjPoint> out;
  for (const ProjPoint& c : quadric_points(g)) {
    const CycleFlags fl = classify_cycle(g, c);
    if (fl.line && !fl.ideal && fl.independent) out.push_back(c);
  }
  return out;
}

std::vector<Matrix> ambient_elements(const OrtGroup& g) {
  std::vector<Matrix> out;
  for (const OrtElement& e : g.elements()) out.push_back(e.ambient);
  return out;
}

/// Number of subgroups of index 2, by testing every half-sized subset.
int index_two_subgroups(const IsomGroup& g) {
  const std::size_t n = g.order();
  int count = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::size_t(__builtin_popcount(mask)) != n / 2) continue;
    std::vector<Matrix> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s.push_back(g[i]);
    count += IsomGroup(s).is_group();
  }
  return count;
}

Eigen::Index kernel_dim_on(const Geometry& g, const ProjPoint& ell) {
  Matrix v0(6, 4);
  v0 << g.omega().rep(), g.p().rep(), g.l().rep(), ell.rep();
  return kernel(Matrix(v0.transpose() * g.form().gram() * v0)).cols();
}

/// The projection of Omega onto <ell, P>-perp, found by solving the two linear conditions.
Vector projected_omega(const Geometry& g, const Vector& ell) {
  const Vector& om = g.omega().rep();
  const Vector& p = g.p().rep();
  Matrix m(2, 2);
  m << g.b(p, p), g.b(ell, p), g.b(p, ell), g.b(ell, ell);
  Vector rhs(2);
  rhs << g.b(om, p), g.b(om, ell);
  const auto xy = solve(m, rhs);
  return om + (*xy)(0) * p + (*xy)(1) * ell;
}

struct EllipticSetup {
  Geometry g;
  ProjPoint line;
  std::vector<ProjPoint> points;
};

EllipticSetup elliptic_gf2_line() {
  const Field& f = gf2();
  Geometry g = build_geometry(f, ArfValue::finite(f.e()), ArfValue::finite(f.e()));
  for (const ProjPoint& c : independent_lines(g)) {
    if (!classify_cycle(g, c).real) continue;
    const PointOrbit orbit = point_orbit(g, c, f.zero());
    if (orbit.points.size() == 3) return {g, c, orbit.points};
  }
  throw std::runtime_error("no real line with a three-point orbit");
}

}  // namespace

TEST(OrtGroup, Orders) {
  EXPECT_EQ(ort_group(gf2(), ArfValue::finite(gf2().zero())).order(), 2u);
  EXPECT_EQ(ort_group(gf2(), ArfValue::finite(gf2().e())).order(), 6u);
  EXPECT_EQ(ort_group(gf4(), ArfValue::infinity()).order(), 8u);
  for (const Field* f : {&gf2(), &gf4()}) {
    const std::size_t q = f->order();
    const OrtGroup zero = ort_group(*f, ArfValue::finite(f->zero()));
    const OrtGroup e = ort_group(*f, ArfValue::finite(f->e()));
    EXPECT_EQ(zero.order(), 2 * (q - 1));
    EXPECT_EQ(e.order(), 2 * (q + 1));
    EXPECT_EQ(zero.order(), brute_isometries(*zero.plane()).size());
    EXPECT_EQ(e.order(), brute_isometries(*e.plane()).size());
    EXPECT_EQ(ort_group(*f, ArfValue::infinity()).order(), 2 * q);
    EXPECT_EQ(ort_group(*f, ArfValue::infinity()).kind(), OrtGroup::Kind::DegeneratePair);
  }
}

TEST(OrtGroup, AnyClassRepresentativeGivesTheSameOrder) {
  for (const Element& a : gf4().elements())
    EXPECT_EQ(ort_group(gf4(), ArfValue::finite(a)).order(), harf(a).member ? 6u : 10u);
}

TEST(OrtPlus, Examples) {
  EXPECT_EQ(ort_plus(ort_group(gf2(), ArfValue::finite(gf2().e()))).order(), 3u);
  EXPECT_EQ(ort_plus(ort_group(gf2(), ArfValue::finite(gf2().zero()))).order(), 1u);
  const OrtGroup inf_plus = ort_plus(ort_group(gf4(), ArfValue::infinity()));
  EXPECT_EQ(inf_plus.order(), 4u);
  std::set<std::uint32_t> alphas;
  for (const OrtElement& e : inf_plus.elements()) {
    EXPECT_EQ(e.epsilon, 0);
    alphas.insert(e.alpha1.value());
  }
  EXPECT_EQ(alphas.size(), 4u);
}

TEST(OrtPlus, IndexTwoSubgroup) {
  for (const Field* f : {&gf2(), &gf4()})
    for (const ArfValue& a : {ArfValue::finite(f->zero()), ArfValue::finite(f->e())}) {
      const OrtGroup g = ort_group(*f, a);
      const OrtGroup plus = ort_plus(g);
      EXPECT_EQ(2 * plus.order(), g.order());
      std::vector<Matrix> ms;
      for (const OrtElement& e : plus.elements()) ms.push_back(e.local);
      EXPECT_TRUE(IsomGroup(ms).is_group());
    }
}

TEST(Lambda, SearchAgreesAndSatisfiesTheConstraint) {
  for (const Field* f : {&gf2(), &gf4()})
    for (const ArfValue& a : {ArfValue::finite(f->zero()), ArfValue::finite(f->e())}) {
      const OrtGroup g = ort_group(*f, a);
      const QuadraticForm& plane = *g.plane();
      const Matrix& A = plane.coeffs();
      const Matrix B = plane.gram();
      for (const OrtElement& e : g.elements()) {
        const Matrix lhs = bind(*f, Matrix(e.local.transpose() * A * e.local + A));
        std::vector<Element> found;
        for (const Element& lam : f->elements())
          if (equal(lhs, bind(*f, Matrix(lam * B)))) found.push_back(lam);
        ASSERT_EQ(found.size(), 1u);
        const Element lam = found.front();
        EXPECT_TRUE(lam.is_zero() || lam.is_one());
        EXPECT_TRUE((lam + lam * lam).is_zero());
        EXPECT_FALSE((lam + lam * lam).is_one());
        EXPECT_EQ(lambda_of(plane, e.local), lam);
      }
    }
}

TEST(Lambda, RejectsNonIsometries) {
  const QuadraticForm el = QuadraticForm::elliptic_plane(gf4());
  try {
    lambda_of(el, make_matrix(gf4(), {{2, 0}, {0, 1}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ContractViolation);
  }
}

TEST(OrtGroup, ClassEOrbitsHaveQPlusOnePoints) {
  for (const Field* f : {&gf2(), &gf4()}) {
    const OrtGroup g = ort_group(*f, ArfValue::finite(f->e()));
    std::set<std::uint64_t> seen;
    for (const Vector& v : all_vectors(*f, 2)) {
      if (is_zero_vector(v) || seen.count(vector_index(*f, v))) continue;
      std::set<std::uint64_t> orbit;
      for (const OrtElement& e : g.elements()) orbit.insert(vector_index(*f, Vector(e.local * v)));
      EXPECT_EQ(orbit.size(), f->order() + 1);
      seen.insert(orbit.begin(), orbit.end());
    }
  }
}

TEST(LineGroup, DichotomyOverGf2) {
  const Field& f = gf2();
  std::size_t orthogonal = 0, degenerate = 0;
  for (const ArfValue& ap : class_reps(f))
    for (const ArfValue& al : class_reps(f)) {
      const Geometry g = build_geometry(f, ap, al);
      const std::vector<Vector> fixed = {g.omega().rep(), g.p().rep(), g.l().rep()};
      for (const ProjPoint& ell : independent_lines(g)) {
        const OrtGroup lg = line_group(g, ell);
        const Eigen::Index kd = kernel_dim_on(g, ell);
        ASSERT_TRUE(kd == 0 || kd == 2);
        EXPECT_EQ(lg.kind() == OrtGroup::Kind::DegeneratePair, kd == 2);
        EXPECT_EQ(kd == 2, al.infinite);
        ASSERT_TRUE(lg.realized());

        std::vector<Vector> all_fixed = fixed;
        all_fixed.push_back(ell.rep());
        const IsomGroup stab = enumerate_isometries(g.form(), all_fixed);
        const IsomGroup group(ambient_elements(lg));
        EXPECT_EQ(group.order(), lg.order());
        EXPECT_TRUE(group.is_group());
        EXPECT_EQ(stab.order(), group.order());
        for (const Matrix& m : group.elements()) {
          EXPECT_TRUE(stab.contains(m));
          for (const Vector& v : all_fixed) EXPECT_TRUE(equal(Vector(m * v), v));
        }

        if (kd == 2) {
          ++degenerate;
          EXPECT_EQ(lg.order(), 2 * f.order());
          bool elementary_abelian = true;
          for (const Matrix& a : group.elements()) {
            elementary_abelian &= element_order(a) <= 2;
            for (const Matrix& b : group.elements()) elementary_abelian &= equal(Matrix(a * b), Matrix(b * a));
          }
          EXPECT_TRUE(elementary_abelian);
        } else {
          ++orthogonal;
          const Subspace perp = orthogonal_complement(g.form(), Subspace::span(f, 6, all_fixed));
          ASSERT_EQ(perp.dim(), 2);
          const QuadraticForm plane = g.form().pullback(perp.basis().transpose());
          EXPECT_EQ(lg.order(), brute_isometries(plane).size());
          EXPECT_EQ(arf_normalize(lg.alpha()), arf_normalize(arf_invariant(plane)));
        }
        const OrtGroup plus = ort_plus(lg);
        EXPECT_EQ(2 * plus.order(), lg.order());
        EXPECT_TRUE(IsomGroup(ambient_elements(plus)).is_group());
      }
    }
  EXPECT_GT(orthogonal, 0u);
  EXPECT_GT(degenerate, 0u);
}

TEST(LineGroup, DegenerateGroupHasManyIndexTwoSubgroups) {
  // K+ x F2+ is elementary abelian of order 2q, so its index-2 subgroups are the
  // 2q - 1 hyperplanes; the one with eps = 0 is among them.
  for (const Field* f : {&gf2(), &gf4()}) {
    const Geometry g = build_geometry(*f, ArfValue::finite(f->e()), ArfValue::infinity());
    const std::vector<ProjPoint> lines = independent_lines(g);
    ASSERT_FALSE(lines.empty());
    const OrtGroup lg = line_group(g, lines.front());
    ASSERT_EQ(lg.kind(), OrtGroup::Kind::DegeneratePair);
    const IsomGroup group(ambient_elements(lg));
    EXPECT_EQ(index_two_subgroups(group), int(2 * f->order() - 1));
    EXPECT_TRUE(IsomGroup(ambient_elements(ort_plus(lg))).is_group());
  }
}

TEST(LineGroup, EllipticRealLineHasAlphaOfL) {
  const Field& f = gf2();
  const Geometry g = build_geometry(f, ArfValue::finite(f.e()), ArfValue::finite(f.e()));
  int checked = 0;
  for (const ProjPoint& ell : independent_lines(g)) {
    if (!classify_cycle(g, ell).real) continue;
    const OrtGroup lg = line_group(g, ell);
    EXPECT_EQ(lg.kind(), OrtGroup::Kind::Orthogonal);
    EXPECT_EQ(arf_normalize(lg.alpha()), arf_normalize(arf_of(g, g.l())));
    EXPECT_EQ(arf_normalize(lg.alpha()), arf_normalize(translation_invariant(g, ell)));
    EXPECT_EQ(lg.order(), 6u);
    ++checked;
  }
  EXPECT_GT(checked, 0);
}

TEST(LineGroup, Errors) {
  const Field& f = gf2();
  const Geometry g = build_geometry(f, ArfValue::finite(f.zero()), ArfValue::infinity());
  const Vector& om = g.omega().rep();
  const Vector& L = g.l().rep();
  const ProjPoint dependent(Vector(fsqrt(g.q(om)) * L + fsqrt(g.q(L)) * om));
  try {
    line_group(g, dependent);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotIndependent);
  }
  for (const ProjPoint& c : quadric_points(g)) {
    if (classify_cycle(g, c).line) continue;
    try {
      line_group(g, c);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::PreconditionViolated);
    }
    break;
  }
}

TEST(TranslationInvariant, RealLinesKeepArfOfL) {
  for (const Field* f : {&gf2(), &gf4()})
    for (const ArfValue& ap : class_reps(*f))
      for (const ArfValue& al : class_reps(*f)) {
        const Geometry g = build_geometry(*f, ap, al);
        for (const ProjPoint& ell : independent_lines(g))
          if (classify_cycle(g, ell).real) EXPECT_EQ(translation_invariant(g, ell), arf_of(g, g.l()));
      }
}

TEST(TranslationInvariant, MatchesIndependentProjection) {
  for (const Field* f : {&gf2(), &gf4()})
    for (const Element& x : f->elements())
      for (const Element& y : f->elements())
        for (bool p_inf : {false, true}) {
          const ArfValue ap = p_inf ? ArfValue::infinity() : ArfValue::finite(x);
          const Geometry g = build_geometry(*f, ap, ArfValue::finite(y));
          for (const ProjPoint& ell : independent_lines(g)) {
            const Vector om2 = projected_omega(g, ell.rep());
            Matrix plane(6, 2);
            plane << g.l().rep(), om2;
            ASSERT_EQ(rank(plane), 2);
            EXPECT_EQ(translation_invariant(g, ell), arf_invariant(g.form().pullback(plane)));

            // <ell, P> is a hyperbolic plane.
            Matrix lp(6, 2);
            lp << ell.rep(), g.p().rep();
            EXPECT_EQ(arf_invariant(g.form().pullback(lp)), ArfValue::finite(f->zero()));
          }
        }
}

TEST(TranslationInvariant, IdealLineIsRejected) {
  const Field& f = gf2();
  const Geometry g = build_geometry(f, ArfValue::finite(f.e()), ArfValue::finite(f.zero()));
  int checked = 0;
  for (const ProjPoint& c : quadric_points(g)) {
    const CycleFlags fl = classify_cycle(g, c);
    if (!fl.ideal || !fl.independent) continue;
    try {
      translation_invariant(g, c);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::IdealLine);
    }
    ++checked;
  }
  EXPECT_GT(checked, 0);
}

TEST(PointOrbit, Examples) {
  const EllipticSetup s = elliptic_gf2_line();
  const PointOrbit none = point_orbit(s.g, s.line, std::nullopt);
  EXPECT_TRUE(none.points.empty());
  EXPECT_TRUE(none.transitive());

  const PointOrbit real = point_orbit(s.g, s.line, gf2().zero());
  EXPECT_EQ(real.orbit_count, 1u);
  for (const ProjPoint& p : real.points) {
    const CycleFlags fl = classify_cycle(s.g, p);
    EXPECT_TRUE(fl.hypercycle && fl.point && fl.real && !fl.line);
    EXPECT_TRUE(incident(s.g, p, s.line));
  }
}

TEST(PointOrbit, TransitiveForEveryRatio) {
  for (const Field* f : {&gf2(), &gf4()})
    for (const ArfValue& ap : class_reps(*f))
      for (const ArfValue& al : class_reps(*f)) {
        const Geometry g = build_geometry(*f, ap, al);
        const auto lines = independent_lines(g);
        const std::size_t limit = f == &gf2() ? lines.size() : std::min<std::size_t>(lines.size(), 4);
        for (std::size_t i = 0; i < limit; ++i)
          for (const Element& r : f->elements()) {
            const PointOrbit o = point_orbit(g, lines[i], r);
            EXPECT_TRUE(o.transitive());
            for (const ProjPoint& p : o.points) {
              EXPECT_EQ(g.b(g.omega().rep(), p.rep()) / g.b(g.l().rep(), p.rep()), r);
              for (const Element& s : f->elements())
                if (!s.is_zero()) {
                  const Vector sp = s * p.rep();
                  EXPECT_EQ(g.b(g.omega().rep(), sp) / g.b(g.l().rep(), sp), r);
                }
            }
          }
      }
}

TEST(OrientedDistance, SimplyTransitiveOnAThreePointOrbit) {
  const EllipticSetup s = elliptic_gf2_line();
  const OrtGroup plus = ort_plus(line_group(s.g, s.line));
  ASSERT_EQ(plus.order(), 3u);
  const Matrix id = identity_matrix(gf2(), 6);
  for (const ProjPoint& p1 : s.points)
    for (const ProjPoint& p2 : s.points) {
      int mappers = 0;
      for (const OrtElement& e : plus.elements()) mappers += ProjPoint(Vector(e.ambient * p1.rep())) == p2;
      EXPECT_EQ(mappers, 1);
      const Matrix d = oriented_distance(s.g, s.line, p1, p2);
      EXPECT_EQ(ProjPoint(Vector(d * p1.rep())), p2);
      EXPECT_TRUE(equal(Matrix(d * oriented_distance(s.g, s.line, p2, p1)), id));
      if (p1 == p2) EXPECT_TRUE(equal(d, id));
      for (const ProjPoint& p3 : s.points)
        EXPECT_TRUE(equal(oriented_distance(s.g, s.line, p1, p3),
                          Matrix(oriented_distance(s.g, s.line, p2, p3) * d)));
    }
}

TEST(Distance, ExactlyTwoClasses) {
  const EllipticSetup s = elliptic_gf2_line();
  std::vector<DistanceClass> classes;
  for (const ProjPoint& p1 : s.points)
    for (const ProjPoint& p2 : s.points) {
      const DistanceClass d = distance(s.g, s.line, p1, p2);
      EXPECT_EQ(d, distance(s.g, s.line, p2, p1));
      if (p1 == p2) {
        ASSERT_EQ(d.members.size(), 1u);
        EXPECT_TRUE(equal(d.members[0], identity_matrix(gf2(), 6)));
      } else {
        EXPECT_EQ(d.members.size(), 2u);
      }
      if (std::find(classes.begin(), classes.end(), d) == classes.end()) classes.push_back(d);
    }
  EXPECT_EQ(classes.size(), 2u);
}

TEST(OrientedDistance, CocycleOnEveryRealLineOverGf2) {
  const Field& f = gf2();
  int lines_checked = 0;
  for (const ArfValue& ap : class_reps(f))
    for (const ArfValue& al : class_reps(f)) {
      const Geometry g = build_geometry(f, ap, al);
      for (const ProjPoint& ell : independent_lines(g)) {
        if (!classify_cycle(g, ell).real) continue;
        const PointOrbit o = point_orbit(g, ell, f.zero());
        for (const ProjPoint& p1 : o.points)
          for (const ProjPoint& p2 : o.points) {
            const Matrix d12 = oriented_distance(g, ell, p1, p2);
            for (const ProjPoint& p3 : o.points)
              EXPECT_TRUE(equal(oriented_distance(g, ell, p1, p3), Matrix(oriented_distance(g, ell, p2, p3) * d12)));
          }
        ++lines_checked;
      }
    }
  EXPECT_GT(lines_checked, 0);
}

TEST(OrientedDistance, Preconditions) {
  const EllipticSetup s = elliptic_gf2_line();
  const Geometry& g = s.g;
  for (const ProjPoint& c : independent_lines(g)) {
    if (classify_cycle(g, c).real) continue;
    try {
      oriented_distance(g, c, s.points[0], s.points[0]);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::PreconditionViolated);
    }
    break;
  }
  try {
    oriented_distance(g, s.line, s.line, s.points[0]);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PreconditionViolated);
  }
}

TEST(OrtPlus, TransitiveOnEachNonZeroNorm) {
  for (const Field* f : {&gf2(), &gf4(), &Field::make(3)})
    for (const ArfValue& a : {ArfValue::finite(f->zero()), ArfValue::finite(f->e())}) {
      const OrtGroup group = ort_group(*f, a);
      const OrtGroup plus = ort_plus(group);
      const QuadraticForm& q = *group.plane();
      for (const Element& c : f->elements()) {
        std::set<std::uint64_t> level;
        for (const Vector& v : all_vectors(*f, 2))
          if (!is_zero_vector(v) && q_eval(q, v) == c) level.insert(vector_index(*f, v));
        if (level.empty()) continue;
        const Vector v = vector_from_index(*f, 2, *level.begin());
        std::set<std::uint64_t> orbit;
        for (const OrtElement& e : plus.elements()) orbit.insert(vector_index(*f, Vector(e.local * v)));
        // Isotropic vectors of the hyperbolic plane split into its two isotropic lines.
        if (c.is_zero())
          EXPECT_EQ(2 * orbit.size(), level.size());
        else
          EXPECT_EQ(orbit, level);
      }
    }
}
