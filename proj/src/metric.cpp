#include "ucg/metric.hpp"

#include <algorithm>
#include <set>

namespace ucg {

namespace {

Matrix columns(const Field& f, const std::vector<Vector>& vs) {
  Matrix m = zero_matrix(f, vs.front().size(), static_cast<Eigen::Index>(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = vs[i];
  return m;
}

Matrix inverse_or_throw(const Matrix& m) {
  auto inv = invert(m);
  if (!inv) throw Error(ErrorCode::Internal, "basis change is singular");
  return *inv;
}

void require_independent_line(const Geometry& g, const ProjPoint& ell) {
  if (ell.dim() != g.form().dim()) throw Error(ErrorCode::DimMismatch, "line vector length");
  const CycleFlags fl = classify_cycle(g, ell);
  if (!fl.hypercycle || !fl.line) throw Error(ErrorCode::PreconditionViolated, "not a line of the geometry");
  if (!fl.independent) throw Error(ErrorCode::NotIndependent, "line depends on Omega, P, L");
}

OrtGroup degenerate_line_group(const Geometry& g, const std::vector<Vector>& v0, const Matrix& ker) {
  const Field& f = g.field();
  const Vector k1 = ker.col(0);
  const Vector k2 = ker.col(1);
  const bool z1 = g.q(k1).is_zero();
  const bool z2 = g.q(k2).is_zero();
  if (z1 && z2) throw Error(ErrorCode::ContractViolation, "Q vanishes on the kernel of B restricted to V0");
  const Vector e1 = z1 ? k2 : k1;
  const Vector e2 = (z1 || z2) ? Vector(k1 + k2) : k2;
  const Element q1 = g.q(e1);
  const Element q2 = g.q(e2);

  // Dual vectors: B(e_i, e^j) = delta_ij, then make e^1 and e^2 orthogonal.
  Matrix sys = zero_matrix(f, 2, g.form().dim());
  const Matrix gram = g.form().gram();
  sys.row(0) = (e1.transpose() * gram);
  sys.row(1) = (e2.transpose() * gram);
  const auto d1 = solve(sys, make_vector(f, {1, 0}));
  const auto d2 = solve(sys, make_vector(f, {0, 1}));
  if (!d1 || !d2) throw Error(ErrorCode::Internal, "no dual vectors for the kernel");
  const Vector u1 = *d1;
  const Vector u2 = Vector(*d2 + g.b(*d1, *d2) * e1);

  std::vector<Vector> basis = v0;
  basis.push_back(u1);
  basis.push_back(u2);
  const Matrix c_inv = inverse_or_throw(columns(f, basis));

  std::vector<OrtElement> elements;
  for (const Element& a1 : f.elements()) {
    const Element beta = fsqrt((a1 * a1 * q1 + a1) / q2);
    for (int eps = 0; eps < 2; ++eps) {
      const Element a2 = (f.element(static_cast<std::uint32_t>(eps)) + a1 * q1) / q2;
      std::vector<Vector> images = v0;
      images.push_back(Vector(u1 + a1 * e1 + beta * e2));
      images.push_back(Vector(u2 + a2 * e2 + beta * e1));
      OrtElement el;
      el.alpha1 = a1;
      el.epsilon = eps;
      el.ambient = bind(f, Matrix(columns(f, images) * c_inv));
      elements.push_back(std::move(el));
    }
  }
  return OrtGroup(OrtGroup::Kind::DegeneratePair, ArfValue::infinity(), f, std::nullopt, std::move(elements));
}

}  // namespace

OrtGroup ort_group(const Field& f, const ArfValue& alpha) {
  if (alpha.infinite) {
    std::vector<OrtElement> elements;
    for (const Element& a1 : f.elements())
      for (int eps = 0; eps < 2; ++eps) {
        OrtElement el;
        el.alpha1 = a1;
        el.epsilon = eps;
        elements.push_back(std::move(el));
      }
    return OrtGroup(OrtGroup::Kind::DegeneratePair, alpha, f, std::nullopt, std::move(elements));
  }
  const ArfValue a = ArfValue::finite(f.element(alpha.value.value()));
  const QuadraticForm plane = arf_normalize(a) == ArfClass::Zero ? QuadraticForm::hyperbolic_plane(f)
                                                                     : QuadraticForm::elliptic_plane(f);
  std::vector<OrtElement> elements;
  const IsomGroup iso = enumerate_isometries(plane);
  for (const Matrix& m : iso.elements()) {
    OrtElement el;
    el.local = m;
    el.alpha1 = f.zero();
    elements.push_back(std::move(el));
  }
  return OrtGroup(OrtGroup::Kind::Orthogonal, a, f, plane, std::move(elements));
}

Element lambda_of(const QuadraticForm& plane, const Matrix& m) {
  const Field& f = plane.field();
  const Matrix& a = plane.coeffs();
  const Matrix b = plane.gram();
  const Matrix lhs = bind(f, Matrix(m.transpose() * a * m + a));
  if (m.rows() != a.rows() || m.cols() != a.cols())
    throw Error(ErrorCode::DimMismatch, "matrix does not act on the plane");

  std::optional<Element> lambda;
  for (Eigen::Index i = 0; i < b.rows() && !lambda; ++i)
    for (Eigen::Index j = 0; j < b.cols() && !lambda; ++j)
      if (!b(i, j).is_zero()) lambda = lhs(i, j) / b(i, j);
  if (!lambda) throw Error(ErrorCode::ContractViolation, "bilinear form is zero");
  for (Eigen::Index i = 0; i < b.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      if (lhs(i, j) != *lambda * b(i, j))
        throw Error(ErrorCode::ContractViolation, "M^T A M + A is not a multiple of B");
  if (!(lambda->is_zero() || *lambda == f.one()))
    throw Error(ErrorCode::ContractViolation, "lambda_M outside {0, 1}");
  return *lambda;
}

OrtGroup ort_plus(const OrtGroup& group) {
  std::vector<OrtElement> kept;
  for (const OrtElement& el : group.elements()) {
    const bool keep = group.kind() == OrtGroup::Kind::DegeneratePair ? el.epsilon == 0
                                                                      : lambda_of(*group.plane(), el.local).is_zero();
    if (keep) kept.push_back(el);
  }
  return OrtGroup(group.kind(), group.alpha(), group.field(), group.plane(), std::move(kept));
}

OrtGroup line_group(const Geometry& g, const ProjPoint& ell) {
  require_independent_line(g, ell);
  const Field& f = g.field();
  const std::vector<Vector> v0 = {g.omega().rep(), g.p().rep(), g.l().rep(), ell.rep()};
  const Matrix c0 = columns(f, v0);
  const Matrix restricted = bind(f, Matrix(c0.transpose() * g.form().gram() * c0));
  const Matrix ker = kernel(restricted);

  if (ker.cols() == 2) return degenerate_line_group(g, v0, bind(f, Matrix(c0 * ker)));
  if (ker.cols() != 0)
    throw Error(ErrorCode::ContractViolation,
                "kernel of B on <Omega, P, L, ell> has dimension " + std::to_string(ker.cols()));

  const Subspace perp = orthogonal_complement(g.form(), Subspace::span(f, g.form().dim(), v0));
  const Matrix w = perp.basis().transpose();
  const QuadraticForm plane = g.form().pullback(w);

  std::vector<Vector> basis = v0;
  basis.push_back(w.col(0));
  basis.push_back(w.col(1));
  const Matrix c = columns(f, basis);
  const Matrix c_inv = inverse_or_throw(c);

  std::vector<OrtElement> elements;
  const IsomGroup iso = enumerate_isometries(plane);
  for (const Matrix& m : iso.elements()) {
    Matrix block = identity_matrix(f, 6);
    block.bottomRightCorner(2, 2) = m;
    OrtElement el;
    el.local = m;
    el.alpha1 = f.zero();
    el.ambient = bind(f, Matrix(c * block * c_inv));
    elements.push_back(std::move(el));
  }
  return OrtGroup(OrtGroup::Kind::Orthogonal, arf_invariant(plane), f, plane, std::move(elements));
}

ArfValue translation_invariant(const Geometry& g, const ProjPoint& ell) {
  require_independent_line(g, ell);
  const Vector& om = g.omega().rep();
  const Vector& p = g.p().rep();
  const Vector& l = g.l().rep();
  const Element bpl = g.b(p, ell.rep());
  if (bpl.is_zero()) throw Error(ErrorCode::IdealLine, "line is ideal");
  const Vector ln = Vector(ell.rep() * finv(bpl));

  const Element b_om_l = g.b(om, ln);
  const Element b_om_p = g.b(om, p);
  const Element b_om_L = g.b(om, l);
  const ArfValue arf_l = arf_of(g, l);
  if (b_om_l.is_zero()) return arf_l;

  // Projection route.
  const Vector om2 = Vector(om + b_om_l * p + b_om_p * ln);
  const Element b2 = g.b(om2, l);
  const ArfValue projected =
      b2.is_zero() ? ArfValue::infinity() : ArfValue::finite(g.q(l) * g.q(om2) / (b2 * b2));

  // Closed form.
  ArfValue closed = ArfValue::infinity();
  if (!b_om_L.is_zero()) {
    const ArfValue arf_p = arf_of(g, p);
    const Element ql = g.q(l);
    const Element qp = g.q(p);
    const Element denom = b_om_L * b_om_L;
    Element value;
    if (b_om_p.is_zero()) {
      value = arf_l.value + ql * qp * b_om_l * b_om_l / denom;
    } else if (!qp.is_zero() && !arf_l.value.is_zero()) {
      value = arf_l.value + (arf_l.value / arf_p.value) * harf(qp / b_om_p * b_om_l).image;
    } else {
      value = ql * (g.q(om) + b_om_p * b_om_l + qp * b_om_l * b_om_l) / denom;
    }
    closed = ArfValue::finite(value);
  }
  if (!(closed == projected))
    throw Error(ErrorCode::ContractViolation, "translation invariant: closed form disagrees with projection");
  return projected;
}

PointOrbit point_orbit(const Geometry& g, const ProjPoint& c, const std::optional<Element>& ratio) {
  if (c.dim() != g.form().dim()) throw Error(ErrorCode::DimMismatch, "cycle vector length");
  const Vector& om = g.omega().rep();
  const Vector& l = g.l().rep();
  const Matrix base = columns(g.field(), {om, g.p().rep(), l, c.rep()});
  const Eigen::Index base_rank = rank(base);

  PointOrbit out;
  if (ratio) {
    for (const ProjPoint& pt : quadric_points(g)) {
      const Vector& v = pt.rep();
      const CycleFlags fl = classify_cycle(g, pt);
      if (!fl.point || fl.line || !incident(g, pt, c)) continue;
      Matrix ext(base.rows(), base.cols() + 1);
      ext << base, v;
      if (rank(ext) != base_rank + 1) continue;
      if (g.b(om, v) / g.b(l, v) != *ratio) continue;
      out.points.push_back(pt);
    }
  }
  if (out.points.empty()) return out;

  const IsomGroup group = enumerate_isometries(g.form(), {om, g.p().rep(), l, c.rep()});
  std::set<ProjPoint> seen;
  for (const ProjPoint& pt : out.points) {
    if (seen.count(pt)) continue;
    ++out.orbit_count;
    for (const Matrix& m : group.elements()) seen.insert(ProjPoint(Vector(m * pt.rep())));
  }
  return out;
}

namespace {

void require_real_point_on(const Geometry& g, const ProjPoint& ell, const ProjPoint& p) {
  if (p.dim() != g.form().dim()) throw Error(ErrorCode::DimMismatch, "point vector length");
  const CycleFlags fl = classify_cycle(g, p);
  if (!fl.hypercycle || !fl.point || fl.line || !fl.real || !incident(g, p, ell))
    throw Error(ErrorCode::PreconditionViolated, "expected a real non-ideal point on the line");
}

}  // namespace

Matrix oriented_distance(const Geometry& g, const ProjPoint& ell, const ProjPoint& p1, const ProjPoint& p2) {
  require_independent_line(g, ell);
  const CycleFlags fl = classify_cycle(g, ell);
  if (fl.point || !fl.real) throw Error(ErrorCode::PreconditionViolated, "expected a real non-ideal line");
  require_real_point_on(g, ell, p1);
  require_real_point_on(g, ell, p2);

  const OrtGroup plus = ort_plus(line_group(g, ell));
  std::optional<Matrix> found;
  for (const OrtElement& el : plus.elements()) {
    if (!(ProjPoint(Vector(el.ambient * p1.rep())) == p2)) continue;
    if (found) throw Error(ErrorCode::AmbiguousDistance, "several elements of Ort+ carry p1 to p2");
    found = el.ambient;
  }
  if (!found) throw Error(ErrorCode::NotConnected, "no element of Ort+ carries p1 to p2");
  return *found;
}

DistanceClass distance(const Geometry& g, const ProjPoint& ell, const ProjPoint& p1, const ProjPoint& p2) {
  const Matrix gamma = oriented_distance(g, ell, p1, p2);
  const Matrix inv = bind(g.field(), inverse_or_throw(gamma));
  DistanceClass out;
  out.members.push_back(gamma);
  if (!equal(gamma, inv)) out.members.push_back(inv);
  std::sort(out.members.begin(), out.members.end(), [](const Matrix& a, const Matrix& b) { return lex_less(a, b); });
  return out;
}

}  // namespace ucg
