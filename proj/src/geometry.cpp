#include "ucg/geometry.hpp"

#include <algorithm>

namespace ucg {

namespace {

Matrix stack_columns(const std::vector<Vector>& vs) {
  Matrix m(vs.front().size(), Eigen::Index(vs.size()));
  for (std::size_t j = 0; j < vs.size(); ++j) m.col(Eigen::Index(j)) = vs[j];
  return m;
}

Eigen::Index rank_of(const std::vector<Vector>& vs) { return rank(stack_columns(vs)); }

std::vector<std::string> check_axioms(const QuadraticForm& form, const Vector& omega, const Vector& p,
                                      const Vector& l) {
  std::vector<std::string> v;
  if (form.dim() != 6) v.emplace_back("form-dimension: dim V must be 6");
  if (rank(form.gram()) != form.dim()) v.emplace_back("form-degenerate: B is degenerate");
  if (!b_eval(form, p, l).is_zero()) v.emplace_back("assumption-0: B(P, L) != 0");
  if (rank_of({omega, p, l}) != 3) v.emplace_back("assumption-1: Omega, P, L are dependent");
  if (q_eval(form, p).is_zero() && b_eval(form, omega, p).is_zero())
    v.emplace_back("assumption-2: Q(P) = 0 and Arf<Omega, P> = inf");
  if (q_eval(form, l).is_zero() && b_eval(form, omega, l).is_zero())
    v.emplace_back("assumption-2: Q(L) = 0 and Arf<Omega, L> = inf");
  if (q_eval(form, omega).is_zero()) v.emplace_back("omega-isotropic: Q(Omega) = 0");
  // The polar form restricted to Omega-perp must have a kernel.
  const Subspace perp = orthogonal_complement(form, Subspace::span(form.field(), form.dim(), {omega}));
  if (perp.dim() > 0) {
    const Matrix w = perp.basis().transpose();
    if (rank(Matrix(w.transpose() * form.gram() * w)) == perp.dim())
      v.emplace_back("omega-perp: B restricted to Omega-perp is non-degenerate");
  }
  return v;
}

}  // namespace

ProjPoint::ProjPoint(const Vector& v) : rep_(v) {
  Eigen::Index i = 0;
  while (i < v.size() && v(i).is_zero()) ++i;
  if (i == v.size()) throw Error(ErrorCode::PreconditionViolated, "projective point of the zero vector");
  rep_ = v / v(i);
}

std::vector<ProjPoint> projective_points(const Field& field, Eigen::Index dim) {
  const unsigned bits = field.degree() * unsigned(dim);
  if (bits > 24) throw Error(ErrorCode::TooLarge, "projective space exceeds 2^24 vectors");
  std::vector<ProjPoint> out;
  const std::uint64_t count = std::uint64_t(1) << bits;
  for (std::uint64_t idx = 1; idx < count; ++idx) {
    const Vector v = vector_from_index(field, dim, idx);
    Eigen::Index i = 0;
    while (v(i).is_zero()) ++i;
    if (v(i).is_one()) out.emplace_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Geometry::Geometry(QuadraticForm form, const Vector& omega, const Vector& p, const Vector& l)
    : form_(std::move(form)), omega_(bind(form_.field(), omega)), p_(bind(form_.field(), p)),
      l_(bind(form_.field(), l)) {
  for (const Vector* v : {&omega, &p, &l})
    if (v->size() != form_.dim()) throw Error(ErrorCode::DimMismatch, "geometry vector length");
  violations_ = check_axioms(form_, omega_.rep(), p_.rep(), l_.rep());
}

ValidationReport validate_geometry(const Geometry& g) {
  return {check_axioms(g.form(), g.omega().rep(), g.p().rep(), g.l().rep())};
}

Geometry build_geometry(const Field& f, const ArfValue& arf_p, const ArfValue& arf_l,
                        const std::optional<ArfValue>& arf_v) {
  if (arf_v && arf_v->infinite)
    throw Error(ErrorCode::BuildFailed, "a six-dimensional non-degenerate space has a finite Arf invariant");
  const ArfClass target = arf_v ? arf_normalize(*arf_v) : ArfClass::Zero;

  // Basis Omega, P, L, f1, f2, f3 with B(e_i, f_i) = 1 pairing each generator with a
  // dual vector and Q(Omega) = 1.
  Matrix c = zero_matrix(f, 6, 6);
  c(0, 0) = f.one();
  const auto place = [&](Eigen::Index i, const ArfValue& a) {
    if (a.infinite) {
      c(i, i) = f.one();
    } else {
      c(0, i) = f.one();
      c(i, i) = f.element(a.value.value());
    }
  };
  place(1, arf_p);
  place(2, arf_l);
  for (Eigen::Index i = 0; i < 3; ++i) c(i, i + 3) = f.one();

  // Q(f1) shifts the total Arf invariant by Q(f1) Q(Omega) = Q(f1) without touching
  // <Omega, P, L> or B, so adding e flips the class.
  if (arf_normalize(arf_invariant(QuadraticForm(f, c))) != target) c(3, 3) = f.e();

  const Matrix id = identity_matrix(f, 6);
  Geometry g(QuadraticForm(f, c), id.col(0), id.col(1), id.col(2));
  if (!g.valid()) throw Error(ErrorCode::BuildFailed, g.violations().front());
  if (arf_normalize(arf_invariant(g.form())) != target)
    throw Error(ErrorCode::BuildFailed, "ambient Arf class not reached");
  return g;
}

CycleFlags classify_cycle(const Geometry& g, const ProjPoint& c) {
  CycleFlags fl;
  const Vector& v = c.rep();
  fl.hypercycle = g.q(v).is_zero();
  fl.point = g.b(g.p().rep(), v).is_zero();
  fl.line = g.b(g.l().rep(), v).is_zero();
  fl.ideal = fl.point && fl.line;
  fl.real = g.b(g.omega().rep(), v).is_zero();
  fl.independent = rank_of({g.omega().rep(), g.p().rep(), g.l().rep(), v}) == 4;
  return fl;
}

ArfValue arf_of(const Geometry& g, const Vector& x) {
  const Vector& om = g.omega().rep();
  if (x.size() != om.size()) throw Error(ErrorCode::DimMismatch, "arf_of vector length");
  if (rank_of({om, x}) != 2) throw Error(ErrorCode::NotDefined, "<Omega, x> is not two-dimensional");
  const Element b = g.b(x, om);
  if (b.is_zero()) return ArfValue::infinity();
  return ArfValue::finite(g.q(x) * g.q(om) / (b * b));
}

std::string_view to_string(GeometryName name) {
  switch (name) {
    case GeometryName::Elliptic: return "elliptic";
    case GeometryName::Parabolic: return "parabolic";
    case GeometryName::Hyperbolic: return "hyperbolic";
    case GeometryName::DualParabolic: return "dual-parabolic";
    case GeometryName::LaguerreGalilei: return "laguerre-galilei";
    case GeometryName::DualMinkowski: return "dual-minkowski";
    case GeometryName::DualHyperbolic: return "dual-hyperbolic";
    case GeometryName::Minkowski: return "minkowski";
    case GeometryName::AntiDeSitter: return "anti-de-sitter";
  }
  return "?";
}

GeometryName table_cell(ArfClass arf_p, ArfClass arf_l) {
  static constexpr GeometryName table[3][3] = {
      // Arf(L):  e                              inf                             0
      {GeometryName::Elliptic, GeometryName::Parabolic, GeometryName::Hyperbolic},               // Arf(P) = e
      {GeometryName::DualParabolic, GeometryName::LaguerreGalilei, GeometryName::DualMinkowski},  // inf
      {GeometryName::DualHyperbolic, GeometryName::Minkowski, GeometryName::AntiDeSitter},        // 0
  };
  const auto idx = [](ArfClass c) {
    switch (c) {
      case ArfClass::E: return 0;
      case ArfClass::Infinity: return 1;
      case ArfClass::Zero: return 2;
    }
    return 0;
  };
  return table[idx(arf_p)][idx(arf_l)];
}

GeometryClass classify_geometry(const Geometry& g) {
  const ArfClass p = arf_normalize(arf_of(g, g.p()));
  const ArfClass l = arf_normalize(arf_of(g, g.l()));
  return {table_cell(p, l), p, l};
}

namespace {

bool zero_or_infinite(const ArfValue& a) { return a.infinite || a.value.is_zero(); }

}  // namespace

OmegaReplacement replace_omega(const Geometry& g, const Element& alpha, const Element& beta) {
  const Vector& om = g.omega().rep();
  const Vector& p = g.p().rep();
  const Vector& l = g.l().rep();
  const Vector new_omega = om + alpha * p + beta * l;
  if (g.q(new_omega).is_zero()) throw Error(ErrorCode::DegenerateOmega, "Q(Omega + alpha P + beta L) = 0");

  const ArfValue arf_p = arf_of(g, p);
  const ArfValue arf_l = arf_of(g, l);
  ArfValue pred_l = arf_l;
  ArfValue pred_p = arf_p;
  const Element qp = g.q(p), ql = g.q(l);
  const Element bp = g.b(om, p), bl = g.b(om, l);
  if (!zero_or_infinite(arf_p) && !zero_or_infinite(arf_l)) {
    const Element hx = harf(alpha * qp / bp).image;
    const Element hy = harf(beta * ql / bl).image;
    pred_l = ArfValue::finite(arf_l.value + bp * bp * ql / (qp * bl * bl) * hx + hy);
    pred_p = ArfValue::finite(arf_p.value + bl * bl * qp / (ql * bp * bp) * hy + hx);
  } else if (!zero_or_infinite(arf_l)) {
    // Arf(P) is 0 or infinite: Arf(L) still moves with alpha through Q(Omega').
    pred_l = ArfValue::finite(arf_l.value + ql * (alpha * alpha * qp + alpha * bp) / (bl * bl) +
                              harf(beta * ql / bl).image);
  } else if (!zero_or_infinite(arf_p)) {
    pred_p = ArfValue::finite(arf_p.value + qp * (beta * beta * ql + beta * bl) / (bp * bp) +
                              harf(alpha * qp / bp).image);
  }
  return {Geometry(g.form(), new_omega, p, l), pred_l, pred_p};
}

TransformationClass transformation_class(const Geometry& g) {
  TransformationClass tc{TransformationClass::Kind::ExactPair, arf_of(g, g.p()), arf_of(g, g.l()),
                         g.field().zero(), ArfClass::Zero};
  if (zero_or_infinite(tc.arf_p) || zero_or_infinite(tc.arf_l)) return tc;
  tc.rho = tc.arf_l.value / tc.arf_p.value;
  if (tc.rho.is_one()) {
    tc.kind = TransformationClass::Kind::LClass;
    tc.l_class = arf_normalize(tc.arf_l);
  } else {
    tc.kind = TransformationClass::Kind::Ratio;
  }
  return tc;
}

namespace {

// Isotropic e and partner f with B(e, f) = 1 and Q(f) = 0, given isotropic e and any
// w with B(e, w) != 0.
std::pair<Vector, Vector> hyperbolic_pair(const Geometry& g, const Vector& e, const Vector& w) {
  const Vector f1 = w / g.b(e, w);
  return {e, f1 + g.q(f1) * e};
}

}  // namespace

std::optional<Matrix> normal_form(const Geometry& g) {
  const Field& f = g.field();
  const Vector& P = g.p().rep();
  const Vector& L = g.l().rep();
  std::vector<Vector> lines, points;
  for (const ProjPoint& c : quadric_points(g)) {
    const Vector& v = c.rep();
    const bool perp_p = g.b(v, P).is_zero();
    const bool perp_l = g.b(v, L).is_zero();
    if (perp_l && !perp_p) lines.push_back(v);
    if (perp_p && !perp_l) points.push_back(v);
  }

  for (const Vector& ell : lines) {
    for (const Vector& pt : points) {
      if (!g.b(pt, ell).is_zero()) continue;
      const auto [e1, f1] = hyperbolic_pair(g, ell, P);
      const auto [e2, f2] = hyperbolic_pair(g, pt, L);
      const Subspace rest = orthogonal_complement(g.form(), Subspace::span(f, 6, {e1, f1, e2, f2}));
      if (rest.dim() != 2) continue;
      const Vector w1 = rest.basis_vector(0), w2 = rest.basis_vector(1);
      for (const Element& a : f.elements()) {
        for (const Element& b : f.elements()) {
          const Vector u = a * w1 + b * w2;
          if (is_zero_vector(u) || !g.q(u).is_zero()) continue;
          const Vector& w = g.b(u, w1).is_zero() ? w2 : w1;
          const auto [e3, f3] = hyperbolic_pair(g, u, w);
          Matrix t(6, 6);
          t << e1, f1, e2, f2, e3, f3;
          return t;
        }
      }
      // The third plane's Arf class is fixed by the total invariant, so no other
      // pair can do better.
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::vector<ProjPoint> quadric_points(const Geometry& g) {
  std::vector<ProjPoint> out;
  for (ProjPoint& c : projective_points(g.field(), g.form().dim()))
    if (g.q(c.rep()).is_zero()) out.push_back(std::move(c));
  return out;
}

}  // namespace ucg
