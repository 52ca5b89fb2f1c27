#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ucg/quadratic_form.hpp"

namespace ucg {

/// Nonzero vector up to scalar, normalized so the first nonzero coordinate is 1.
class ProjPoint {
 public:
  explicit ProjPoint(const Vector& v);

  const Vector& rep() const { return rep_; }
  Eigen::Index dim() const { return rep_.size(); }

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return equal(a.rep_, b.rep_); }
  friend bool operator<(const ProjPoint& a, const ProjPoint& b) { return lex_less(a.rep_, b.rep_); }

 private:
  Vector rep_;
};

/// All points of P(K^dim), sorted. Throws TooLarge when q^dim exceeds 2^24.
std::vector<ProjPoint> projective_points(const Field& field, Eigen::Index dim);

/// Two-dimensional conformal geometry (V, Q, Omega, P, L) with dim V = 6.
///
/// Construction does not enforce the geometry axioms so that invalid inputs can be
/// loaded and inspected; `valid()` and `violations()` cache the outcome of validation.
class Geometry {
 public:
  Geometry(QuadraticForm form, const Vector& omega, const Vector& p, const Vector& l);

  const QuadraticForm& form() const { return form_; }
  const Field& field() const { return form_.field(); }
  const ProjPoint& omega() const { return omega_; }
  const ProjPoint& p() const { return p_; }
  const ProjPoint& l() const { return l_; }

  Element q(const Vector& v) const { return q_eval(form_, v); }
  Element b(const Vector& u, const Vector& v) const { return b_eval(form_, u, v); }

  bool valid() const { return violations_.empty(); }
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  QuadraticForm form_;
  ProjPoint omega_;
  ProjPoint p_;
  ProjPoint l_;
  std::vector<std::string> violations_;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Re-derives every geometry axiom from scratch.
ValidationReport validate_geometry(const Geometry& g);

/// Geometry with Arf<Omega,P> = arf_p and Arf<Omega,L> = arf_l exactly, embedded in a
/// six-dimensional space whose Arf class is that of arf_v (class 0 by default).
Geometry build_geometry(const Field& field, const ArfValue& arf_p, const ArfValue& arf_l,
                        const std::optional<ArfValue>& arf_v = std::nullopt);

struct CycleFlags {
  bool hypercycle = false;
  bool point = false;
  bool line = false;
  bool ideal = false;
  bool real = false;
  bool independent = false;
};

CycleFlags classify_cycle(const Geometry& g, const ProjPoint& c);

inline bool incident(const Geometry& g, const ProjPoint& c1, const ProjPoint& c2) {
  return g.b(c1.rep(), c2.rep()).is_zero();
}

/// Arf<Omega, x> = Q(x) Q(Omega) / B(x, Omega)^2, infinity when B(x, Omega) = 0.
ArfValue arf_of(const Geometry& g, const Vector& x);
inline ArfValue arf_of(const Geometry& g, const ProjPoint& x) { return arf_of(g, x.rep()); }

enum class GeometryName {
  Elliptic,
  Parabolic,
  Hyperbolic,
  DualParabolic,
  LaguerreGalilei,
  DualMinkowski,
  DualHyperbolic,
  Minkowski,
  AntiDeSitter,
};

std::string_view to_string(GeometryName name);
/// Cell of the 3x3 table with Arf(P) rows and Arf(L) columns.
GeometryName table_cell(ArfClass arf_p, ArfClass arf_l);

struct GeometryClass {
  GeometryName name;
  ArfClass arf_p;
  ArfClass arf_l;
};

GeometryClass classify_geometry(const Geometry& g);

struct OmegaReplacement {
  Geometry geometry;
  ArfValue predicted_arf_l;
  ArfValue predicted_arf_p;
};

/// Replaces Omega by Omega + alpha P + beta L and predicts the new Arf(L), Arf(P)
/// from the closed-form transformation rule.
OmegaReplacement replace_omega(const Geometry& g, const Element& alpha, const Element& beta);

struct TransformationClass {
  enum class Kind { ExactPair, Ratio, LClass };
  Kind kind;
  ArfValue arf_p;  ///< ExactPair
  ArfValue arf_l;  ///< ExactPair
  Element rho;     ///< Ratio: Arf(L) / Arf(P)
  ArfClass l_class = ArfClass::Zero;  ///< LClass
};

TransformationClass transformation_class(const Geometry& g);

/// Columns form a basis in which Q is x1 x2 + x3 x4 + x5 x6, built from the hyperbolic
/// planes <l, P> and <p, L>; nothing when the required line/point pair does not exist.
std::optional<Matrix> normal_form(const Geometry& g);

/// The Lie quadric: canonical points with Q = 0, sorted.
std::vector<ProjPoint> quadric_points(const Geometry& g);

}  // namespace ucg
