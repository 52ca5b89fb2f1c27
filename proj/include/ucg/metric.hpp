#pragma once

#include <optional>
#include <vector>

#include "ucg/geometry.hpp"

namespace ucg {

/// One element of an Ort group.
struct OrtElement {
  Matrix local;       ///< 2x2 action on the invariant plane (orthogonal kind)
  Element alpha1;     ///< K+ coordinate (degenerate-pair kind)
  int epsilon = 0;    ///< F2+ coordinate (degenerate-pair kind)
  Matrix ambient;     ///< action on V when realized inside a geometry; empty otherwise
};

/// Ort(alpha): isometries of a plane with Arf invariant alpha, or K+ x F2+ for alpha = inf.
class OrtGroup {
 public:
  enum class Kind { Orthogonal, DegeneratePair };

  OrtGroup(Kind kind, ArfValue alpha, const Field& field, std::optional<QuadraticForm> plane,
           std::vector<OrtElement> elements)
      : kind_(kind), alpha_(alpha), field_(&field), plane_(std::move(plane)), elements_(std::move(elements)) {}

  Kind kind() const { return kind_; }
  const ArfValue& alpha() const { return alpha_; }
  const Field& field() const { return *field_; }
  /// The invariant plane's form (orthogonal kind only).
  const std::optional<QuadraticForm>& plane() const { return plane_; }
  const std::vector<OrtElement>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  bool realized() const { return !elements_.empty() && elements_.front().ambient.size() > 0; }

 private:
  Kind kind_;
  ArfValue alpha_;
  const Field* field_;
  std::optional<QuadraticForm> plane_;
  std::vector<OrtElement> elements_;
};

/// Ort(alpha) over `field`: enumerated on the canonical plane of alpha's class, or the
/// abstract pairs (alpha1, eps) for alpha = inf.
OrtGroup ort_group(const Field& field, const ArfValue& alpha);

/// The scalar lambda with M^T A M = A + lambda B, where A is the stored triangular
/// coefficient matrix of `plane` and B its Gram matrix. Throws ContractViolation if none.
Element lambda_of(const QuadraticForm& plane, const Matrix& m);

/// Index-2 subgroup: lambda_M = 0 (orthogonal kind) or eps = 0 (degenerate kind).
OrtGroup ort_plus(const OrtGroup& group);

/// Isometries of V fixing Omega, P, L and the independent line `ell`.
OrtGroup line_group(const Geometry& g, const ProjPoint& ell);

/// Arf<L, Omega'> where Omega' projects Omega onto <ell, P>-perp; cross-checked against
/// the closed form for the applicable case.
ArfValue translation_invariant(const Geometry& g, const ProjPoint& ell);

struct PointOrbit {
  std::vector<ProjPoint> points;
  std::size_t orbit_count = 0;  ///< orbits of the cycle group on `points`
  bool transitive() const { return orbit_count <= 1; }
};

/// Non-ideal points on cycle c, independent from Omega, P, L, c, with
/// B(Omega, p) / B(L, p) = ratio (nullopt stands for infinity), and their orbit structure
/// under the isometries fixing Omega, P, L and c.
PointOrbit point_orbit(const Geometry& g, const ProjPoint& c, const std::optional<Element>& ratio);

/// Unique element of Ort+ of the line group carrying p1 to p2.
Matrix oriented_distance(const Geometry& g, const ProjPoint& ell, const ProjPoint& p1, const ProjPoint& p2);

/// {gamma, gamma^-1}, sorted; one member when gamma is an involution or the identity.
struct DistanceClass {
  std::vector<Matrix> members;
  friend bool operator==(const DistanceClass& a, const DistanceClass& b) {
    if (a.members.size() != b.members.size()) return false;
    for (std::size_t i = 0; i < a.members.size(); ++i)
      if (!equal(a.members[i], b.members[i])) return false;
    return true;
  }
};

DistanceClass distance(const Geometry& g, const ProjPoint& ell, const ProjPoint& p1, const ProjPoint& p2);

}  // namespace ucg
