#include "ucg/virtual_space.hpp"

#include <string>

namespace ucg {

VirtualSpace::VirtualSpace(QuadraticForm ambient, Subspace u) : ambient_(std::move(ambient)), u_(std::move(u)) {
  if (u_.ambient_dim() != ambient_.dim()) throw Error(ErrorCode::DimMismatch, "U lives in another space");
  if (radical(ambient_).dim() != 0)
    throw Error(ErrorCode::PreconditionViolated, "ambient quadratic form is degenerate");
  const Eigen::Index defect = u_.intersect(u_perp()).dim();
  if (defect > 1)
    throw Error(ErrorCode::PreconditionViolated,
                "dim(U cap U-perp) = " + std::to_string(defect) + " exceeds 1");
}

std::optional<Vector> VirtualSpace::omega() const {
  const Subspace s = u_.intersect(u_perp());
  if (s.dim() != 1) return std::nullopt;
  return s.basis_vector(0);
}

QuadraticForm VirtualSpace::u_form() const { return ambient_.pullback(u_.basis().transpose()); }

VirtualSpace embed_minimal(const QuadraticForm& u_form, std::optional<Element> added_norm) {
  const Field& f = u_form.field();
  const Eigen::Index d = u_form.dim();
  const Matrix k = kernel(u_form.gram());
  if (k.cols() == 0) return VirtualSpace(u_form, Subspace::whole(f, d));
  if (k.cols() > 1)
    throw Error(ErrorCode::NotEmbeddable,
                "dim(U cap U-perp) = " + std::to_string(k.cols()) + "; no non-degenerate ambient exists");

  // One new basis vector paired with the kernel vector of B|_U and orthogonal to a
  // complement of it in U.
  Eigen::Index j = 0;
  while (k(j, 0).is_zero()) ++j;
  Matrix c = zero_matrix(f, d + 1, d + 1);
  c.topLeftCorner(d, d) = u_form.coeffs();
  c(j, d) = finv(k(j, 0));
  c(d, d) = added_norm ? f.element(added_norm->value()) : f.zero();

  Matrix u_rows = zero_matrix(f, d, d + 1);
  u_rows.leftCols(d) = identity_matrix(f, d);
  return VirtualSpace(QuadraticForm(f, c), Subspace(f, d + 1, u_rows));
}

IsomGroup viso_group(const VirtualSpace& vs) {
  return enumerate_isometries(vs.ambient(), vs.u_perp().vectors());
}

RestrictionReport restriction_surjectivity(const VirtualSpace& vs) {
  const QuadraticForm uq = vs.u_form();
  if (radical(uq).dim() != 0)
    throw Error(ErrorCode::PreconditionViolated, "Q restricted to U has a non-trivial radical");

  const Field& f = uq.field();
  const Matrix ub = vs.u().basis().transpose();  // columns span U
  const IsomGroup big = viso_group(vs);
  std::vector<Matrix> restricted;
  for (const Matrix& g : big.elements()) {
    Matrix r = zero_matrix(f, uq.dim(), uq.dim());
    for (Eigen::Index i = 0; i < uq.dim(); ++i) {
      const auto coords = solve(ub, Vector(g * ub.col(i)));
      if (!coords) throw Error(ErrorCode::ContractViolation, "isometry of (V, U) does not preserve U");
      r.col(i) = *coords;
    }
    restricted.push_back(bind(f, r));
  }
  const IsomGroup image(std::move(restricted));
  const IsomGroup target = enumerate_isometries(uq);

  RestrictionReport rep;
  rep.group_order = big.order();
  rep.target_order = target.order();
  rep.surjective = image.order() == target.order();
  for (const Matrix& m : image.elements()) rep.surjective = rep.surjective && target.contains(m);
  rep.kernel_order = big.order() / image.order();
  return rep;
}

GroupFingerprint fingerprint(const IsomGroup& g) {
  GroupFingerprint fp;
  fp.order = g.order();
  for (const Matrix& m : g.elements()) ++fp.element_orders[element_order(m)];
  return fp;
}

}  // namespace ucg
