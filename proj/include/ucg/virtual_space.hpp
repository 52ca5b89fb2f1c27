#pragma once

#include <cstddef>
#include <map>

#include "ucg/quadratic_form.hpp"

namespace ucg {

/// Subspace U of a non-degenerate quadratic space (V, Q); isometries fix U-perp pointwise.
class VirtualSpace {
 public:
  /// Throws PreconditionViolated unless Rad Q = 0 and dim(U cap U-perp) <= 1.
  VirtualSpace(QuadraticForm ambient, Subspace u);

  const QuadraticForm& ambient() const { return ambient_; }
  const Subspace& u() const { return u_; }
  Subspace u_perp() const { return orthogonal_complement(ambient_, u_); }
  /// Generator of U cap U-perp when it is a line (then U = omega-perp).
  std::optional<Vector> omega() const;
  /// Q restricted to U, in the coordinates of the stored U basis.
  QuadraticForm u_form() const;

 private:
  QuadraticForm ambient_;
  Subspace u_;
};

/// Non-degenerate ambient of dimension dim U + dim(U cap U-perp) whose first dim U
/// coordinates carry `u_form`. `added_norm` is Q of the extra basis vector, if one is needed.
VirtualSpace embed_minimal(const QuadraticForm& u_form, std::optional<Element> added_norm = std::nullopt);

/// Ambient isometries fixing U-perp pointwise.
IsomGroup viso_group(const VirtualSpace& vs);

struct RestrictionReport {
  bool surjective = false;
  std::size_t kernel_order = 0;
  std::size_t group_order = 0;   ///< |Iso(V, U)|
  std::size_t target_order = 0;  ///< |Iso(U)|
};

/// Compares the image of Iso(V, U) -> Iso(U) against an independent enumeration of Iso(U).
RestrictionReport restriction_surjectivity(const VirtualSpace& vs);

/// Order plus element-order histogram; equal for isomorphic groups.
struct GroupFingerprint {
  std::size_t order = 0;
  std::map<std::size_t, std::size_t> element_orders;
  friend bool operator==(const GroupFingerprint&, const GroupFingerprint&) = default;
};

GroupFingerprint fingerprint(const IsomGroup& g);

}  // namespace ucg
