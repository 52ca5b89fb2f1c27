#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ucg/field.hpp"
#include "ucg/linalg.hpp"

namespace ucg {

/// Quadratic form Q(v) = sum_{i<=j} c_ij v_i v_j, stored as the upper-triangular matrix c.
///
/// The symmetric Gram matrix of the polar form B has zero diagonal in characteristic 2
/// and so cannot recover Q; the triangular matrix does, and doubles as a (non-symmetric)
/// bilinear form A with Q(v) = A(v, v).
class QuadraticForm {
 public:
  QuadraticForm(const Field& field, const Matrix& coeffs);

  static QuadraticForm from_values(const Field& field,
                                   const std::vector<std::vector<std::uint32_t>>& rows);
  /// x1 x2
  static QuadraticForm hyperbolic_plane(const Field& field);
  /// x1^2 + x1 x2 + a x2^2
  static QuadraticForm plane(const Field& field, const Element& a);
  /// x1^2 + x1 x2 + e x2^2 with e the least trace-1 element.
  static QuadraticForm elliptic_plane(const Field& field) { return plane(field, field.e()); }

  const Field& field() const { return *field_; }
  Eigen::Index dim() const { return coeffs_.rows(); }
  const Matrix& coeffs() const { return coeffs_; }
  /// Gram matrix of B(u, v) = Q(u + v) + Q(u) + Q(v).
  Matrix gram() const { return Matrix(coeffs_ + coeffs_.transpose()); }

  /// Form v -> Q(t v); `t` may be rectangular (dim x k) to restrict to its column span.
  QuadraticForm pullback(const Matrix& t) const;

  friend bool operator==(const QuadraticForm& a, const QuadraticForm& b) {
    return a.field_ == b.field_ && equal(a.coeffs_, b.coeffs_);
  }

 private:
  const Field* field_;
  Matrix coeffs_;
};

/// Upper-triangular matrix representing the same quadratic form as the square matrix m.
Matrix upper_fold(const Matrix& m);

QuadraticForm direct_sum(const QuadraticForm& a, const QuadraticForm& b);

Element q_eval(const QuadraticForm& form, const Vector& v);
Element b_eval(const QuadraticForm& form, const Vector& u, const Vector& v);

/// Linear subspace, stored as a basis in reduced row echelon form (one vector per row).
class Subspace {
 public:
  /// Span of the rows of `spanning`; the rows need not be independent.
  Subspace(const Field& field, Eigen::Index ambient_dim, const Matrix& spanning);
  static Subspace zero(const Field& field, Eigen::Index ambient_dim);
  static Subspace whole(const Field& field, Eigen::Index ambient_dim);
  /// Span of the given column vectors.
  static Subspace span(const Field& field, Eigen::Index ambient_dim, const std::vector<Vector>& vs);

  Eigen::Index dim() const { return basis_.rows(); }
  Eigen::Index ambient_dim() const { return ambient_dim_; }
  const Matrix& basis() const { return basis_; }
  Vector basis_vector(Eigen::Index i) const { return basis_.row(i).transpose(); }
  std::vector<Vector> vectors() const;
  bool contains(const Vector& v) const;
  Subspace intersect(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_dim_ == b.ambient_dim_ && equal(a.basis_, b.basis_);
  }

 private:
  const Field* field_;
  Eigen::Index ambient_dim_;
  Matrix basis_;
};

/// {v : B(v, u) = 0 for all u in s}.
Subspace orthogonal_complement(const QuadraticForm& form, const Subspace& s);

/// {v : Q(v + u) = Q(u) for all u}: kernel of B intersected with the zero set of Q.
Subspace radical(const QuadraticForm& form);

struct SymplecticPair {
  Vector e;
  Vector f;
};

/// Pairs (e_i, f_i) with B(e_i, f_i) = 1 and every other pairing 0.
/// Throws DegenerateBilinear when B is degenerate.
std::vector<SymplecticPair> symplectic_basis(const QuadraticForm& form);

ArfValue arf_invariant(const QuadraticForm& form);

/// Finite isometry group, elements sorted row-major lexicographically.
class IsomGroup {
 public:
  IsomGroup() = default;
  explicit IsomGroup(std::vector<Matrix> elements);

  std::size_t order() const { return elements_.size(); }
  const std::vector<Matrix>& elements() const { return elements_; }
  const Matrix& operator[](std::size_t i) const { return elements_[i]; }
  std::optional<std::size_t> index_of(const Matrix& m) const;
  bool contains(const Matrix& m) const { return index_of(m).has_value(); }

  /// Verifies identity, closure under product and inverses by direct multiplication.
  bool is_group() const;
  /// table[i][j] = index of elements[i] * elements[j].
  std::vector<std::vector<std::size_t>> multiplication_table() const;
  std::size_t inverse_index(std::size_t i) const;

 private:
  std::vector<Matrix> elements_;
};

/// Multiplicative order of an invertible matrix.
std::size_t element_order(const Matrix& m);

/// Enumeration guard: field degree times dimension.
inline constexpr unsigned kMaxEnumerationBits = 12;

/// Visits every linear map t with Q_dst(t x) = Q_src(x) and t(fixed_src[i]) = fixed_dst[i].
/// The visitor returns false to stop. Throws TooLarge past the enumeration guard.
void for_each_isometry(const QuadraticForm& src, const QuadraticForm& dst,
                       const std::vector<Vector>& fixed_src, const std::vector<Vector>& fixed_dst,
                       const std::function<bool(const Matrix&)>& visit);

/// All isometries of `form` fixing each vector of `fixed` exactly.
IsomGroup enumerate_isometries(const QuadraticForm& form, const std::vector<Vector>& fixed = {});

/// A matrix t with Q2(t v) = Q1(v) for all v, if the two spaces are isometric.
std::optional<Matrix> spaces_isomorphic(const QuadraticForm& f1, const QuadraticForm& f2);

/// Full-space isometry extending domain[i] -> images[i].
Matrix witt_extend(const QuadraticForm& form, const std::vector<Vector>& domain,
                   const std::vector<Vector>& images);

}  // namespace ucg
