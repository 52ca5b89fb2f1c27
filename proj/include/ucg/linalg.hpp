#pragma once

// Exact linear algebra over a field scalar. Everything here is generic in the
// scalar type: it needs +, *, ==, a free `is_zero(s)` and a free `inverse(s)`
// found by argument-dependent lookup. Eigen's own decompositions pivot on
// magnitude and are unusable over finite fields.

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "ucg/field.hpp"

namespace ucg {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = MatrixX<Element>;
using Vector = VectorX<Element>;

template <typename Derived>
bool is_zero_vector(const Eigen::MatrixBase<Derived>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!is_zero(v(i))) return false;
  return true;
}

template <typename Scalar>
struct RowEchelon {
  MatrixX<Scalar> reduced;             ///< reduced row echelon form
  std::vector<Eigen::Index> pivots;    ///< pivot column of each nonzero row
  Eigen::Index rank() const { return Eigen::Index(pivots.size()); }
};

template <typename Derived>
RowEchelon<typename Derived::Scalar> row_reduce(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  RowEchelon<Scalar> out{m, {}};
  auto& a = out.reduced;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Eigen::Index p = row;
    while (p < a.rows() && is_zero(a(p, col))) ++p;
    if (p == a.rows()) continue;
    a.row(p).swap(a.row(row));
    const Scalar s = inverse(a(row, col));
    a.row(row) *= s;
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      if (r != row && !is_zero(a(r, col))) {
        const Scalar f = a(r, col);
        a.row(r) -= f * a.row(row);
      }
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& m) {
  return row_reduce(m).rank();
}

/// Basis of {x : m x = 0}, one vector per column.
template <typename Derived>
MatrixX<typename Derived::Scalar> kernel(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const auto ech = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  MatrixX<Scalar> basis(m.cols(), m.cols() - ech.rank());
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    VectorX<Scalar> v = VectorX<Scalar>::Zero(m.cols());
    v(free) = Scalar(1);
    for (Eigen::Index r = 0; r < ech.rank(); ++r) v(ech.pivots[r]) = -ech.reduced(r, free);
    basis.col(k++) = v;
  }
  return basis;
}

/// Inverse of a square matrix, or nothing when singular.
template <typename Derived>
std::optional<MatrixX<typename Derived::Scalar>> invert(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = m.rows();
  MatrixX<Scalar> aug(n, 2 * n);
  aug << m, MatrixX<Scalar>::Identity(n, n);
  auto ech = row_reduce(aug);
  if (ech.rank() < n || ech.pivots[n - 1] != n - 1) return std::nullopt;
  return MatrixX<Scalar>(ech.reduced.rightCols(n));
}

/// Some x with m x = b, or nothing when inconsistent.
template <typename DerivedM, typename DerivedB>
std::optional<VectorX<typename DerivedM::Scalar>> solve(const Eigen::MatrixBase<DerivedM>& m,
                                                        const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedM::Scalar;
  MatrixX<Scalar> aug(m.rows(), m.cols() + 1);
  aug << m, b;
  const auto ech = row_reduce(aug);
  VectorX<Scalar> x = VectorX<Scalar>::Zero(m.cols());
  for (Eigen::Index r = 0; r < ech.rank(); ++r) {
    if (ech.pivots[r] == m.cols()) return std::nullopt;
    x(ech.pivots[r]) = ech.reduced(r, m.cols());
  }
  return x;
}

/// Incrementally grown set of independent vectors, kept in echelon form.
template <typename Scalar>
class EchelonBasis {
 public:
  explicit EchelonBasis(Eigen::Index dim) : dim_(dim) {}

  Eigen::Index dim() const { return dim_; }
  Eigen::Index size() const { return Eigen::Index(rows_.size()); }

  /// Remainder of v after elimination against the stored rows; zero iff v is in the span.
  template <typename Derived>
  VectorX<Scalar> reduce(const Eigen::MatrixBase<Derived>& v) const {
    VectorX<Scalar> r = v;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Scalar c = r(pivots_[i]);
      if (!is_zero(c)) r -= c * rows_[i];
    }
    return r;
  }

  template <typename Derived>
  bool contains(const Eigen::MatrixBase<Derived>& v) const {
    return is_zero_vector(reduce(v));
  }

  /// Adds v when independent of the stored vectors; returns whether it was added.
  template <typename Derived>
  bool insert(const Eigen::MatrixBase<Derived>& v) {
    VectorX<Scalar> r = reduce(v);
    Eigen::Index p = 0;
    while (p < dim_ && is_zero(r(p))) ++p;
    if (p == dim_) return false;
    r *= inverse(r(p));
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Scalar c = rows_[i](p);
      if (!is_zero(c)) rows_[i] -= c * r;
    }
    rows_.push_back(std::move(r));
    pivots_.push_back(p);
    return true;
  }

 private:
  Eigen::Index dim_;
  std::vector<VectorX<Scalar>> rows_;
  std::vector<Eigen::Index> pivots_;
};

template <typename DA, typename DB>
bool equal(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
}

// Element-specific helpers.

Vector make_vector(const Field& f, const std::vector<std::uint32_t>& values);
Matrix make_matrix(const Field& f, const std::vector<std::vector<std::uint32_t>>& rows);
Matrix zero_matrix(const Field& f, Eigen::Index rows, Eigen::Index cols);
Matrix identity_matrix(const Field& f, Eigen::Index n);
Vector zero_vector(const Field& f, Eigen::Index n);
/// Binds any unbound constants in `m` to `f`.
Matrix bind(const Field& f, const Matrix& m);
std::vector<std::uint32_t> to_values(const Vector& v);
std::vector<std::vector<std::uint32_t>> to_values(const Matrix& m);

/// Vector with coordinates given by the base-q digits of `index` (coordinate 0 least significant).
Vector vector_from_index(const Field& f, Eigen::Index dim, std::uint64_t index);
std::uint64_t vector_index(const Field& f, const Vector& v);

/// Every invertible n x n matrix over f, in increasing row-major digit order.
std::vector<Matrix> general_linear_group(const Field& f, Eigen::Index n);

/// Row-major lexicographic comparison on coordinate values.
bool lex_less(const Matrix& a, const Matrix& b);

}  // namespace ucg
