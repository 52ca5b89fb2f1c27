#include "ucg/linalg.hpp"

namespace ucg {

Vector make_vector(const Field& f, const std::vector<std::uint32_t>& values) {
  Vector v(Eigen::Index(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v(Eigen::Index(i)) = f.element(values[i]);
  return v;
}

Matrix make_matrix(const Field& f, const std::vector<std::vector<std::uint32_t>>& rows) {
  const Eigen::Index r = Eigen::Index(rows.size());
  const Eigen::Index c = rows.empty() ? 0 : Eigen::Index(rows.front().size());
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    if (Eigen::Index(rows[i].size()) != c)
      throw Error(ErrorCode::DimMismatch, "ragged matrix rows");
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = f.element(rows[i][j]);
  }
  return m;
}

Matrix zero_matrix(const Field& f, Eigen::Index rows, Eigen::Index cols) {
  return Matrix::Constant(rows, cols, f.zero());
}

Matrix identity_matrix(const Field& f, Eigen::Index n) {
  Matrix m = zero_matrix(f, n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

Vector zero_vector(const Field& f, Eigen::Index n) { return Vector::Constant(n, f.zero()); }

Matrix bind(const Field& f, const Matrix& m) {
  Matrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = f.element(m(i, j).value());
  return out;
}

std::vector<std::uint32_t> to_values(const Vector& v) {
  std::vector<std::uint32_t> out(std::size_t(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out[std::size_t(i)] = v(i).value();
  return out;
}

std::vector<std::vector<std::uint32_t>> to_values(const Matrix& m) {
  std::vector<std::vector<std::uint32_t>> out(std::size_t(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[std::size_t(i)].push_back(m(i, j).value());
  return out;
}

Vector vector_from_index(const Field& f, Eigen::Index dim, std::uint64_t index) {
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    v(i) = Element(f, std::uint32_t(index % f.order()));
    index /= f.order();
  }
  return v;
}

std::uint64_t vector_index(const Field& f, const Vector& v) {
  std::uint64_t idx = 0;
  for (Eigen::Index i = v.size(); i-- > 0;) idx = idx * f.order() + v(i).value();
  return idx;
}

std::vector<Matrix> general_linear_group(const Field& f, Eigen::Index n) {
  const std::uint64_t q = f.order();
  std::uint64_t total = 1;
  for (Eigen::Index i = 0; i < n * n; ++i) {
    total *= q;
    if (total > (1ull << 24)) throw Error(ErrorCode::TooLarge, "GL enumeration exceeds 2^24 matrices");
  }
  std::vector<Matrix> out;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Matrix m(n, n);
    std::uint64_t rest = idx;
    for (Eigen::Index k = n * n; k-- > 0;) {
      m(k / n, k % n) = Element(f, std::uint32_t(rest % q));
      rest /= q;
    }
    if (rank(m) == n) out.push_back(std::move(m));
  }
  return out;
}

bool lex_less(const Matrix& a, const Matrix& b) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j).value() != b(i, j).value()) return a(i, j).value() < b(i, j).value();
  return false;
}

}  // namespace ucg
