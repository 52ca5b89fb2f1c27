#include "ucg/quadratic_form.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace ucg {

namespace {

Element dot(const Vector& u, const Vector& v) {
  Element s;
  for (Eigen::Index i = 0; i < u.size(); ++i) s += u(i) * v(i);
  return s;
}

void require_dim(const QuadraticForm& form, const Vector& v) {
  if (v.size() != form.dim())
    throw Error(ErrorCode::DimMismatch, "vector of length " + std::to_string(v.size()) +
                                            " for a form of dimension " + std::to_string(form.dim()));
}

Vector unit(const Field& f, Eigen::Index dim, Eigen::Index i) {
  Vector v = zero_vector(f, dim);
  v(i) = f.one();
  return v;
}

Matrix columns(const Field& f, Eigen::Index dim, const std::vector<Vector>& vs) {
  Matrix m = zero_matrix(f, dim, Eigen::Index(vs.size()));
  for (std::size_t j = 0; j < vs.size(); ++j) m.col(Eigen::Index(j)) = vs[j];
  return m;
}

}  // namespace

QuadraticForm::QuadraticForm(const Field& field, const Matrix& coeffs)
    : field_(&field), coeffs_(bind(field, coeffs)) {
  if (coeffs_.rows() != coeffs_.cols())
    throw Error(ErrorCode::DimMismatch, "coefficient matrix must be square");
  for (Eigen::Index i = 0; i < dim(); ++i)
    for (Eigen::Index j = 0; j < i; ++j)
      if (!coeffs_(i, j).is_zero())
        throw Error(ErrorCode::InvalidInput, "coefficient matrix must be upper triangular");
}

QuadraticForm QuadraticForm::from_values(const Field& field,
                                         const std::vector<std::vector<std::uint32_t>>& rows) {
  return QuadraticForm(field, make_matrix(field, rows));
}

QuadraticForm QuadraticForm::hyperbolic_plane(const Field& field) {
  return from_values(field, {{0, 1}, {0, 0}});
}

QuadraticForm QuadraticForm::plane(const Field& field, const Element& a) {
  return from_values(field, {{1, 1}, {0, a.value()}});
}

QuadraticForm QuadraticForm::pullback(const Matrix& t) const {
  if (t.rows() != dim()) throw Error(ErrorCode::DimMismatch, "pullback matrix has wrong row count");
  return QuadraticForm(*field_, upper_fold(Matrix(t.transpose() * coeffs_ * t)));
}

Matrix upper_fold(const Matrix& m) {
  Matrix out = m;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < i; ++j) {
      out(j, i) += m(i, j);
      out(i, j) = Element(0);
    }
  return out;
}

QuadraticForm direct_sum(const QuadraticForm& a, const QuadraticForm& b) {
  if (&a.field() != &b.field()) throw Error(ErrorCode::FieldMismatch, "direct sum across fields");
  Matrix c = zero_matrix(a.field(), a.dim() + b.dim(), a.dim() + b.dim());
  c.topLeftCorner(a.dim(), a.dim()) = a.coeffs();
  c.bottomRightCorner(b.dim(), b.dim()) = b.coeffs();
  return QuadraticForm(a.field(), c);
}

Element q_eval(const QuadraticForm& form, const Vector& v) {
  require_dim(form, v);
  const Matrix& c = form.coeffs();
  Element s = form.field().zero();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i).is_zero()) continue;
    Element row;
    for (Eigen::Index j = i; j < v.size(); ++j) row += c(i, j) * v(j);
    s += v(i) * row;
  }
  return s;
}

Element b_eval(const QuadraticForm& form, const Vector& u, const Vector& v) {
  require_dim(form, u);
  require_dim(form, v);
  return form.field().zero() + dot(u, form.gram() * v);
}

Subspace::Subspace(const Field& field, Eigen::Index ambient_dim, const Matrix& spanning)
    : field_(&field), ambient_dim_(ambient_dim) {
  if (spanning.rows() == 0) {
    basis_ = zero_matrix(field, 0, ambient_dim);
    return;
  }
  if (spanning.cols() != ambient_dim) throw Error(ErrorCode::DimMismatch, "subspace spanning set");
  const auto ech = row_reduce(bind(field, spanning));
  basis_ = ech.reduced.topRows(ech.rank());
}

Subspace Subspace::zero(const Field& field, Eigen::Index ambient_dim) {
  return Subspace(field, ambient_dim, zero_matrix(field, 0, ambient_dim));
}

Subspace Subspace::whole(const Field& field, Eigen::Index ambient_dim) {
  return Subspace(field, ambient_dim, identity_matrix(field, ambient_dim));
}

Subspace Subspace::span(const Field& field, Eigen::Index ambient_dim, const std::vector<Vector>& vs) {
  return Subspace(field, ambient_dim, columns(field, ambient_dim, vs).transpose());
}

std::vector<Vector> Subspace::vectors() const {
  std::vector<Vector> out;
  for (Eigen::Index i = 0; i < dim(); ++i) out.push_back(basis_vector(i));
  return out;
}

bool Subspace::contains(const Vector& v) const {
  if (v.size() != ambient_dim_) throw Error(ErrorCode::DimMismatch, "subspace membership");
  if (dim() == 0) return is_zero_vector(v);
  Matrix stacked(dim() + 1, ambient_dim_);
  stacked << basis_, v.transpose();
  return rank(stacked) == dim();
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (dim() == 0 || other.dim() == 0) return zero(*field_, ambient_dim_);
  Matrix joint(ambient_dim_, dim() + other.dim());
  joint << basis_.transpose(), other.basis_.transpose();
  const Matrix coeffs = kernel(joint);
  if (coeffs.cols() == 0) return zero(*field_, ambient_dim_);
  const Matrix vs = basis_.transpose() * coeffs.topRows(dim());
  return Subspace(*field_, ambient_dim_, vs.transpose());
}

Subspace orthogonal_complement(const QuadraticForm& form, const Subspace& s) {
  if (s.dim() == 0) return Subspace::whole(form.field(), form.dim());
  const Matrix k = kernel(Matrix(s.basis() * form.gram()));
  if (k.cols() == 0) return Subspace::zero(form.field(), form.dim());
  return Subspace(form.field(), form.dim(), k.transpose());
}

Subspace radical(const QuadraticForm& form) {
  const Field& f = form.field();
  const Matrix k = kernel(form.gram());
  if (k.cols() == 0) return Subspace::zero(f, form.dim());
  // B vanishes on ker B, so there Q(sum c_i k_i) = (sum c_i sqrt(Q(k_i)))^2 and the
  // zero set is the kernel of one linear functional.
  Matrix roots(1, k.cols());
  for (Eigen::Index i = 0; i < k.cols(); ++i) roots(0, i) = fsqrt(q_eval(form, k.col(i)));
  const Matrix c = kernel(roots);
  if (c.cols() == 0) return Subspace::zero(f, form.dim());
  return Subspace(f, form.dim(), Matrix(k * c).transpose());
}

std::vector<SymplecticPair> symplectic_basis(const QuadraticForm& form) {
  const Field& f = form.field();
  const Matrix g = form.gram();
  if (rank(g) != form.dim()) throw Error(ErrorCode::DegenerateBilinear, "polar form is degenerate");

  std::vector<Vector> remaining;
  for (Eigen::Index i = 0; i < form.dim(); ++i) remaining.push_back(unit(f, form.dim(), i));

  const auto b = [&](const Vector& u, const Vector& v) { return f.zero() + dot(u, g * v); };
  std::vector<SymplecticPair> pairs;
  while (!remaining.empty()) {
    const Vector e = remaining.front();
    std::size_t k = 1;
    while (k < remaining.size() && b(e, remaining[k]).is_zero()) ++k;
    if (k == remaining.size())
      throw Error(ErrorCode::Internal, "no symplectic partner on a non-degenerate subspace");
    const Vector fv = remaining[k] / b(e, remaining[k]);

    std::vector<Vector> next;
    for (std::size_t i = 1; i < remaining.size(); ++i) {
      if (i == k) continue;
      const Vector& w = remaining[i];
      next.push_back(w + b(w, fv) * e + b(w, e) * fv);
    }
    pairs.push_back({e, fv});
    remaining = std::move(next);
  }
  return pairs;
}

ArfValue arf_invariant(const QuadraticForm& form) {
  const Field& f = form.field();
  if (form.dim() == 2 && form.gram()(0, 1).is_zero()) return ArfValue::infinity();
  if (radical(form).dim() != 0) throw Error(ErrorCode::DegenerateForm, "quadratic form has a radical");
  Element sum = f.zero();
  for (const auto& [e, fv] : symplectic_basis(form)) sum += q_eval(form, e) * q_eval(form, fv);
  return ArfValue::finite(sum);
}

IsomGroup::IsomGroup(std::vector<Matrix> elements) : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end(), lex_less);
  elements_.erase(std::unique(elements_.begin(), elements_.end(),
                              [](const Matrix& a, const Matrix& b) { return equal(a, b); }),
                  elements_.end());
}

std::optional<std::size_t> IsomGroup::index_of(const Matrix& m) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), m, lex_less);
  if (it == elements_.end() || !equal(*it, m)) return std::nullopt;
  return std::size_t(it - elements_.begin());
}

bool IsomGroup::is_group() const {
  if (elements_.empty()) return false;
  const Field& f = *elements_.front()(0, 0).field();
  if (!contains(identity_matrix(f, elements_.front().rows()))) return false;
  for (const auto& a : elements_) {
    const auto inv = invert(a);
    if (!inv || !contains(bind(f, *inv))) return false;
    for (const auto& b : elements_)
      if (!contains(Matrix(a * b))) return false;
  }
  return true;
}

std::vector<std::vector<std::size_t>> IsomGroup::multiplication_table() const {
  std::vector<std::vector<std::size_t>> table(order(), std::vector<std::size_t>(order()));
  for (std::size_t i = 0; i < order(); ++i)
    for (std::size_t j = 0; j < order(); ++j) {
      const auto k = index_of(Matrix(elements_[i] * elements_[j]));
      if (!k) throw Error(ErrorCode::ContractViolation, "isometry set is not closed under product");
      table[i][j] = *k;
    }
  return table;
}

std::size_t IsomGroup::inverse_index(std::size_t i) const {
  const auto inv = invert(elements_[i]);
  const auto k = inv ? index_of(bind(*elements_[i](0, 0).field(), *inv)) : std::nullopt;
  if (!k) throw Error(ErrorCode::ContractViolation, "isometry set is not closed under inverse");
  return *k;
}

std::size_t element_order(const Matrix& m) {
  const Field& f = *m(0, 0).field();
  const Matrix id = identity_matrix(f, m.rows());
  Matrix p = m;
  for (std::size_t k = 1; k <= (1u << 20); ++k) {
    if (equal(p, id)) return k;
    p = p * m;
  }
  throw Error(ErrorCode::ContractViolation, "matrix has no finite order below 2^20");
}

namespace {

struct PartialMap {
  std::vector<Vector> basis;   // independent subset of the domain, then a completion
  std::vector<Vector> images;  // prescribed images for the first images.size() basis vectors
};

PartialMap prepare_partial_map(const QuadraticForm& src, const QuadraticForm& dst,
                               const std::vector<Vector>& domain, const std::vector<Vector>& images) {
  const Field& f = src.field();
  const Eigen::Index n = src.dim();
  if (domain.size() != images.size())
    throw Error(ErrorCode::NotPartialIsometry, "domain and image lists differ in length");

  PartialMap out;
  EchelonBasis<Element> dom(n);
  EchelonBasis<Element> img(n);
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (domain[i].size() != n || images[i].size() != n)
      throw Error(ErrorCode::DimMismatch, "partial map vector length");
    if (dom.insert(domain[i])) {
      if (!img.insert(images[i])) throw Error(ErrorCode::NotPartialIsometry, "map is not injective");
      chosen.push_back(i);
      out.basis.push_back(bind(f, domain[i]));
      out.images.push_back(bind(f, images[i]));
    }
  }
  // Dependent domain vectors must map compatibly with their linear relation.
  if (!out.basis.empty()) {
    const Matrix dcols = columns(f, n, out.basis);
    const Matrix icols = columns(f, n, out.images);
    for (std::size_t i = 0; i < domain.size(); ++i) {
      const auto c = solve(dcols, domain[i]);
      if (!equal(Matrix(icols * *c), Matrix(images[i])))
        throw Error(ErrorCode::NotPartialIsometry, "map is not linear on the domain span");
    }
  }
  for (std::size_t i = 0; i < out.basis.size(); ++i) {
    if (q_eval(src, out.basis[i]) != q_eval(dst, out.images[i]))
      throw Error(ErrorCode::NotPartialIsometry, "map does not preserve Q");
    for (std::size_t j = 0; j < i; ++j)
      if (b_eval(src, out.basis[i], out.basis[j]) != b_eval(dst, out.images[i], out.images[j]))
        throw Error(ErrorCode::NotPartialIsometry, "map does not preserve B");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    Vector u = unit(f, n, i);
    if (dom.insert(u)) out.basis.push_back(u);
  }
  return out;
}

void check_guard(const QuadraticForm& form) {
  if (form.field().degree() * unsigned(form.dim()) > kMaxEnumerationBits)
    throw Error(ErrorCode::TooLarge, "isometry enumeration over GF(2^" +
                                         std::to_string(form.field().degree()) + ")^" +
                                         std::to_string(form.dim()) + " exceeds the guard");
}

}  // namespace

void for_each_isometry(const QuadraticForm& src, const QuadraticForm& dst,
                       const std::vector<Vector>& fixed_src, const std::vector<Vector>& fixed_dst,
                       const std::function<bool(const Matrix&)>& visit) {
  if (&src.field() != &dst.field()) throw Error(ErrorCode::FieldMismatch, "isometry across fields");
  if (src.dim() != dst.dim()) throw Error(ErrorCode::DimMismatch, "isometry between unequal dims");
  check_guard(src);

  const Field& f = src.field();
  const Eigen::Index n = src.dim();
  const PartialMap pm = prepare_partial_map(src, dst, fixed_src, fixed_dst);
  const Matrix basis = columns(f, n, pm.basis);
  const Matrix basis_inv = bind(f, *invert(basis));
  const Matrix g_src = src.gram();
  const Matrix g_dst = dst.gram();

  // Candidate images bucketed by their Q value.
  const std::uint64_t count = std::uint64_t(1) << (f.degree() * unsigned(n));
  std::map<std::uint32_t, std::vector<Vector>> by_norm;
  for (std::uint64_t idx = 1; idx < count; ++idx) {
    Vector v = vector_from_index(f, n, idx);
    by_norm[q_eval(dst, v).value()].push_back(std::move(v));
  }

  std::vector<Vector> images = pm.images;
  std::vector<Vector> polar;  // g_dst * images[i]
  EchelonBasis<Element> span(n);
  for (const auto& v : images) {
    polar.push_back(g_dst * v);
    span.insert(v);
  }

  bool stop = false;
  std::function<void(std::size_t, const EchelonBasis<Element>&)> extend =
      [&](std::size_t level, const EchelonBasis<Element>& sp) {
        if (stop) return;
        if (level == std::size_t(n)) {
          if (!visit(Matrix(columns(f, n, images) * basis_inv))) stop = true;
          return;
        }
        const Vector& c = pm.basis[level];
        const Vector gc = g_src * c;
        std::vector<Element> target(level);
        for (std::size_t i = 0; i < level; ++i) target[i] = f.zero() + dot(pm.basis[i], gc);

        const auto bucket = by_norm.find(q_eval(src, c).value());
        if (bucket == by_norm.end()) return;
        for (const Vector& v : bucket->second) {
          bool ok = true;
          for (std::size_t i = 0; i < level && ok; ++i) ok = (f.zero() + dot(polar[i], v)) == target[i];
          if (!ok || sp.contains(v)) continue;
          EchelonBasis<Element> next = sp;
          next.insert(v);
          images.push_back(v);
          polar.push_back(g_dst * v);
          extend(level + 1, next);
          images.pop_back();
          polar.pop_back();
          if (stop) return;
        }
      };
  extend(images.size(), span);
}

IsomGroup enumerate_isometries(const QuadraticForm& form, const std::vector<Vector>& fixed) {
  std::vector<Matrix> found;
  for_each_isometry(form, form, fixed, fixed, [&](const Matrix& t) {
    found.push_back(t);
    return true;
  });
  return IsomGroup(std::move(found));
}

std::optional<Matrix> spaces_isomorphic(const QuadraticForm& f1, const QuadraticForm& f2) {
  if (f1.dim() != f2.dim()) throw Error(ErrorCode::DimMismatch, "forms of unequal dimension");
  std::optional<Matrix> witness;
  for_each_isometry(f1, f2, {}, {}, [&](const Matrix& t) {
    witness = t;
    return false;
  });
  return witness;
}

Matrix witt_extend(const QuadraticForm& form, const std::vector<Vector>& domain,
                   const std::vector<Vector>& images) {
  std::optional<Matrix> ext;
  for_each_isometry(form, form, domain, images, [&](const Matrix& t) {
    ext = t;
    return false;
  });
  if (!ext) throw Error(ErrorCode::Internal, "partial isometry admits no extension (contract violation)");
  return *ext;
}

}  // namespace ucg
