#include "ucg/field.hpp"

#include <bit>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>

namespace ucg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnsupportedDegree: return "UnsupportedDegree";
    case ErrorCode::ModulusReducible: return "ModulusReducible";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::DegenerateBilinear: return "DegenerateBilinear";
    case ErrorCode::DegenerateForm: return "DegenerateForm";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotPartialIsometry: return "NotPartialIsometry";
    case ErrorCode::NotEmbeddable: return "NotEmbeddable";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::BuildFailed: return "BuildFailed";
    case ErrorCode::NotDefined: return "NotDefined";
    case ErrorCode::DegenerateOmega: return "DegenerateOmega";
    case ErrorCode::NotIndependent: return "NotIndependent";
    case ErrorCode::IdealLine: return "IdealLine";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::AmbiguousDistance: return "AmbiguousDistance";
    case ErrorCode::ContractViolation: return "ContractViolation";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

namespace {

int degree_of(std::uint32_t poly) { return poly == 0 ? -1 : 31 - std::countl_zero(poly); }

// Remainder of polynomial division over GF(2).
std::uint32_t poly_mod(std::uint32_t a, std::uint32_t m) {
  const int dm = degree_of(m);
  for (int da = degree_of(a); da >= dm; da = degree_of(a)) a ^= m << (da - dm);
  return a;
}

}  // namespace

bool is_irreducible(std::uint32_t poly) {
  const int d = degree_of(poly);
  if (d < 1) return false;
  for (std::uint32_t div = 2; degree_of(div) <= d / 2; ++div) {
    if (poly_mod(poly, div) == 0) return false;
  }
  return true;
}

Field::Field(unsigned n, std::uint32_t modulus) : n_(n), modulus_(modulus), order_(1u << n) {
  if (n <= 8) {
    table_.resize(std::size_t(order_) * order_);
    for (std::uint32_t a = 0; a < order_; ++a)
      for (std::uint32_t b = 0; b < order_; ++b)
        table_[(a << n_) | b] = static_cast<std::uint16_t>(mul_slow(a, b));
  }
  for (std::uint32_t a = 0; a < order_; ++a) {
    if (trace(a) == 1) {
      e_ = a;
      break;
    }
  }
}

const Field& Field::make(unsigned n, std::optional<std::uint32_t> modulus) {
  if (n < 1 || n > kMaxDegree)
    throw Error(ErrorCode::UnsupportedDegree, "degree " + std::to_string(n) + " outside 1.." +
                                                  std::to_string(kMaxDegree));
  std::uint32_t m = 0;
  if (modulus) {
    m = *modulus;
    if (degree_of(m) != int(n))
      throw Error(ErrorCode::UnsupportedDegree,
                  "modulus " + std::to_string(m) + " does not have degree " + std::to_string(n));
    if (!is_irreducible(m))
      throw Error(ErrorCode::ModulusReducible, "modulus " + std::to_string(m) + " is reducible");
  } else {
    for (m = 1u << n; !is_irreducible(m); ++m) {
    }
  }

  static std::mutex mutex;
  static std::vector<std::unique_ptr<Field>> interned;
  std::lock_guard lock(mutex);
  for (const auto& f : interned)
    if (f->n_ == n && f->modulus_ == m) return *f;
  interned.push_back(std::unique_ptr<Field>(new Field(n, m)));
  return *interned.back();
}

std::uint32_t Field::mul_slow(std::uint32_t a, std::uint32_t b) const {
  std::uint32_t r = 0;
  while (b) {
    if (b & 1u) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & order_) a ^= modulus_;
  }
  return r;
}

std::uint32_t Field::pow(std::uint32_t a, std::uint64_t k) const {
  std::uint32_t r = 1;
  while (k) {
    if (k & 1u) r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

std::uint32_t Field::inv(std::uint32_t a) const {
  if (a == 0) throw Error(ErrorCode::NotDefined, "inverse of zero");
  return pow(a, order_ - 2);
}

std::uint32_t Field::sqrt(std::uint32_t a) const {
  // Frobenius has order n, so its inverse is n-1 further squarings.
  for (unsigned i = 1; i < n_; ++i) a = mul(a, a);
  return a;
}

std::uint32_t Field::trace(std::uint32_t a) const {
  std::uint32_t t = 0;
  for (unsigned i = 0; i < n_; ++i) {
    t ^= a;
    a = mul(a, a);
  }
  return t;
}

Element Field::element(std::uint32_t value) const {
  if (value >= order_)
    throw Error(ErrorCode::InvalidInput,
                std::to_string(value) + " is not an element of GF(2^" + std::to_string(n_) + ")");
  return Element(*this, value);
}

Element Field::zero() const { return Element(*this, 0); }
Element Field::one() const { return Element(*this, 1); }
Element Field::e() const { return Element(*this, e_); }

std::vector<Element> Field::elements() const {
  std::vector<Element> out;
  out.reserve(order_);
  for (std::uint32_t v = 0; v < order_; ++v) out.emplace_back(*this, v);
  return out;
}

Element::Element(int constant) : value_(static_cast<std::uint32_t>(constant)) {
  if (constant != 0 && constant != 1)
    throw Error(ErrorCode::InvalidInput, "unbound field constant must be 0 or 1");
}

const Field* Element::common(const Element& a, const Element& b) {
  if (a.field_ && b.field_ && a.field_ != b.field_)
    throw Error(ErrorCode::FieldMismatch, "operands live in different fields");
  return a.field_ ? a.field_ : b.field_;
}

Element& Element::operator+=(const Element& o) {
  field_ = common(*this, o);
  value_ ^= o.value_;
  return *this;
}

Element& Element::operator*=(const Element& o) {
  const Field* f = common(*this, o);
  // Unbound operands are 0 or 1, where the product needs no field.
  value_ = f ? f->mul(value_, o.value_) : (value_ & o.value_);
  field_ = f;
  return *this;
}

Element& Element::operator/=(const Element& o) { return *this *= finv(o); }

std::ostream& operator<<(std::ostream& os, const Element& x) { return os << x.value(); }

Element fmul(const Element& a, const Element& b) { return a * b; }

Element fpow(const Element& a, std::uint64_t k) {
  if (!a.field()) return Element(k == 0 ? 1 : int(a.value()));
  return Element(*a.field(), a.field()->pow(a.value(), k));
}

Element finv(const Element& a) {
  if (a.is_zero()) throw Error(ErrorCode::NotDefined, "inverse of zero");
  if (!a.field()) return a;
  return Element(*a.field(), a.field()->inv(a.value()));
}

Element fsqrt(const Element& a) {
  if (!a.field()) return a;
  return Element(*a.field(), a.field()->sqrt(a.value()));
}

Element ftrace(const Element& a) {
  if (!a.field()) return a;
  return Element(*a.field(), a.field()->trace(a.value()));
}

HarfResult harf(const Element& a) {
  return {a + a * a, ftrace(a).is_zero()};
}

std::optional<std::pair<Element, Element>> fsolve_as(const Element& a) {
  if (!ftrace(a).is_zero()) return std::nullopt;
  if (!a.field()) return std::pair{Element(0), Element(1)};
  const Field& f = *a.field();
  const unsigned n = f.degree();

  // x -> x + x^2 is GF(2)-linear; solve h(x) = a by elimination on the augmented
  // bit matrix whose column i is h(x^i). Row r holds bit r of every column.
  std::vector<std::uint32_t> rows(n, 0);
  for (unsigned i = 0; i < n; ++i) {
    const std::uint32_t col = (1u << i) ^ f.square(1u << i);
    for (unsigned r = 0; r < n; ++r)
      if (col >> r & 1u) rows[r] |= 1u << i;
  }
  for (unsigned r = 0; r < n; ++r)
    if (a.value() >> r & 1u) rows[r] |= 1u << n;

  std::vector<int> pivot_col(n, -1);
  unsigned rank = 0;
  for (unsigned c = 0; c < n && rank < n; ++c) {
    unsigned p = rank;
    while (p < n && !(rows[p] >> c & 1u)) ++p;
    if (p == n) continue;
    std::swap(rows[p], rows[rank]);
    for (unsigned r = 0; r < n; ++r)
      if (r != rank && (rows[r] >> c & 1u)) rows[r] ^= rows[rank];
    pivot_col[rank] = int(c);
    ++rank;
  }
  std::uint32_t x = 0;
  for (unsigned r = 0; r < rank; ++r)
    if (rows[r] >> n & 1u) x |= 1u << pivot_col[r];

  const Element root(f, x);
  if (root + root * root != a)
    throw Error(ErrorCode::Internal, "Artin-Schreier solve produced a non-root");
  const Element other = root + f.one();
  return root < other ? std::pair{root, other} : std::pair{other, root};
}

ArfClass arf_normalize(const ArfValue& v) {
  if (v.infinite) return ArfClass::Infinity;
  return ftrace(v.value).is_zero() ? ArfClass::Zero : ArfClass::E;
}

std::string_view to_string(ArfClass c) {
  switch (c) {
    case ArfClass::Zero: return "0";
    case ArfClass::E: return "e";
    case ArfClass::Infinity: return "inf";
  }
  return "?";
}

std::ostream& operator<<(std::ostream& os, const ArfValue& v) {
  if (v.infinite) return os << "inf";
  return os << v.value.value();
}

}  // namespace ucg
