#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "ucg/error.hpp"

namespace ucg {

/// Largest supported extension degree. Exhaustive checks stay tractable below it.
inline constexpr unsigned kMaxDegree = 16;

/// Plain description of GF(2^n): bit i of `modulus` is the coefficient of x^i.
struct FieldSpec {
  unsigned n = 1;
  std::uint32_t modulus = 2;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

class Element;

/// GF(2^n) under a fixed irreducible modulus.
///
/// Instances are interned: `Field::make` returns a reference that stays valid for
/// the lifetime of the process, so elements can carry a plain pointer to their field
/// and two elements share a field exactly when the pointers agree.
class Field {
 public:
  static const Field& make(unsigned n, std::optional<std::uint32_t> modulus = std::nullopt);
  static const Field& make(const FieldSpec& spec) { return make(spec.n, spec.modulus); }

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  unsigned degree() const { return n_; }
  std::uint32_t modulus() const { return modulus_; }
  std::uint32_t order() const { return order_; }
  FieldSpec spec() const { return {n_, modulus_}; }

  Element element(std::uint32_t value) const;
  Element zero() const;
  Element one() const;
  /// Least element (as an integer) with absolute trace 1.
  Element e() const;
  /// All elements in increasing integer order.
  std::vector<Element> elements() const;

  // Raw arithmetic on encoded values.
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (!table_.empty()) return table_[(a << n_) | b];
    return mul_slow(a, b);
  }
  std::uint32_t square(std::uint32_t a) const { return mul(a, a); }
  std::uint32_t pow(std::uint32_t a, std::uint64_t k) const;
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t sqrt(std::uint32_t a) const;
  std::uint32_t trace(std::uint32_t a) const;

 private:
  Field(unsigned n, std::uint32_t modulus);
  std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const;

  unsigned n_;
  std::uint32_t modulus_;
  std::uint32_t order_;
  std::uint32_t e_ = 0;
  std::vector<std::uint16_t> table_;  // full product table for n <= 8
};

/// True when `poly` (degree >= 1) has no factor of degree 1..deg/2 over GF(2).
bool is_irreducible(std::uint32_t poly);

/// Element of GF(2^n), stored as a little-endian coefficient bit-vector.
///
/// A default or integer-constructed element is an unbound constant (0 or 1); it
/// adopts the field of whatever it is combined with. This is what lets Eigen build
/// `Scalar(0)` and `Scalar(1)` without knowing the field.
class Element {
 public:
  Element() = default;
  explicit Element(int constant);
  Element(const Field& field, std::uint32_t value) : field_(&field), value_(value) {}

  std::uint32_t value() const { return value_; }
  const Field* field() const { return field_; }
  bool is_zero() const { return value_ == 0; }
  bool is_one() const { return value_ == 1; }

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o) { return *this += o; }
  Element& operator*=(const Element& o);
  Element& operator/=(const Element& o);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a += b; }
  friend Element operator*(Element a, const Element& b) { return a *= b; }
  friend Element operator/(Element a, const Element& b) { return a /= b; }
  friend Element operator-(const Element& a) { return a; }
  friend bool operator==(const Element& a, const Element& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Element& a, const Element& b) { return a.value_ != b.value_; }
  friend bool operator<(const Element& a, const Element& b) { return a.value_ < b.value_; }

 private:
  friend class Field;
  static const Field* common(const Element& a, const Element& b);

  const Field* field_ = nullptr;
  std::uint32_t value_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Element& x);

// The operations below are named after the roles they play in the geometry code.

inline const Field& field_make(unsigned n, std::optional<std::uint32_t> modulus = std::nullopt) {
  return Field::make(n, modulus);
}

Element fmul(const Element& a, const Element& b);
Element fpow(const Element& a, std::uint64_t k);
Element finv(const Element& a);
/// Unique b with b^2 = a.
Element fsqrt(const Element& a);
/// Absolute trace sum_{i<n} a^(2^i); always 0 or 1.
Element ftrace(const Element& a);

struct HarfResult {
  Element image;  ///< a + a^2
  bool member;    ///< a lies in the image of x -> x + x^2
};
HarfResult harf(const Element& a);

/// Both roots of x^2 + x + a, or nothing when the polynomial is irreducible.
std::optional<std::pair<Element, Element>> fsolve_as(const Element& a);

// Free-function spellings used by the generic linear algebra templates.
inline bool is_zero(const Element& a) { return a.is_zero(); }
inline Element inverse(const Element& a) { return finv(a); }

enum class ArfClass { Zero, E, Infinity };

/// Arf invariant value: an element of K or infinity.
struct ArfValue {
  bool infinite = false;
  Element value;

  static ArfValue finite(Element v) { return {false, v}; }
  static ArfValue infinity() { return {true, Element()}; }

  friend bool operator==(const ArfValue& a, const ArfValue& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
};

ArfClass arf_normalize(const ArfValue& v);
std::string_view to_string(ArfClass c);
std::ostream& operator<<(std::ostream& os, const ArfValue& v);

}  // namespace ucg

namespace Eigen {

template <>
struct NumTraits<ucg::Element> : GenericNumTraits<ucg::Element> {
  using Real = ucg::Element;
  using NonInteger = ucg::Element;
  using Literal = ucg::Element;
  using Nested = ucg::Element;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 1,
    MulCost = 2
  };
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
