#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "endorank/error.hpp"

namespace endorank {

enum class FieldKind { Rationals, PrimeField, ExtField };

/// Raw coefficient storage. Finite-field elements are encoded as base-p
/// integers (c0 + c1 p + ... + c_{k-1} p^{k-1}); rationals carry an mpq.
/// A Scalar means nothing without the Field that produced it.
class Scalar {
 public:
  Scalar() : value_(std::uint64_t{0}) {}
  explicit Scalar(std::uint64_t residue) : value_(residue) {}
  explicit Scalar(mpq_class q) : value_(std::move(q)) {}

  bool is_rational() const { return std::holds_alternative<mpq_class>(value_); }
  std::uint64_t residue() const { return std::get<std::uint64_t>(value_); }
  const mpq_class& rational() const { return std::get<mpq_class>(value_); }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.value_ == b.value_; }

 private:
  std::variant<std::uint64_t, mpq_class> value_;
};

/// Immutable description of the ground field K.
struct FieldSpec {
  FieldKind kind = FieldKind::Rationals;
  std::uint64_t p = 0;                  // characteristic, 0 for Q
  unsigned k = 1;                       // extension degree
  std::vector<std::uint64_t> modulus;   // monic, low-to-high, size k+1 (ExtField only)
  std::uint64_t order = 0;              // p^k, 0 for Q
  std::vector<std::uint32_t> mul_table; // order*order entries for small extension fields

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.kind == b.kind && a.p == b.p && a.k == b.k && a.modulus == b.modulus;
  }
};

/// Shared, immutable handle to a FieldSpec with all arithmetic on Scalars.
class Field {
 public:
  static constexpr std::uint64_t kMaxPrime = std::uint64_t{1} << 61;
  static constexpr std::uint64_t kMaxExtOrder = std::uint64_t{1} << 24;

  Field();  // Q
  static Field rationals();
  static Field prime(std::uint64_t p);
  /// modulus is low-to-high, monic, degree k >= 2; irreducibility is checked.
  static Field extension(std::uint64_t p, const std::vector<std::uint64_t>& modulus);
  /// Built-in moduli for GF(4), GF(8), GF(9).
  static Field builtin_extension(std::uint64_t order);

  const FieldSpec& spec() const { return *spec_; }
  FieldKind kind() const { return spec_->kind; }
  bool is_finite() const { return spec_->kind != FieldKind::Rationals; }
  std::uint64_t characteristic() const { return spec_->p; }
  unsigned degree() const { return spec_->k; }
  std::uint64_t order() const { return spec_->order; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(std::int64_t v) const;
  Scalar from_mpz(const mpz_class& v) const;
  /// Throws DivisionByZero when den vanishes in the field.
  Scalar from_rational(const mpz_class& num, const mpz_class& den) const;
  /// The adjoined root t of an extension field.
  Scalar generator() const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }
  Scalar pow(const Scalar& a, std::uint64_t e) const;
  /// a -> a^(p^e).
  Scalar frobenius(const Scalar& a, unsigned e) const;
  bool is_zero(const Scalar& a) const;
  bool is_one(const Scalar& a) const;

  /// Enumeration index for finite fields (the base-p encoding itself).
  Scalar element_at(std::uint64_t index) const;

  /// Canonical text: "3/2", "4", "t+1", "2*t^2+t".
  std::string format(const Scalar& a) const;
  /// True when format(a) contains a top-level '+' or '-' after the first char.
  bool needs_parens(const Scalar& a) const;
  /// Header line used by all file formats, e.g. "field F 2^2 mod t^2+t+1".
  std::string header() const;

  friend bool operator==(const Field& a, const Field& b) {
    return a.spec_ == b.spec_ || *a.spec_ == *b.spec_;
  }
  friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

 private:
  explicit Field(std::shared_ptr<const FieldSpec> spec) : spec_(std::move(spec)) {}

  std::vector<std::uint64_t> digits(std::uint64_t code) const;
  std::uint64_t encode(const std::vector<std::uint64_t>& digits) const;
  std::uint64_t ext_mul_slow(std::uint64_t a, std::uint64_t b) const;

  std::shared_ptr<const FieldSpec> spec_;
};

void require_same_field(const Field& a, const Field& b);

bool is_prime(std::uint64_t n);

/// Value type pairing a scalar with its field; the public face of field arithmetic.
class FieldElement {
 public:
  FieldElement(Field field, Scalar value) : field_(std::move(field)), value_(std::move(value)) {}

  static FieldElement from_int(const Field& f, std::int64_t v) { return {f, f.from_int(v)}; }

  const Field& field() const { return field_; }
  const Scalar& value() const { return value_; }
  bool is_zero() const { return field_.is_zero(value_); }

  FieldElement inv() const { return {field_, field_.inv(value_)}; }
  FieldElement pow(std::uint64_t e) const { return {field_, field_.pow(value_, e)}; }
  std::string to_string() const { return field_.format(value_); }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a) { return {a.field_, a.field_.neg(a.value_)}; }
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

 private:
  Field field_;
  Scalar value_;
};

/// Identity or a power of the Frobenius map a -> a^p.
class FieldAutomorphism {
 public:
  static FieldAutomorphism identity(const Field& f) { return FieldAutomorphism(f, 0); }
  /// Throws InvalidField unless 0 <= e < k; only e = 0 exists for Q and GF(p).
  static FieldAutomorphism frobenius_power(const Field& f, unsigned e);

  const Field& field() const { return field_; }
  unsigned exponent() const { return exponent_; }
  bool is_identity() const { return exponent_ == 0; }

  FieldAutomorphism inverse() const;
  /// this after other.
  FieldAutomorphism compose(const FieldAutomorphism& other) const;

  Scalar apply(const Scalar& a) const { return exponent_ == 0 ? a : field_.frobenius(a, exponent_); }
  std::string to_string() const;

  friend bool operator==(const FieldAutomorphism& a, const FieldAutomorphism& b) {
    return a.field_ == b.field_ && a.exponent_ == b.exponent_;
  }

 private:
  FieldAutomorphism(Field f, unsigned e) : field_(std::move(f)), exponent_(e) {}

  Field field_;
  unsigned exponent_;
};

FieldElement apply_automorphism(const FieldAutomorphism& delta, const FieldElement& a);

/// All p^k elements in lexicographic order of their coefficient vectors.
std::vector<FieldElement> enumerate_elements(const Field& f);

}  // namespace endorank
