#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "endorank/field.hpp"
#include "endorank/monomial.hpp"

namespace endorank {

inline constexpr unsigned kDefaultDegreeCap = 64;

struct Term {
  Monomial mono;
  Scalar coeff;
};

/// Sparse distributed polynomial over a Field in nvars variables (0-based
/// internally, printed as x1..xn). Terms are kept in GrevLex-descending order
/// with no zero coefficients, so equal polynomials have identical storage.
class MultiPoly {
 public:
  MultiPoly() = default;
  MultiPoly(Field field, std::size_t nvars);

  static MultiPoly zero(const Field& f, std::size_t nvars) { return MultiPoly(f, nvars); }
  static MultiPoly constant(const Field& f, std::size_t nvars, const Scalar& c);
  static MultiPoly constant(const FieldElement& c, std::size_t nvars) { return constant(c.field(), nvars, c.value()); }
  static MultiPoly variable(const Field& f, std::size_t nvars, std::size_t i);
  static MultiPoly monomial(const Field& f, const Monomial& m, const Scalar& c);
  /// Sorts, merges duplicates and drops zeros.
  static MultiPoly from_terms(const Field& f, std::size_t nvars, std::vector<Term> terms);

  const Field& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_one() const;
  FieldElement constant_term() const;
  FieldElement coefficient(const Monomial& m) const;
  std::uint32_t total_degree() const;
  /// Bitmask of variables that occur.
  std::uint32_t support() const;
  /// GrevLex-leading term; the polynomial must be nonzero.
  const Term& leading_term() const { return terms_.front(); }

  MultiPoly operator-() const;
  friend MultiPoly operator+(const MultiPoly& f, const MultiPoly& g);
  friend MultiPoly operator-(const MultiPoly& f, const MultiPoly& g);
  friend MultiPoly operator*(const MultiPoly& f, const MultiPoly& g);
  MultiPoly& operator+=(const MultiPoly& g) { return *this = *this + g; }
  MultiPoly& operator-=(const MultiPoly& g) { return *this = *this - g; }
  MultiPoly& operator*=(const MultiPoly& g) { return *this = *this * g; }

  MultiPoly scale(const FieldElement& c) const;
  MultiPoly scale(const Scalar& c) const;
  MultiPoly pow(unsigned e, unsigned degree_cap = kDefaultDegreeCap) const;
  /// Divides by the leading coefficient.
  MultiPoly monic() const;

  /// Replace x_i by images[i]; all images share field and arity (which may
  /// differ from nvars()). Throws DegreeCapExceeded when the result would
  /// exceed degree_cap.
  MultiPoly substitute(const std::vector<MultiPoly>& images, unsigned degree_cap = kDefaultDegreeCap) const;
  FieldElement evaluate(const std::vector<FieldElement>& point) const;
  MultiPoly partial_derivative(std::size_t i) const;

  /// Applies fn to every coefficient (used for field automorphisms).
  MultiPoly map_coefficients(const std::function<Scalar(const Scalar&)>& fn) const;
  /// Moves variable i to new index new_index[i] in a ring with new_nvars variables.
  MultiPoly remap(std::size_t new_nvars, const std::vector<std::size_t>& new_index) const;

  friend bool operator==(const MultiPoly& f, const MultiPoly& g);
  friend bool operator!=(const MultiPoly& f, const MultiPoly& g) { return !(f == g); }

 private:
  void normalize();

  Field field_;
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

void require_compatible(const MultiPoly& f, const MultiPoly& g);

/// x1..xn by default; other prefixes ("y", "z") for auxiliary rings.
std::vector<std::string> variable_names(std::size_t nvars, const std::string& prefix = "x");

/// Canonical text: GrevLex-descending terms, e.g. "x1^2*x2 - 3/2*x1 + 1".
std::string to_string(const MultiPoly& f, const std::vector<std::string>& names);
std::string to_string(const MultiPoly& f);

}  // namespace endorank
