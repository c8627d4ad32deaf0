#pragma once

#include <random>
#include <string>
#include <vector>

#include "endorank/chains.hpp"
#include "endorank/text_format.hpp"

namespace endorank::testing {

inline MultiPoly P(const std::string& text, const Field& f, std::size_t n, const std::string& prefix = "x") {
  return parse_polynomial(text, f, n, 1, 0, prefix);
}

inline Endomorphism E(const Field& f, std::size_t n, const std::vector<std::string>& images) {
  std::vector<MultiPoly> im;
  for (const auto& s : images) im.push_back(P(s, f, n));
  return Endomorphism(f, n, std::move(im));
}

inline std::string S(const MultiPoly& p, const std::string& prefix = "x") {
  return to_string(p, variable_names(p.nvars(), prefix));
}

inline FieldElement fe(const Field& f, std::int64_t v) { return FieldElement::from_int(f, v); }

/// Random element: small rationals over Q, uniform over finite fields.
inline FieldElement random_element(const Field& f, std::mt19937_64& rng) {
  if (f.is_finite()) return {f, f.element_at(rng() % f.order())};
  const auto num = static_cast<std::int64_t>(rng() % 41) - 20;
  const auto den = static_cast<std::int64_t>(rng() % 9) + 1;
  return {f, f.from_rational(num, den)};
}

inline std::vector<FieldElement> random_point(const Field& f, std::size_t n, std::mt19937_64& rng) {
  std::vector<FieldElement> pt;
  for (std::size_t i = 0; i < n; ++i) pt.push_back(random_element(f, rng));
  return pt;
}

inline std::vector<Field> small_fields() {
  return {Field::rationals(), Field::prime(2), Field::prime(3), Field::builtin_extension(4)};
}

inline std::string data_path(const std::string& name) { return std::string(ENDORANK_TEST_DATA) + "/" + name; }

}  // namespace endorank::testing
