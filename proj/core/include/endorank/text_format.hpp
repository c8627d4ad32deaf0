#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "endorank/autgroup.hpp"
#include "endorank/kronecker.hpp"

namespace endorank {

/// Expression grammar over x1..xn (or another prefix):
///   expr  = term (('+' | '-') term)*
///   term  = unary ('*' unary)*
///   unary = ('+' | '-') unary | power
///   power = base ('^' INT)?
///   base  = INT ('/' INT)? | var | 't' | '(' expr ')'
/// 't' is the adjoined root of an extension field. Errors carry line and column.
MultiPoly parse_polynomial(std::string_view text, const Field& f, std::size_t nvars, std::size_t line = 1,
                           std::size_t column_offset = 0, const std::string& prefix = "x");

/// "field Q" | "field F p" | "field F p^k [mod <poly in t>]".
Field parse_field_header(std::string_view text, std::size_t line = 1);

/// Endomorphism file: field header, "vars n", then "x<k> -> poly" for every k.
Endomorphism parse_endomorphism(std::string_view text);
std::string format_endomorphism(const Endomorphism& e);

struct KroneckerFile {
  KroneckerSystem system;
  std::optional<std::vector<MultiPoly>> base;
};

/// Field header, "vars n", "kron n", n^2 blocks "e i j" of n mapping lines,
/// an optional "zero" block and an optional "base" block of "z<k> -> poly".
KroneckerFile parse_kronecker(std::string_view text);
std::string format_kronecker(const KroneckerSystem& s, const std::optional<std::vector<MultiPoly>>& base = std::nullopt);

/// Field header, "vars n", "delta identity|frob^e", then n mapping lines for s.
SemiLinearAut parse_automorphism(std::string_view text, const EngineConfig& cfg = {});
std::string format_automorphism(const SemiLinearAut& a);

/// Whole file contents; InputError when unreadable.
std::string read_text_file(const std::string& path);

}  // namespace endorank
