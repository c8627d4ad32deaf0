#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>

#include "endorank/error.hpp"

namespace endorank {

inline constexpr std::size_t kMaxVars = 16;

/// Exponent vector over at most kMaxVars variables, with cached total degree.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : nvars_(static_cast<std::uint8_t>(nvars)) {
    if (nvars > kMaxVars) fail(ErrorCode::ArityMismatch, "too many variables");
  }

  static Monomial variable(std::size_t nvars, std::size_t i, std::uint32_t e = 1) {
    Monomial m(nvars);
    m.set(i, e);
    return m;
  }

  std::size_t nvars() const { return nvars_; }
  std::uint32_t degree() const { return degree_; }
  std::uint32_t operator[](std::size_t i) const { return exp_[i]; }

  void set(std::size_t i, std::uint32_t e) {
    if (e > 0xFFFF) fail(ErrorCode::DegreeCapExceeded, "exponent exceeds 65535");
    degree_ = degree_ - exp_[i] + e;
    exp_[i] = static_cast<std::uint16_t>(e);
  }

  bool is_one() const { return degree_ == 0; }

  /// Bitmask of variables with positive exponent.
  std::uint32_t support() const {
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (exp_[i] != 0) s |= 1u << i;
    return s;
  }

  bool divides(const Monomial& other) const {
    for (std::size_t i = 0; i < nvars_; ++i)
      if (exp_[i] > other.exp_[i]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r(a.nvars_);
    for (std::size_t i = 0; i < a.nvars_; ++i) {
      const std::uint32_t e = std::uint32_t{a.exp_[i]} + b.exp_[i];
      if (e > 0xFFFF) fail(ErrorCode::DegreeCapExceeded, "exponent exceeds 65535");
      r.exp_[i] = static_cast<std::uint16_t>(e);
    }
    r.degree_ = a.degree_ + b.degree_;
    return r;
  }

  /// Exact quotient; requires b.divides(a).
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r(a.nvars_);
    for (std::size_t i = 0; i < a.nvars_; ++i) r.exp_[i] = static_cast<std::uint16_t>(a.exp_[i] - b.exp_[i]);
    r.degree_ = a.degree_ - b.degree_;
    return r;
  }

  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a.nvars_);
    std::uint32_t d = 0;
    for (std::size_t i = 0; i < a.nvars_; ++i) {
      r.exp_[i] = a.exp_[i] > b.exp_[i] ? a.exp_[i] : b.exp_[i];
      d += r.exp_[i];
    }
    r.degree_ = d;
    return r;
  }

  static bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.nvars_; ++i)
      if (a.exp_[i] != 0 && b.exp_[i] != 0) return false;
    return true;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.nvars_ == b.nvars_ && a.degree_ == b.degree_ && a.exp_ == b.exp_;
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < nvars_; ++i) h = (h ^ exp_[i]) * 1099511628211ull;
    return h;
  }

 private:
  std::array<std::uint16_t, kMaxVars> exp_{};
  std::uint8_t nvars_ = 0;
  std::uint32_t degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

enum class OrderKind { Lex, GrevLex, Block };

/// Total, multiplicative monomial order. Block orders compare the eliminated
/// variables first (GrevLex on that block), then GrevLex on the rest.
class MonomialOrder {
 public:
  static MonomialOrder lex() { return MonomialOrder(OrderKind::Lex, 0); }
  static MonomialOrder grevlex() { return MonomialOrder(OrderKind::GrevLex, 0); }
  static MonomialOrder block(std::uint32_t eliminated_mask) { return MonomialOrder(OrderKind::Block, eliminated_mask); }

  OrderKind kind() const { return kind_; }
  std::uint32_t eliminated() const { return eliminated_; }

  /// Negative, zero or positive as a <, =, > b.
  int compare(const Monomial& a, const Monomial& b) const {
    switch (kind_) {
      case OrderKind::Lex:
        for (std::size_t i = 0; i < a.nvars(); ++i)
          if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
        return 0;
      case OrderKind::GrevLex: return grevlex_masked(a, b, ~0u);
      case OrderKind::Block: {
        const int c = grevlex_masked(a, b, eliminated_);
        return c != 0 ? c : grevlex_masked(a, b, ~eliminated_);
      }
    }
    return 0;
  }

  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
    return a.kind_ == b.kind_ && a.eliminated_ == b.eliminated_;
  }

 private:
  MonomialOrder(OrderKind k, std::uint32_t mask) : kind_(k), eliminated_(mask) {}

  static int grevlex_masked(const Monomial& a, const Monomial& b, std::uint32_t mask) {
    std::uint32_t da = 0, db = 0;
    for (std::size_t i = 0; i < a.nvars(); ++i) {
      if (mask & (1u << i)) {
        da += a[i];
        db += b[i];
      }
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = a.nvars(); i-- > 0;) {
      if (!(mask & (1u << i))) continue;
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
  }

  OrderKind kind_;
  std::uint32_t eliminated_;
};

}  // namespace endorank
