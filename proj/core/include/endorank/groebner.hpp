#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <vector>

#include "endorank/poly.hpp"

namespace endorank {

inline constexpr std::uint64_t kDefaultReductionBudget = 1'000'000;

/// Counts Buchberger postcondition checks; shared across threads.
struct PostconditionAudit {
  std::atomic<std::uint64_t> bases_checked{0};
  std::atomic<std::uint64_t> failures{0};
};

/// Resource limits threaded through every decision procedure.
struct EngineConfig {
  std::uint64_t reduction_budget = kDefaultReductionBudget;
  unsigned degree_cap = kDefaultDegreeCap;
  /// When set, every computed basis is re-checked (all S-pairs reduce to 0).
  PostconditionAudit* audit = nullptr;
};

class Ideal {
 public:
  Ideal(Field field, std::size_t nvars, std::vector<MultiPoly> generators = {});

  const Field& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  /// Nonzero generators only.
  const std::vector<MultiPoly>& generators() const& { return generators_; }
  std::vector<MultiPoly> generators() && { return std::move(generators_); }
  bool is_zero_ideal() const { return generators_.empty(); }

 private:
  Field field_;
  std::size_t nvars_;
  std::vector<MultiPoly> generators_;
};

/// Reduced Groebner basis: monic, interreduced, sorted by ascending leading monomial.
class GroebnerBasis {
 public:
  const Ideal& ideal() const { return ideal_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<MultiPoly>& basis() const& { return basis_; }
  std::vector<MultiPoly> basis() && { return std::move(basis_); }
  /// Leading monomials under order(), parallel to basis().
  const std::vector<Monomial>& leading_monomials() const { return leading_; }
  bool is_unit() const { return basis_.size() == 1 && basis_[0].is_constant(); }

 private:
  friend GroebnerBasis groebner_basis(const Ideal&, const MonomialOrder&, const EngineConfig&);
  friend MultiPoly normal_form(const MultiPoly&, const GroebnerBasis&);

  GroebnerBasis(Ideal ideal, MonomialOrder order) : ideal_(std::move(ideal)), order_(order) {}

  Ideal ideal_;
  MonomialOrder order_;
  std::vector<MultiPoly> basis_;
  std::vector<Monomial> leading_;
  std::vector<std::vector<Term>> ordered_;  // basis terms sorted by order_
};

/// Buchberger with the coprime and chain criteria (Gebauer-Moeller update),
/// normal selection strategy (smallest lcm degree, ties by pair index).
GroebnerBasis groebner_basis(const Ideal& ideal, const MonomialOrder& order, const EngineConfig& cfg = {});

/// Full multivariate-division remainder; zero iff f lies in the ideal.
MultiPoly normal_form(const MultiPoly& f, const GroebnerBasis& g);

/// Every S-pair of the basis reduces to zero.
bool satisfies_buchberger_criterion(const GroebnerBasis& g);

/// Generators of I intersected with K[remaining variables], re-indexed to the
/// remaining variables in increasing order. drop is a bitmask.
Ideal eliminate(const Ideal& ideal, std::uint32_t drop, const EngineConfig& cfg = {});

/// True iff every generator of inner reduces to zero modulo a basis of outer.
bool ideal_contains(const Ideal& outer, const Ideal& inner, const EngineConfig& cfg = {});
bool ideal_contains(const GroebnerBasis& outer, const Ideal& inner);

/// Krull dimension of K[y]/I; -1 for the unit ideal.
int ideal_dimension(const Ideal& ideal, const EngineConfig& cfg = {});
/// Dimension read off the leading monomials of any Groebner basis.
int ideal_dimension(const GroebnerBasis& g);

struct SubalgebraWitness {
  /// Polynomial P in gens.size() variables with P(gens) = f.
  MultiPoly witness;
};

/// Decides f in K[gens] by tag-variable elimination; the witness is
/// re-verified by substitution before it is returned.
std::optional<SubalgebraWitness> subalgebra_member(const MultiPoly& f, const std::vector<MultiPoly>& gens,
                                                   const EngineConfig& cfg = {});

/// Batch form sharing one basis: witnesses for each target (nullopt where not a member).
std::vector<std::optional<MultiPoly>> subalgebra_members(const std::vector<MultiPoly>& targets,
                                                         const std::vector<MultiPoly>& gens,
                                                         const EngineConfig& cfg = {});

/// Inverse of the polynomial map x -> s(x), verified by both round trips.
std::optional<std::vector<MultiPoly>> invert_poly_map(const std::vector<MultiPoly>& s, const EngineConfig& cfg = {});

}  // namespace endorank
