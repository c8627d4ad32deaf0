#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "endorank/groebner.hpp"

namespace endorank {

/// Endomorphism of K[x1..xn], stored as the images of the variables:
/// images()[k] = phi(x_{k+1}).
class Endomorphism {
 public:
  Endomorphism(Field field, std::size_t nvars, std::vector<MultiPoly> images);
  explicit Endomorphism(std::vector<MultiPoly> images);

  static Endomorphism identity(const Field& f, std::size_t n);
  /// The rank-0 map x_k -> point[k].
  static Endomorphism constant(const Field& f, const std::vector<FieldElement>& point);
  /// The map sending every variable to 0.
  static Endomorphism zero(const Field& f, std::size_t n);

  const Field& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const std::vector<MultiPoly>& images() const& { return images_; }
  std::vector<MultiPoly> images() && { return std::move(images_); }
  const MultiPoly& image(std::size_t k) const { return images_.at(k); }

  bool is_constant_map() const;
  /// Values of a constant map; requires is_constant_map().
  std::vector<FieldElement> constant_point() const;
  std::uint32_t max_degree() const;

  /// phi(f) = f(phi_1, ..., phi_n).
  MultiPoly apply(const MultiPoly& f, unsigned degree_cap = kDefaultDegreeCap) const;
  /// The polynomial map K^n -> K^n at a point.
  std::vector<FieldElement> evaluate(const std::vector<FieldElement>& point) const;

  friend bool operator==(const Endomorphism& a, const Endomorphism& b) {
    return a.field_ == b.field_ && a.nvars_ == b.nvars_ && a.images_ == b.images_;
  }
  friend bool operator!=(const Endomorphism& a, const Endomorphism& b) { return !(a == b); }

 private:
  Field field_;
  std::size_t nvars_;
  std::vector<MultiPoly> images_;
};

/// g after f as algebra maps: h(x_k) = f_k(g_1, ..., g_n), i.e. h = g o f.
Endomorphism compose(const Endomorphism& g, const Endomorphism& f, unsigned degree_cap = kDefaultDegreeCap);

/// e_ij(x_k) = delta_jk x_i with 0-based i, j.
Endomorphism kronecker_endo(const Field& f, std::size_t n, std::size_t i, std::size_t j);
/// The Kronecker endomorphism in the coordinate base Z: e'_ij(z_k) = delta_jk z_i.
/// Throws NotABase unless Z is invertible as a polynomial map.
Endomorphism kronecker_endo(std::size_t i, std::size_t j, const std::vector<MultiPoly>& base,
                            const EngineConfig& cfg = {});

/// Kernel of K[y1..yn] -> K[x1..xn], y_i -> phi_i, as a reduced GrevLex basis in y.
Ideal relation_ideal(const Endomorphism& phi, const EngineConfig& cfg = {});

enum class RankMethod { Elimination, JacobianProbe };

struct RankCertificate {
  Endomorphism endo;
  Ideal relation_ideal;
  int rank = 0;
  RankMethod method = RankMethod::Elimination;
  std::uint64_t seed = 0;
  std::vector<FieldElement> probe_point;  // JacobianProbe only
};

/// Elimination is ground truth. JacobianProbe is Q-only (MethodRefused
/// otherwise) and is a lower bound on the rank.
RankCertificate rank(const Endomorphism& phi, RankMethod method = RankMethod::Elimination,
                     const EngineConfig& cfg = {}, std::uint64_t seed = 0);

/// Rank of the Jacobian matrix at an explicit point, over any field.
int jacobian_rank_at(const Endomorphism& phi, const std::vector<FieldElement>& point);
/// Seeded random point drawn from the field (integers in [-97, 97] over Q).
std::vector<FieldElement> random_point(const Field& f, std::size_t n, std::uint64_t seed);

/// Rank of a square matrix by exact Gaussian elimination.
int matrix_rank(std::vector<std::vector<FieldElement>> m);

enum class Relation { Equivalent, StrictlyBelow, StrictlyAbove, Incomparable };
std::string to_string(Relation r);

/// Order convention: phi <= psi iff I_phi contains I_psi.
struct Comparison {
  Relation relation = Relation::Incomparable;
  Ideal phi_ideal;
  Ideal psi_ideal;
  bool phi_contains_psi = false;  // I_phi contains I_psi
  bool psi_contains_phi = false;
};

Comparison compare(const Endomorphism& phi, const Endomorphism& psi, const EngineConfig& cfg = {});

struct FalsifierCounterexample {
  Endomorphism f1;
  Endomorphism f2;
  std::string reason;
};

/// Samples pairs (f1, f2) and checks that compose(phi, .) / compose(psi, .)
/// equalities follow the implication pattern compare() predicts.
std::optional<FalsifierCounterexample> equivalence_falsifier(const Endomorphism& phi, const Endomorphism& psi,
                                                             std::size_t samples, std::uint64_t seed,
                                                             const EngineConfig& cfg = {});

/// Random polynomial with up to max_terms terms of total degree <= max_degree.
MultiPoly random_poly(const Field& f, std::size_t n, unsigned max_degree, unsigned max_terms, std::mt19937_64& rng);
Endomorphism random_endomorphism(const Field& f, std::size_t n, unsigned max_degree, unsigned max_terms,
                                 std::mt19937_64& rng);

}  // namespace endorank
