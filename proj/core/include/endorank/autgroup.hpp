#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "endorank/kronecker.hpp"

namespace endorank {

/// Ring automorphism f -> (delta applied to the coefficients of f)(s_1, ..., s_n).
class SemiLinearAut {
 public:
  /// Computes s_inv; throws NotABase when s is not invertible.
  SemiLinearAut(FieldAutomorphism delta, std::vector<MultiPoly> s, const EngineConfig& cfg = {});
  /// Checks both round trips; throws InvariantViolation on a bad s_inv.
  SemiLinearAut(FieldAutomorphism delta, std::vector<MultiPoly> s, std::vector<MultiPoly> s_inv);

  static SemiLinearAut identity(const Field& f, std::size_t n);

  const FieldAutomorphism& delta() const { return delta_; }
  const std::vector<MultiPoly>& s() const { return s_; }
  const std::vector<MultiPoly>& s_inv() const { return s_inv_; }
  const Field& field() const { return delta_.field(); }
  std::size_t nvars() const { return s_.size(); }

  /// (delta^-1, delta^-1 applied to s_inv).
  SemiLinearAut inverse() const;

 private:
  FieldAutomorphism delta_;
  std::vector<MultiPoly> s_;
  std::vector<MultiPoly> s_inv_;
};

MultiPoly apply_semilinear(const SemiLinearAut& a, const MultiPoly& f, unsigned degree_cap = kDefaultDegreeCap);

/// a after b.
SemiLinearAut compose(const SemiLinearAut& a, const SemiLinearAut& b, const EngineConfig& cfg = {});

/// Phi(g) with Phi(g)(f) = a(g(a^-1(f))), computed on the variables.
Endomorphism conjugate(const SemiLinearAut& a, const Endomorphism& g, unsigned degree_cap = kDefaultDegreeCap);

struct ConjugationSample {
  Endomorphism g;
  Endomorphism h;
  Endomorphism phi_g;
  Endomorphism phi_h;
  Endomorphism phi_gh;
  bool homomorphism = false;  // phi_gh == compose(phi_g, phi_h)
};

struct ConjugationReport {
  SemiLinearAut aut;
  std::vector<ConjugationSample> samples;
  std::vector<std::pair<int, int>> rank_pairs;  // (rank g, rank Phi(g)) for every sampled g and h
  std::size_t homomorphism_violations = 0;
  std::size_t rank_violations = 0;
  bool identity_preserved = false;
  bool kronecker_base_check = false;
  bool semi_inner = false;  // delta is not the identity

  bool ok() const {
    return homomorphism_violations == 0 && rank_violations == 0 && identity_preserved && kronecker_base_check;
  }
};

/// Seeded pairs of random endomorphisms with images of degree <= max_degree.
std::vector<std::pair<Endomorphism, Endomorphism>> endomorphism_pairs(const Field& f, std::size_t n,
                                                                      std::size_t count, unsigned max_degree,
                                                                      std::uint64_t seed);

ConjugationReport verify_automorphism_properties(const SemiLinearAut& a,
                                                 const std::vector<std::pair<Endomorphism, Endomorphism>>& corpus,
                                                 const EngineConfig& cfg = {});

/// Product of elementary maps x_i -> x_i + p(other variables) and an
/// invertible affine map, with `steps` elementary factors.
std::vector<MultiPoly> random_tame_map(const Field& f, std::size_t n, unsigned steps, std::mt19937_64& rng);

}  // namespace endorank
