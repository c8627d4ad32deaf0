#pragma once

#include <optional>
#include <string>
#include <vector>

#include "endorank/endo.hpp"

namespace endorank {

/// n x n family of endomorphisms indexed from 0; entry(i, j) plays e'_ij.
class KroneckerSystem {
 public:
  KroneckerSystem(std::size_t n, std::vector<Endomorphism> entries, std::optional<Endomorphism> zero = std::nullopt);

  static KroneckerSystem standard(const Field& f, std::size_t n);
  /// Kronecker endomorphisms written in the coordinate base Z (NotABase otherwise).
  static KroneckerSystem in_base(const std::vector<MultiPoly>& base, const EngineConfig& cfg = {});
  /// Entry-wise compose(sigma, compose(e, sigma_inv)); the zero entry is transported too.
  KroneckerSystem conjugated(const Endomorphism& sigma, const Endomorphism& sigma_inv,
                             unsigned degree_cap = kDefaultDegreeCap) const;

  const Field& field() const { return entries_.front().field(); }
  std::size_t n() const { return n_; }
  const Endomorphism& entry(std::size_t i, std::size_t j) const { return entries_.at(i * n_ + j); }
  const std::vector<Endomorphism>& entries() const& { return entries_; }
  std::vector<Endomorphism> entries() && { return std::move(entries_); }
  const std::optional<Endomorphism>& zero() const { return zero_; }

 private:
  std::size_t n_;
  std::vector<Endomorphism> entries_;
  std::optional<Endomorphism> zero_;
};

struct SubbaseReport {
  bool ok = true;
  std::vector<std::string> violations;
  /// The map playing rho(0): the zero entry if given, otherwise the first
  /// delta = 0 product (all others must equal it).
  std::optional<Endomorphism> zero_image;
};

/// Only the n^4 composition relations (and the zero entry's absorbing laws).
SubbaseReport check_relations(const KroneckerSystem& s, const EngineConfig& cfg = {});

/// Relations, no entry equal to the zero image, and elimination rank 1 everywhere.
SubbaseReport verify_subbase(const KroneckerSystem& s, const EngineConfig& cfg = {});

enum class Representation { Singular, NonSingular };
std::string to_string(Representation r);

struct Classification {
  Representation kind = Representation::NonSingular;
  std::vector<int> ranks;  // row-major
};

/// Throws RelationViolation when the relations fail or the ranks do not fit
/// either kind.
Classification classify_representation(const KroneckerSystem& s, const EngineConfig& cfg = {});

using Matrix = std::vector<std::vector<FieldElement>>;

Matrix matrix_multiply(const Matrix& a, const Matrix& b);

struct StructureReport {
  std::vector<FieldElement> fixed_point;
  KroneckerSystem translated;
  bool constant_terms_vanish = false;
  /// linear_parts[i*n+j][l][k] = coefficient of x_l in translated e'_ij(x_k).
  std::vector<Matrix> linear_parts;
  bool matrix_units = false;
  /// v_1 a nonzero column of L_11, v_i = L_i1 v_1.
  std::vector<std::vector<FieldElement>> common_basis;
  bool basis_independent = false;
};

/// x -> x + d as an endomorphism.
Endomorphism translation(const Field& f, const std::vector<FieldElement>& d);
/// compose(tau_d, compose(phi, tau_{-d})): the map p -> phi(p + d) - d on points.
Endomorphism translate(const Endomorphism& phi, const std::vector<FieldElement>& d);
Matrix linear_part(const Endomorphism& phi);

/// Precondition: verify_subbase passed. Throws NoFixedPointFound or
/// ConstantTermSurvives.
StructureReport structure_analysis(const KroneckerSystem& s, std::uint64_t seed = 0, const EngineConfig& cfg = {});

struct ImageGenerator {
  MultiPoly z;
  /// images()[k] = witnesses[k](z), one-variable polynomials.
  std::vector<MultiPoly> witnesses;
};

/// Generator of the image algebra of an idempotent rank-1 endomorphism, or
/// nullopt when no candidate verifies. Throws PreconditionViolated otherwise.
std::optional<ImageGenerator> image_generator(const Endomorphism& phi, const std::optional<MultiPoly>& hint = std::nullopt,
                                              const EngineConfig& cfg = {});

struct BaseCertificate {
  KroneckerSystem system;
  std::vector<MultiPoly> generators;
  /// x_k = witnesses[k](z_1..z_n).
  std::vector<MultiPoly> witnesses;
  bool normalized = false;
};

struct ExternalBaseResult {
  std::vector<MultiPoly> generators;
  std::optional<BaseCertificate> certificate;
  /// First x_k outside K[z_1..z_n] when certificate is empty.
  std::optional<std::size_t> failing_variable;
};

/// Precondition: verify_subbase passed. Generators come from image_generator
/// on the diagonal entries unless supplied.
ExternalBaseResult verify_base_external(const KroneckerSystem& s,
                                        const std::optional<std::vector<MultiPoly>>& generators = std::nullopt,
                                        const EngineConfig& cfg = {});

/// Rescales the base so that e'_ij(z'_k) = delta_jk z'_i holds exactly; the
/// relations are re-verified before returning.
BaseCertificate normalize_base(const BaseCertificate& cert, const EngineConfig& cfg = {});

/// True iff e'_ij(z_k) = delta_jk z_i exactly for all i, j, k.
bool satisfies_base_relations(const KroneckerSystem& s, const std::vector<MultiPoly>& z,
                              unsigned degree_cap = kDefaultDegreeCap);

struct InternalBaseReport {
  bool ok = false;
  Endomorphism phi;
  Endomorphism psi;
  std::vector<MultiPoly> f_generators;
  std::vector<std::string> failures;
};

/// With phi(x_i) = z_i and psi(x_k) = W_k(alpha_1(y_1), ..., alpha_n(y_n)),
/// checks compose(alpha_i, f_ii) == compose(psi, compose(e_ii, phi)) for all i.
InternalBaseReport check_internal_base_condition(const BaseCertificate& cert, const KroneckerSystem& f,
                                                 const std::vector<Endomorphism>& alphas, const EngineConfig& cfg = {});
/// Obtains the certificate for s first; PreconditionViolated when s is not a base.
InternalBaseReport check_internal_base_condition(const KroneckerSystem& s, const KroneckerSystem& f,
                                                 const std::vector<Endomorphism>& alphas, const EngineConfig& cfg = {});

}  // namespace endorank
