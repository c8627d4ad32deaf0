#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "endorank/endo.hpp"

namespace endorank {

struct SubstitutionAtom {
  enum class Kind { Specialize, Power, Collapse };
  Kind kind = Kind::Specialize;
  std::size_t var = 0;  // Specialize: x_var -> value; Power: x_var -> x_dst^r
  std::size_t dst = 0;
  unsigned r = 0;
  Scalar value;
  std::vector<Scalar> point;  // Collapse: every x_k -> point[k]
};

/// A substitution endomorphism sigma built from atoms acting on distinct
/// variables; the step is psi' = compose(sigma, psi), i.e. psi'_k = sigma(psi_k).
struct SubstitutionRecord {
  std::vector<SubstitutionAtom> atoms;

  static SubstitutionRecord specialize(std::size_t var, Scalar value);
  static SubstitutionRecord power(std::size_t src, std::size_t dst, unsigned r);
  static SubstitutionRecord collapse(std::vector<Scalar> point);

  /// "specialize", "power", "collapse" or "mixed".
  std::string kind_name() const;
  Endomorphism sigma(const Field& f, std::size_t n) const;
  Endomorphism apply(const Endomorphism& psi, unsigned degree_cap = kDefaultDegreeCap) const;
  std::string to_string(const Field& f) const;
};

struct ChainStep {
  Endomorphism endo;
  RankCertificate rank;
};

struct ChainCertificate {
  std::vector<ChainStep> steps;
  std::vector<SubstitutionRecord> substitutions;  // substitutions[k] maps steps[k] to steps[k+1]
  std::uint64_t seed = 0;
  bool verified = false;

  std::size_t length() const { return substitutions.size(); }
};

struct ChainPolicy {
  unsigned r_max = 8;
  /// Seeded 32-bit values appended to the Q schedule 0, 1, -1, ..., 8, -8.
  unsigned random_values = 8;
  /// Multi-variable specializations and power+specialize combinations once
  /// single substitutions are exhausted.
  bool fallback = true;
  EngineConfig engine{};
};

/// Specialization values in schedule order: all elements of a finite field,
/// or 0, 1, -1, ..., 8, -8 followed by seeded 32-bit integers over Q.
std::vector<Scalar> specialization_schedule(const Field& f, std::uint64_t seed, unsigned random_values);

struct RankReduction {
  Endomorphism result;
  SubstitutionRecord record;
  RankCertificate rank;
  std::vector<std::string> attempts;
};

/// One rank-lowering substitution. Rank 1 inputs collapse to the value at 0.
RankReduction reduce_rank_once(const Endomorphism& psi, const ChainPolicy& policy = {}, std::uint64_t seed = 0);

ChainCertificate build_full_chain(const Endomorphism& psi, const ChainPolicy& policy = {}, std::uint64_t seed = 0);

struct ChainVerification {
  bool ok = true;
  std::vector<std::string> diagnostics;
};

/// Recomputes ranks by elimination, replays substitutions and compares
/// consecutive steps; never throws on a bad certificate.
ChainVerification verify_chain(const ChainCertificate& c, const EngineConfig& cfg = {});

struct InternalRankReport {
  int chain_length = 0;
  int elimination_rank = 0;
  bool equal = false;
  ChainCertificate chain;
};

InternalRankReport internal_rank_lower_bound(const Endomorphism& psi, const ChainPolicy& policy = {},
                                             std::uint64_t seed = 0);

}  // namespace endorank
