#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "endorank/autgroup.hpp"
#include "endorank/chains.hpp"
#include "endorank/kronecker.hpp"

namespace endorank {

using Json = nlohmann::json;

inline constexpr int kJsonSchemaVersion = 1;

/// Polynomials are stored as canonical text; the field as its header line.
Json to_json(const Endomorphism& e);
Endomorphism endomorphism_from_json(const Json& j);

Json to_json(const RankCertificate& c);
RankCertificate rank_certificate_from_json(const Json& j);

Json to_json(const SubstitutionRecord& r, const Field& f);
SubstitutionRecord substitution_from_json(const Json& j, const Field& f);

Json to_json(const ChainCertificate& c);
ChainCertificate chain_certificate_from_json(const Json& j);

Json to_json(const KroneckerSystem& s);
KroneckerSystem kronecker_system_from_json(const Json& j);

Json to_json(const BaseCertificate& c);
BaseCertificate base_certificate_from_json(const Json& j);

Json to_json(const Comparison& c, const Endomorphism& phi, const Endomorphism& psi);

Json to_json(const SemiLinearAut& a);
SemiLinearAut automorphism_from_json(const Json& j);

/// Negative answer of the external base test, replayable by recomputing the
/// failing membership.
Json base_failure_to_json(const KroneckerSystem& s, const std::vector<MultiPoly>& generators, std::size_t failing);
Json subbase_to_json(const KroneckerSystem& s, const SubbaseReport& r);
Json classification_to_json(const KroneckerSystem& s, const Classification& c);
Json conjugation_to_json(const SemiLinearAut& a, const Endomorphism& g, const Endomorphism& image);
Json inverse_to_json(const std::vector<MultiPoly>& s, const std::vector<MultiPoly>& s_inv);

struct ReplayResult {
  bool ok = false;
  std::string kind;
  std::vector<std::string> diagnostics;
};

/// Re-verifies a certificate (or a report embedding one under "certificate")
/// from the JSON alone, without rerunning any search.
ReplayResult replay_certificate(const Json& j, const EngineConfig& cfg = {});

}  // namespace endorank
