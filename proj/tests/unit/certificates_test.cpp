#include <gtest/gtest.h>

#include "support.hpp"

#include "endorank/certificates.hpp"

using namespace endorank;
using namespace endorank::testing;

namespace {

bool replays(const Json& j) {
  const auto r = replay_certificate(Json::parse(j.dump()));
  if (!r.ok)
    for (const auto& d : r.diagnostics) ADD_FAILURE() << d;
  return r.ok;
}

TEST(Certificates, EndomorphismRoundTrip) {
  for (const Field& f : small_fields()) {
    std::mt19937_64 rng(3);
    const auto e = random_endomorphism(f, 3, 3, 3, rng);
    EXPECT_EQ(endomorphism_from_json(to_json(e)), e);
  }
}

TEST(Certificates, RankReplay) {
  const Field q = Field::rationals();
  const auto cert = rank(E(q, 2, {"x1^2", "x1^3"}));
  const Json j = to_json(cert);
  EXPECT_EQ(j["rank"], 1);
  EXPECT_EQ(j["relation_ideal"].size(), 1u);
  EXPECT_TRUE(replays(j));
  const auto back = rank_certificate_from_json(j);
  EXPECT_EQ(back.rank, 1);
  EXPECT_EQ(back.endo, cert.endo);

  Json bad = j;
  bad["relation_ideal"] = Json::array({"y1^2 - y2"});
  EXPECT_FALSE(replay_certificate(bad).ok);

  const auto jac = to_json(rank(E(q, 2, {"x1^2", "x1*x2"}), RankMethod::JacobianProbe, {}, 5));
  EXPECT_TRUE(replays(jac));
}

TEST(Certificates, ChainReplayAndTamper) {
  const auto psi = parse_endomorphism(read_text_file(data_path("gf2_counterexample.endo")));
  const auto chain = build_full_chain(psi, {}, 1);
  const Json j = to_json(chain);
  EXPECT_TRUE(replays(j));
  const auto back = chain_certificate_from_json(j);
  EXPECT_EQ(back.length(), chain.length());
  EXPECT_EQ(back.substitutions[0].to_string(psi.field()), chain.substitutions[0].to_string(psi.field()));

  Json bad = j;
  bad["steps"][1]["rank"] = 2;
  EXPECT_FALSE(replay_certificate(bad).ok);
}

TEST(Certificates, ChainWithSpecializationsOverQ) {
  const Field q = Field::rationals();
  const auto chain = build_full_chain(E(q, 3, {"x1*x2 + 3", "x2^2 - 1/2*x3", "x3 + x1"}), {}, 4);
  EXPECT_TRUE(replays(to_json(chain)));
}

TEST(Certificates, BaseAndFailureReplay) {
  const Field q = Field::rationals();
  const auto standard = verify_base_external(KroneckerSystem::standard(q, 2));
  EXPECT_TRUE(replays(to_json(*standard.certificate)));
  EXPECT_TRUE(replays(to_json(normalize_base(*standard.certificate))));
  const auto back = base_certificate_from_json(to_json(*standard.certificate));
  EXPECT_EQ(back.generators, standard.generators);

  const auto example = parse_kronecker(read_text_file(data_path("nonbase_subbase.kron"))).system;
  const auto res = verify_base_external(example);
  const Json fail = base_failure_to_json(example, res.generators, *res.failing_variable);
  EXPECT_EQ(fail["failing_variable"], "x1");
  EXPECT_TRUE(replays(fail));
  // x2 is in K[x1 + x1*x2, x2], so claiming it fails is rejected.
  Json wrong = fail;
  wrong["failing_variable"] = "x2";
  EXPECT_FALSE(replay_certificate(wrong).ok);
}

TEST(Certificates, KroneckerSystemRoundTrip) {
  const auto s = KroneckerSystem::standard(Field::builtin_extension(4), 3);
  const auto back = kronecker_system_from_json(to_json(s));
  EXPECT_EQ(back.entries(), s.entries());
  EXPECT_TRUE(replays(subbase_to_json(s, verify_subbase(s))));
  EXPECT_TRUE(replays(classification_to_json(s, classify_representation(s))));
}

TEST(Certificates, CompareConjugationInverse) {
  const Field q = Field::rationals();
  const auto phi = E(q, 2, {"x1", "x1"});
  const auto psi = Endomorphism::identity(q, 2);
  EXPECT_TRUE(replays(to_json(compare(phi, psi), phi, psi)));
  Json wrong = to_json(compare(phi, psi), phi, psi);
  wrong["relation"] = "equivalent";
  EXPECT_FALSE(replay_certificate(wrong).ok);

  const auto a = parse_automorphism(read_text_file(data_path("swap_frob_gf4.aut")));
  const auto g = parse_endomorphism(read_text_file(data_path("mixed_gf4.endo")));
  EXPECT_TRUE(replays(conjugation_to_json(a, g, conjugate(a, g))));
  EXPECT_EQ(automorphism_from_json(to_json(a)).s_inv(), a.s_inv());

  const std::vector<MultiPoly> s{P("x1 + x2^2", q, 2), P("x2", q, 2)};
  EXPECT_TRUE(replays(inverse_to_json(s, *invert_poly_map(s))));
  EXPECT_FALSE(replay_certificate(inverse_to_json(s, s)).ok);
}

TEST(Certificates, MalformedInputIsAnInputError) {
  for (const char* text : {R"({"kind": "unknown"})", R"({"kind": "rank"})", R"([1, 2])",
                           R"({"kind": "rank", "method": "elimination", "rank": "two",
                               "endomorphism": {"field": "field Q", "vars": 1, "images": ["x1"]},
                               "relation_ideal": []})"}) {
    try {
      replay_certificate(Json::parse(text));
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InputError) << text;
    }
  }
}

}  // namespace
