#include <gtest/gtest.h>

#include "support.hpp"

using namespace endorank;
using namespace endorank::testing;

namespace {

SemiLinearAut aut(const Field& f, unsigned frob, const std::vector<std::string>& s) {
  std::vector<MultiPoly> im;
  for (const auto& t : s) im.push_back(P(t, f, s.size()));
  return SemiLinearAut(FieldAutomorphism::frobenius_power(f, frob), im);
}

TEST(SemiLinear, ApplyExamples) {
  const Field q = Field::rationals();
  const auto id = SemiLinearAut::identity(q, 2);
  EXPECT_EQ(apply_semilinear(id, P("x1*x2 + 3", q, 2)), P("x1*x2 + 3", q, 2));

  const Field f4 = Field::builtin_extension(4);
  const auto frob = aut(f4, 1, {"x1", "x2"});
  EXPECT_EQ(apply_semilinear(frob, P("t*x1", f4, 2)), P("(t+1)*x1", f4, 2));

  const auto tri = aut(q, 0, {"x1 + x2^2", "x2"});
  EXPECT_EQ(apply_semilinear(tri, P("x1", q, 2)), P("x1 + x2^2", q, 2));
}

TEST(SemiLinear, CorruptedInverseIsCaughtAtConstruction) {
  const Field q = Field::rationals();
  try {
    SemiLinearAut(FieldAutomorphism::identity(q), {P("x1 + x2^2", q, 2), P("x2", q, 2)},
                  {P("x1 + x2^2", q, 2), P("x2", q, 2)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvariantViolation);
  }
  try {
    aut(q, 0, {"x1^2", "x2"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotABase);
  }
}

TEST(Conjugation, Examples) {
  const Field q = Field::rationals();
  const auto g = E(q, 2, {"x1^2 + x2", "x1*x2"});
  EXPECT_EQ(conjugate(SemiLinearAut::identity(q, 2), g), g);

  const auto swap = aut(q, 0, {"x2", "x1"});
  EXPECT_EQ(conjugate(swap, kronecker_endo(q, 2, 0, 0)), kronecker_endo(q, 2, 1, 1));
  EXPECT_EQ(conjugate(swap, kronecker_endo(q, 2, 0, 1)), kronecker_endo(q, 2, 1, 0));

  const auto cusp = E(q, 2, {"x1^2", "x1^3"});
  const auto tri = aut(q, 0, {"x1 + x2^2", "x2"});
  EXPECT_EQ(rank(conjugate(tri, cusp)).rank, rank(cusp).rank);
}

TEST(Conjugation, FrobeniusTwistsConstants) {
  const Field f4 = Field::builtin_extension(4);
  const auto frob = aut(f4, 1, {"x1", "x2"});
  const auto g = E(f4, 2, {"t*x1", "x2 + t"});
  EXPECT_EQ(conjugate(frob, g), E(f4, 2, {"(t+1)*x1", "x2 + t + 1"}));
}

TEST(Conjugation, IdentityAutomorphismPassesEverything) {
  const Field q = Field::rationals();
  const auto rep = verify_automorphism_properties(SemiLinearAut::identity(q, 2), endomorphism_pairs(q, 2, 10, 2, 3));
  EXPECT_TRUE(rep.ok());
  EXPECT_FALSE(rep.semi_inner);
}

TEST(Conjugation, FrobeniusSwapIsSemiInner) {
  const Field f4 = Field::builtin_extension(4);
  const auto a = aut(f4, 1, {"x2", "x1"});
  const auto rep = verify_automorphism_properties(a, endomorphism_pairs(f4, 2, 12, 2, 8));
  EXPECT_EQ(rep.homomorphism_violations, 0u);
  EXPECT_EQ(rep.rank_violations, 0u);
  EXPECT_TRUE(rep.identity_preserved);
  EXPECT_TRUE(rep.kronecker_base_check);
  EXPECT_TRUE(rep.semi_inner);
}

class AutProperties : public ::testing::TestWithParam<int> {};

TEST_P(AutProperties, FunctorialityInverseAndConstants) {
  const Field f = small_fields()[static_cast<std::size_t>(GetParam())];
  std::mt19937_64 rng(1000 + GetParam());
  const unsigned frob = f.degree() > 1 ? 1 : 0;
  for (int i = 0; i < 4; ++i) {
    const SemiLinearAut a(FieldAutomorphism::frobenius_power(f, frob), random_tame_map(f, 2, 2, rng));
    const SemiLinearAut b(FieldAutomorphism::identity(f), random_tame_map(f, 2, 1, rng));
    const auto ab = compose(a, b);
    for (int k = 0; k < 3; ++k) {
      const auto g = random_endomorphism(f, 2, 2, 2, rng);
      ASSERT_EQ(conjugate(ab, g), conjugate(a, conjugate(b, g)));
      ASSERT_EQ(conjugate(a.inverse(), conjugate(a, g)), g);
    }
    const auto c = Endomorphism::constant(f, random_point(f, 2, rng));
    const auto image = conjugate(a, c);
    ASSERT_TRUE(image.is_constant_map());
    ASSERT_EQ(rank(image).rank, 0);
    // On points the conjugate is s~^{-1} . c . s~ twisted by delta; its value is a(s_inv) at c.
    std::vector<FieldElement> expect;
    for (const auto& w : a.s_inv()) {
      const auto twisted = w.map_coefficients([&](const Scalar& v) { return a.delta().inverse().apply(v); });
      expect.push_back(apply_automorphism(a.delta(), twisted.evaluate(c.constant_point())));
    }
    ASSERT_EQ(image.constant_point(), expect);
  }
}

TEST_P(AutProperties, TameCorpusPassesAllChecks) {
  const Field f = small_fields()[static_cast<std::size_t>(GetParam())];
  std::mt19937_64 rng(1100 + GetParam());
  const SemiLinearAut a(FieldAutomorphism::frobenius_power(f, f.degree() > 1 ? 1 : 0), random_tame_map(f, 2, 2, rng));
  const auto rep = verify_automorphism_properties(a, endomorphism_pairs(f, 2, 8, 2, 77));
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.rank_pairs.size(), 16u);
}

INSTANTIATE_TEST_SUITE_P(Fields, AutProperties, ::testing::Range(0, 4));

}  // namespace
