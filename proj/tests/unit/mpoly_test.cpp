#include <gtest/gtest.h>

#include "support.hpp"

using namespace endorank;
using namespace endorank::testing;

namespace {

TEST(MultiPoly, ArithmeticExamples) {
  const Field q = Field::rationals();
  EXPECT_EQ(P("(x1 + x2)*(x1 - x2)", q, 2), P("x1^2 - x2^2", q, 2));
  const Field f2 = Field::prime(2);
  EXPECT_EQ(P("(x1 + x2)^2", f2, 2), P("x1^2 + x2^2", f2, 2));
  EXPECT_TRUE((MultiPoly::zero(q, 2) * P("x1 + 3*x2", q, 2)).is_zero());
  EXPECT_TRUE((P("x1", q, 2) - P("x1", q, 2)).is_zero());
}

TEST(MultiPoly, SubstituteExamples) {
  const Field q = Field::rationals();
  EXPECT_EQ(P("x1*x2", q, 2).substitute({P("x2", q, 2), P("x1", q, 2)}), P("x1*x2", q, 2));
  EXPECT_EQ(P("x1^2 + x2", q, 2).substitute({P("x1", q, 2), P("0", q, 2)}), P("x1^2", q, 2));
  const MultiPoly u = P("x1 + x1*x2", q, 2);
  EXPECT_EQ(u.substitute({u, P("0", q, 2)}), u);
}

TEST(MultiPoly, SubstituteRespectsDegreeCap) {
  const Field q = Field::rationals();
  try {
    P("x1^10", q, 1).substitute({P("x1^10", q, 1)}, 50);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegreeCapExceeded);
  }
}

TEST(MultiPoly, EvaluateExamples) {
  const Field q = Field::rationals();
  EXPECT_EQ(P("x1^2 + x2", q, 2).evaluate({fe(q, 2), fe(q, 3)}), fe(q, 7));
  const Field f2 = Field::prime(2);
  const MultiPoly c = P("(x1^2 - x1)*(x2^2 - x2)*x1", f2, 2);
  for (std::int64_t a = 0; a < 2; ++a) {
    EXPECT_TRUE(P("x1^2 - x1", f2, 1).evaluate({fe(f2, a)}).is_zero());
    for (std::int64_t b = 0; b < 2; ++b) EXPECT_TRUE(c.evaluate({fe(f2, a), fe(f2, b)}).is_zero());
  }
}

TEST(MultiPoly, DerivativeExamples) {
  const Field q = Field::rationals();
  EXPECT_EQ(P("x1^2*x2", q, 2).partial_derivative(0), P("2*x1*x2", q, 2));
  EXPECT_TRUE(P("x1^2", Field::prime(2), 2).partial_derivative(0).is_zero());
  EXPECT_TRUE(P("x1^3", q, 2).partial_derivative(1).is_zero());
}

TEST(MultiPoly, LeadingTermIsGrevLexMaximum) {
  const Field q = Field::rationals();
  const MultiPoly f = P("x1^2 + x1*x2^2 + x3^3 + 5", q, 3);
  // Degree 3 ties broken by the smallest last exponent: x1*x2^2 beats x3^3.
  EXPECT_EQ(S(MultiPoly::monomial(q, f.leading_term().mono, f.leading_term().coeff)), "x1*x2^2");
  EXPECT_EQ(f.total_degree(), 3u);
  EXPECT_EQ(f.constant_term(), fe(q, 5));
}

TEST(MultiPoly, MixedFieldsRejected) {
  EXPECT_THROW(P("x1", Field::prime(2), 1) + P("x1", Field::prime(3), 1), Error);
}

class MultiPolyProperties : public ::testing::TestWithParam<int> {};

TEST_P(MultiPolyProperties, SubstituteIsHomomorphic) {
  const Field f = small_fields()[static_cast<std::size_t>(GetParam())];
  std::mt19937_64 rng(11 + GetParam());
  for (int i = 0; i < 60; ++i) {
    const auto a = random_poly(f, 3, 3, 4, rng), b = random_poly(f, 3, 3, 4, rng);
    std::vector<MultiPoly> im;
    for (int k = 0; k < 3; ++k) im.push_back(random_poly(f, 2, 2, 3, rng));
    ASSERT_EQ((a * b).substitute(im), a.substitute(im) * b.substitute(im));
    ASSERT_EQ((a + b).substitute(im), a.substitute(im) + b.substitute(im));
  }
}

TEST_P(MultiPolyProperties, EvaluateAgreesWithConstantSubstitution) {
  const Field f = small_fields()[static_cast<std::size_t>(GetParam())];
  std::mt19937_64 rng(21 + GetParam());
  for (int i = 0; i < 60; ++i) {
    const auto a = random_poly(f, 3, 4, 5, rng);
    const auto pt = random_point(f, 3, rng);
    std::vector<MultiPoly> consts;
    for (const auto& c : pt) consts.push_back(MultiPoly::constant(c, 3));
    const MultiPoly s = a.substitute(consts);
    ASSERT_TRUE(s.is_constant());
    ASSERT_EQ(s.constant_term(), a.evaluate(pt));
  }
}

TEST_P(MultiPolyProperties, LeibnizRule) {
  const Field f = small_fields()[static_cast<std::size_t>(GetParam())];
  std::mt19937_64 rng(31 + GetParam());
  for (int i = 0; i < 60; ++i) {
    const auto a = random_poly(f, 3, 3, 4, rng), b = random_poly(f, 3, 3, 4, rng);
    for (std::size_t v = 0; v < 3; ++v)
      ASSERT_EQ((a * b).partial_derivative(v), a.partial_derivative(v) * b + a * b.partial_derivative(v));
  }
}

TEST_P(MultiPolyProperties, ParsePrintRoundTrip) {
  const Field f = small_fields()[static_cast<std::size_t>(GetParam())];
  std::mt19937_64 rng(41 + GetParam());
  for (int i = 0; i < 100; ++i) {
    const auto a = random_poly(f, 4, 5, 6, rng);
    ASSERT_EQ(P(S(a), f, 4), a) << S(a);
  }
}

TEST_P(MultiPolyProperties, ProductEvaluatesPointwise) {
  const Field f = small_fields()[static_cast<std::size_t>(GetParam())];
  std::mt19937_64 rng(51 + GetParam());
  for (int i = 0; i < 60; ++i) {
    const auto a = random_poly(f, 2, 4, 5, rng), b = random_poly(f, 2, 4, 5, rng);
    const auto pt = random_point(f, 2, rng);
    ASSERT_EQ((a * b).evaluate(pt), a.evaluate(pt) * b.evaluate(pt));
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, MultiPolyProperties, ::testing::Range(0, 4));

}  // namespace
