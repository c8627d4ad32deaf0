#include <gtest/gtest.h>

#include "support.hpp"

using namespace endorank;
using namespace endorank::testing;

namespace {

KroneckerSystem nonbase_system() { return parse_kronecker(read_text_file(data_path("nonbase_subbase.kron"))).system; }

// Kronecker endos written in the coordinate base sigma, zero map transported too.
KroneckerSystem conjugated_standard(const Field& f, std::size_t n, const std::vector<MultiPoly>& sigma) {
  const auto inv = invert_poly_map(sigma);
  return KroneckerSystem::standard(f, n).conjugated(Endomorphism(f, n, sigma), Endomorphism(f, n, *inv));
}

Matrix unit_matrix(const Field& f, std::size_t n, std::size_t i, std::size_t j) {
  Matrix m(n, std::vector<FieldElement>(n, FieldElement(f, f.zero())));
  m[i][j] = FieldElement(f, f.one());
  return m;
}

TEST(Subbase, StandardSystemsPass) {
  for (const Field& f : small_fields())
    for (std::size_t n : {2u, 3u}) {
      const auto rep = verify_subbase(KroneckerSystem::standard(f, n));
      EXPECT_TRUE(rep.ok) << f.header() << " n=" << n;
    }
}

TEST(Subbase, NonBaseSubbasePasses) {
  const auto rep = verify_subbase(nonbase_system());
  EXPECT_TRUE(rep.ok);
  EXPECT_TRUE(rep.violations.empty());
}

TEST(Subbase, ZeroEntryBreaksRelations) {
  const Field q = Field::rationals();
  auto entries = KroneckerSystem::standard(q, 2).entries();
  entries[1] = Endomorphism::zero(q, 2);  // e12
  const auto rep = verify_subbase(KroneckerSystem(2, entries, Endomorphism::zero(q, 2)));
  EXPECT_FALSE(rep.ok);
  const auto has = [&](const std::string& v) {
    return std::find(rep.violations.begin(), rep.violations.end(), v) != rep.violations.end();
  };
  EXPECT_TRUE(has("e12*e21 != e11")) << ::testing::PrintToString(rep.violations);
  EXPECT_TRUE(has("rank(e12) = 0"));
}

TEST(Classification, SingularAndNonSingular) {
  const Field q = Field::rationals();
  const auto c = Endomorphism::constant(q, {fe(q, 2), fe(q, 3)});
  const KroneckerSystem singular(2, std::vector<Endomorphism>(4, c), c);
  const auto s = classify_representation(singular);
  EXPECT_EQ(s.kind, Representation::Singular);
  EXPECT_EQ(s.ranks, std::vector<int>(4, 0));
  const auto ns = classify_representation(KroneckerSystem::standard(q, 2));
  EXPECT_EQ(ns.kind, Representation::NonSingular);
  EXPECT_EQ(ns.ranks, std::vector<int>(4, 1));
  auto mixed = KroneckerSystem::standard(q, 2).entries();
  mixed[0] = c;
  EXPECT_THROW(classify_representation(KroneckerSystem(2, mixed)), Error);
}

TEST(Structure, StandardSystemHasMatrixUnits) {
  const Field q = Field::rationals();
  const auto rep = structure_analysis(KroneckerSystem::standard(q, 2));
  EXPECT_EQ(rep.fixed_point, (std::vector<FieldElement>{fe(q, 0), fe(q, 0)}));
  EXPECT_TRUE(rep.matrix_units);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(rep.linear_parts[i * 2 + j], unit_matrix(q, 2, i, j));
}

TEST(Structure, NonBaseSubbaseLinearParts) {
  const Field q = Field::rationals();
  const auto rep = structure_analysis(nonbase_system());
  EXPECT_EQ(rep.fixed_point, (std::vector<FieldElement>{fe(q, 0), fe(q, 0)}));
  EXPECT_TRUE(rep.constant_terms_vanish);
  // Degree-1 coefficients read off by hand: L[r][k] = coeff of x_r in image k.
  EXPECT_EQ(rep.linear_parts[0], unit_matrix(q, 2, 0, 0));
  EXPECT_EQ(rep.linear_parts[1], unit_matrix(q, 2, 0, 1));
  EXPECT_EQ(rep.linear_parts[2], unit_matrix(q, 2, 1, 0));
  EXPECT_EQ(rep.linear_parts[3], unit_matrix(q, 2, 1, 1));
  const Matrix zero(2, std::vector<FieldElement>(2, fe(q, 0)));
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t i = a / 2, j = a % 2, k = b / 2, m = b % 2;
      const auto prod = matrix_multiply(rep.linear_parts[a], rep.linear_parts[b]);
      EXPECT_EQ(prod, j == k ? rep.linear_parts[i * 2 + m] : zero) << i << j << k << m;
    }
  EXPECT_TRUE(rep.matrix_units);
  EXPECT_TRUE(rep.basis_independent);
}

TEST(Structure, TranslatedSystemRecoversShift) {
  const Field q = Field::rationals();
  const auto sys = conjugated_standard(q, 2, {P("x1 + 3", q, 2), P("x2 - 2", q, 2)});
  const auto rep = structure_analysis(sys, 0);
  EXPECT_TRUE(rep.constant_terms_vanish);
  EXPECT_TRUE(rep.matrix_units);
  // The fixed point is a common fixed point of all e'_ii.
  for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(sys.entry(i, i).evaluate(rep.fixed_point)[i], rep.fixed_point[i]);
  for (const auto& e : rep.translated.entries())
    for (const auto& im : e.images()) EXPECT_TRUE(im.constant_term().is_zero());
}

TEST(ImageGenerator, Examples) {
  const Field q = Field::rationals();
  const auto gen = image_generator(E(q, 2, {"x1 + x1*x2", "0"}));
  ASSERT_TRUE(gen.has_value());
  EXPECT_EQ(gen->z, P("x1 + x1*x2", q, 2));
  const auto std11 = image_generator(kronecker_endo(q, 2, 0, 0));
  ASSERT_TRUE(std11.has_value());
  EXPECT_EQ(std11->z, P("x1", q, 2));
  try {
    image_generator(E(q, 2, {"x1^2", "0"}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PreconditionViolated);
  }
}

TEST(ExternalBase, StandardSystemsAcrossFields) {
  for (const Field& f : small_fields())
    for (std::size_t n : {2u, 3u}) {
      const auto res = verify_base_external(KroneckerSystem::standard(f, n));
      ASSERT_TRUE(res.certificate.has_value()) << f.header();
      EXPECT_EQ(res.generators, Endomorphism::identity(f, n).images());
      std::vector<MultiPoly> ys;
      for (std::size_t k = 0; k < n; ++k) ys.push_back(MultiPoly::variable(f, n, k));
      EXPECT_EQ(res.certificate->witnesses, ys);
    }
}

TEST(ExternalBase, NonBaseSubbaseIsNotABase) {
  const auto res = verify_base_external(nonbase_system());
  EXPECT_FALSE(res.certificate.has_value());
  ASSERT_TRUE(res.failing_variable.has_value());
  EXPECT_EQ(*res.failing_variable, 0u);
  const Field q = Field::rationals();
  EXPECT_EQ(res.generators, (std::vector<MultiPoly>{P("x1 + x1*x2", q, 2), P("x2", q, 2)}));
}

TEST(ExternalBase, ConjugatedStandardSystem) {
  const Field q = Field::rationals();
  const std::vector<MultiPoly> s{P("x1 + x2^2", q, 2), P("x2", q, 2)};
  const auto res = verify_base_external(conjugated_standard(q, 2, s));
  ASSERT_TRUE(res.certificate.has_value());
  EXPECT_EQ(res.generators, s);
  // Round trip: W_k(Z) = x_k.
  for (std::size_t k = 0; k < 2; ++k)
    EXPECT_EQ(res.certificate->witnesses[k].substitute(res.generators), MultiPoly::variable(q, 2, k));
}

TEST(Normalize, StandardIsFixed) {
  const Field q = Field::rationals();
  const auto res = verify_base_external(KroneckerSystem::standard(q, 2));
  const auto norm = normalize_base(*res.certificate);
  EXPECT_EQ(norm.generators, res.generators);
  EXPECT_TRUE(norm.normalized);
}

TEST(Normalize, RecoversScaling) {
  const Field q = Field::rationals();
  const auto sys = conjugated_standard(q, 2, {P("3*x1", q, 2), P("-2*x2", q, 2)});
  const auto res = verify_base_external(sys);
  ASSERT_TRUE(res.certificate.has_value());
  const auto norm = normalize_base(*res.certificate);
  EXPECT_TRUE(satisfies_base_relations(sys, norm.generators));
  // z'_1 is monic; the other generators follow from e'_1i(z'_i) = z'_1.
  EXPECT_EQ(norm.generators[0].leading_term().coeff, q.one());
  EXPECT_EQ(sys.entry(0, 1).apply(norm.generators[1]), norm.generators[0]);
}

TEST(Normalize, EndToEndPipelines) {
  const Field q = Field::rationals();
  const Field f4 = Field::builtin_extension(4);
  const std::vector<std::pair<Field, std::vector<std::string>>> cases{
      {q, {"x1 + x2^2", "x2"}},
      {q, {"5*x1 + 3 + x2^2", "7*x2 - 2"}},
      {q, {"x2", "x1 - 4"}},
      {f4, {"t*x1 + x2^2 + 1", "(t+1)*x2 + t"}},
      {Field::prime(3), {"x1 + 2*x2^3", "2*x2 + 1"}},
  };
  for (const auto& [f, text] : cases) {
    std::vector<MultiPoly> s;
    for (const auto& t : text) s.push_back(P(t, f, 2));
    const auto sys = conjugated_standard(f, 2, s);
    const auto res = verify_base_external(sys);
    ASSERT_TRUE(res.certificate.has_value()) << text[0];
    const auto norm = normalize_base(*res.certificate);
    EXPECT_TRUE(satisfies_base_relations(sys, norm.generators)) << text[0];
    for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(norm.witnesses[k].substitute(norm.generators), MultiPoly::variable(f, 2, k));
  }
}

TEST(InternalBase, StandardAgainstStandardAndNonBase) {
  const Field q = Field::rationals();
  const auto s = KroneckerSystem::standard(q, 2);
  const std::vector<Endomorphism> alphas{kronecker_endo(q, 2, 0, 0), kronecker_endo(q, 2, 1, 1)};
  EXPECT_TRUE(check_internal_base_condition(s, s, alphas).ok);
  const auto id = Endomorphism::identity(q, 2);
  const auto rep = check_internal_base_condition(s, nonbase_system(), {id, id});
  EXPECT_TRUE(rep.ok) << ::testing::PrintToString(rep.failures);
  try {
    check_internal_base_condition(nonbase_system(), s, alphas);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PreconditionViolated);
  }
}

TEST(KroneckerProperties, ExternalBaseAgreesWithInvertibility) {
  std::mt19937_64 rng(31);
  for (const Field& f : {Field::rationals(), Field::prime(3), Field::builtin_extension(4)}) {
    for (int i = 0; i < 5; ++i) {
      const auto s = random_tame_map(f, 2, 1, rng);
      const auto sys = conjugated_standard(f, 2, s);
      const auto res = verify_base_external(sys);
      ASSERT_EQ(res.certificate.has_value(), invert_poly_map(res.generators).has_value());
      ASSERT_TRUE(res.certificate.has_value());
      const auto cls = classify_representation(sys);
      ASSERT_EQ(cls.kind, Representation::NonSingular);
      for (const auto& e : sys.entries()) ASSERT_EQ(rank(e).rank, 1);
      ASSERT_TRUE(structure_analysis(sys).matrix_units);
      ASSERT_TRUE(satisfies_base_relations(sys, normalize_base(*res.certificate).generators));
    }
  }
  // A subbase whose generators are not invertible: both tests say no.
  const auto res = verify_base_external(nonbase_system());
  EXPECT_FALSE(res.certificate.has_value());
  EXPECT_FALSE(invert_poly_map(res.generators).has_value());
}

}  // namespace
