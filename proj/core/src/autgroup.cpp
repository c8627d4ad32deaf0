#include "endorank/autgroup.hpp"

#include <algorithm>

namespace endorank {

namespace {

MultiPoly twist(const FieldAutomorphism& delta, const MultiPoly& f) {
  if (delta.is_identity()) return f;
  return f.map_coefficients([&](const Scalar& c) { return delta.apply(c); });
}

void check_shape(const FieldAutomorphism& delta, const std::vector<MultiPoly>& s) {
  if (s.empty()) fail(ErrorCode::ArityMismatch, "automorphism needs at least one variable");
  for (const auto& f : s) {
    if (f.field() != delta.field()) fail(ErrorCode::SpecMismatch, "automorphism images over a different field");
    if (f.nvars() != s.size()) fail(ErrorCode::ArityMismatch, "automorphism must map n variables to n polynomials");
  }
}

}  // namespace

SemiLinearAut::SemiLinearAut(FieldAutomorphism delta, std::vector<MultiPoly> s, const EngineConfig& cfg)
    : delta_(std::move(delta)), s_(std::move(s)) {
  check_shape(delta_, s_);
  auto inv = invert_poly_map(s_, cfg);
  if (!inv) fail(ErrorCode::NotABase, "s is not an invertible polynomial map");
  s_inv_ = std::move(*inv);
}

SemiLinearAut::SemiLinearAut(FieldAutomorphism delta, std::vector<MultiPoly> s, std::vector<MultiPoly> s_inv)
    : delta_(std::move(delta)), s_(std::move(s)), s_inv_(std::move(s_inv)) {
  check_shape(delta_, s_);
  check_shape(delta_, s_inv_);
  if (s_inv_.size() != s_.size()) fail(ErrorCode::InvariantViolation, "s and s_inv differ in arity");
  const auto xs = Endomorphism::identity(field(), nvars()).images();
  for (std::size_t k = 0; k < nvars(); ++k) {
    if (s_[k].substitute(s_inv_, 0xFFFF) != xs[k] || s_inv_[k].substitute(s_, 0xFFFF) != xs[k])
      fail(ErrorCode::InvariantViolation, "s_inv is not inverse to s at x" + std::to_string(k + 1));
  }
}

SemiLinearAut SemiLinearAut::identity(const Field& f, std::size_t n) {
  auto xs = Endomorphism::identity(f, n).images();
  return SemiLinearAut(FieldAutomorphism::identity(f), xs, xs);
}

SemiLinearAut SemiLinearAut::inverse() const {
  const FieldAutomorphism d = delta_.inverse();
  std::vector<MultiPoly> s, s_inv;
  for (const auto& f : s_inv_) s.push_back(twist(d, f));
  for (const auto& f : s_) s_inv.push_back(twist(d, f));
  return SemiLinearAut(d, std::move(s), std::move(s_inv));
}

MultiPoly apply_semilinear(const SemiLinearAut& a, const MultiPoly& f, unsigned degree_cap) {
  if (f.field() != a.field()) fail(ErrorCode::SpecMismatch, "polynomial over a different field");
  if (f.nvars() != a.nvars()) fail(ErrorCode::ArityMismatch, "polynomial arity differs from automorphism");
  return twist(a.delta(), f).substitute(a.s(), degree_cap);
}

SemiLinearAut compose(const SemiLinearAut& a, const SemiLinearAut& b, const EngineConfig& cfg) {
  if (a.field() != b.field()) fail(ErrorCode::SpecMismatch, "automorphisms over different fields");
  if (a.nvars() != b.nvars()) fail(ErrorCode::ArityMismatch, "automorphisms of different arity");
  std::vector<MultiPoly> s;
  for (const auto& f : b.s()) s.push_back(apply_semilinear(a, f, cfg.degree_cap));
  return SemiLinearAut(a.delta().compose(b.delta()), std::move(s), cfg);
}

Endomorphism conjugate(const SemiLinearAut& a, const Endomorphism& g, unsigned degree_cap) {
  if (g.field() != a.field()) fail(ErrorCode::SpecMismatch, "endomorphism over a different field");
  if (g.nvars() != a.nvars()) fail(ErrorCode::ArityMismatch, "endomorphism arity differs from automorphism");
  const FieldAutomorphism d_inv = a.delta().inverse();
  std::vector<MultiPoly> im;
  for (const auto& w : a.s_inv()) im.push_back(apply_semilinear(a, g.apply(twist(d_inv, w), degree_cap), degree_cap));
  return Endomorphism(g.field(), g.nvars(), std::move(im));
}

std::vector<std::pair<Endomorphism, Endomorphism>> endomorphism_pairs(const Field& f, std::size_t n,
                                                                      std::size_t count, unsigned max_degree,
                                                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Endomorphism, Endomorphism>> out;
  for (std::size_t i = 0; i < count; ++i) {
    auto g = random_endomorphism(f, n, max_degree, 2, rng);
    auto h = random_endomorphism(f, n, max_degree, 2, rng);
    out.emplace_back(std::move(g), std::move(h));
  }
  return out;
}

ConjugationReport verify_automorphism_properties(const SemiLinearAut& a,
                                                 const std::vector<std::pair<Endomorphism, Endomorphism>>& corpus,
                                                 const EngineConfig& cfg) {
  const unsigned cap = cfg.degree_cap;
  const Field& F = a.field();
  const std::size_t n = a.nvars();
  ConjugationReport r{a, {}, {}};
  r.semi_inner = !a.delta().is_identity();

  auto rank_of = [&](const Endomorphism& e) { return rank(e, RankMethod::Elimination, cfg).rank; };
  for (const auto& [g, h] : corpus) {
    ConjugationSample s{g, h, conjugate(a, g, cap), conjugate(a, h, cap), conjugate(a, compose(g, h, cap), cap)};
    s.homomorphism = s.phi_gh == compose(s.phi_g, s.phi_h, cap);
    if (!s.homomorphism) ++r.homomorphism_violations;
    auto check_rank = [&](const Endomorphism& before, const Endomorphism& after) {
      const int rb = rank_of(before), ra = rank_of(after);
      r.rank_pairs.emplace_back(rb, ra);
      if (rb != ra) ++r.rank_violations;
    };
    check_rank(g, s.phi_g);
    check_rank(h, s.phi_h);
    r.samples.push_back(std::move(s));
  }

  const auto id = Endomorphism::identity(F, n);
  r.identity_preserved = conjugate(a, id, cap) == id;

  const auto standard = KroneckerSystem::standard(F, n);
  std::vector<Endomorphism> entries;
  for (const auto& e : standard.entries()) entries.push_back(conjugate(a, e, cap));
  const KroneckerSystem image(n, std::move(entries), conjugate(a, *standard.zero(), cap));
  if (verify_subbase(image, cfg).ok && satisfies_base_relations(image, a.s(), cap)) {
    const auto ext = verify_base_external(image, a.s(), cfg);
    r.kronecker_base_check = ext.certificate.has_value();
  }
  return r;
}

std::vector<MultiPoly> random_tame_map(const Field& f, std::size_t n, unsigned steps, std::mt19937_64& rng) {
  std::vector<MultiPoly> s = Endomorphism::identity(f, n).images();
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (unsigned step = 0; step < steps && n > 1; ++step) {
    const std::size_t i = pick(rng);
    std::vector<std::size_t> others;
    for (std::size_t k = 0; k < n; ++k)
      if (k != i) others.push_back(k);
    const MultiPoly p = random_poly(f, n - 1, 2, 2, rng).remap(n, others);
    auto elem = Endomorphism::identity(f, n).images();
    elem[i] += p;
    for (auto& sk : s) sk = sk.substitute(elem);
  }
  // Affine part: a random permutation, nonzero scalars and a translation.
  std::vector<std::size_t> perm(n);
  for (std::size_t k = 0; k < n; ++k) perm[k] = k;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<MultiPoly> affine;
  for (std::size_t k = 0; k < n; ++k) {
    Scalar c = f.one();
    Scalar t = f.zero();
    if (f.is_finite()) {
      if (f.order() > 2) c = f.element_at(1 + rng() % (f.order() - 1));
      t = f.element_at(rng() % f.order());
    } else {
      c = f.from_int(static_cast<std::int64_t>(1 + rng() % 3));
      t = f.from_int(static_cast<std::int64_t>(rng() % 5) - 2);
    }
    affine.push_back(MultiPoly::variable(f, n, perm[k]).scale(c) + MultiPoly::constant(f, n, t));
  }
  for (auto& sk : s) sk = sk.substitute(affine);
  return s;
}

}  // namespace endorank
