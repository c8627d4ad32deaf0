#include "endorank/endo.hpp"

#include <algorithm>

namespace endorank {

Endomorphism::Endomorphism(Field field, std::size_t nvars, std::vector<MultiPoly> images)
    : field_(std::move(field)), nvars_(nvars), images_(std::move(images)) {
  if (nvars_ == 0 || nvars_ > kMaxVars) fail(ErrorCode::ArityMismatch, "endomorphism arity out of range");
  if (images_.size() != nvars_) fail(ErrorCode::ArityMismatch, "need one image per variable");
  for (const auto& f : images_) {
    if (f.field() != field_) fail(ErrorCode::SpecMismatch, "image over a different field");
    if (f.nvars() != nvars_) fail(ErrorCode::ArityMismatch, "image in a ring of different arity");
  }
}

Endomorphism::Endomorphism(std::vector<MultiPoly> images)
    : field_(images.empty() ? Field() : images.front().field()), nvars_(images.size()) {
  *this = Endomorphism(field_, nvars_, std::move(images));
}

Endomorphism Endomorphism::identity(const Field& f, std::size_t n) {
  std::vector<MultiPoly> im;
  for (std::size_t k = 0; k < n; ++k) im.push_back(MultiPoly::variable(f, n, k));
  return Endomorphism(f, n, std::move(im));
}

Endomorphism Endomorphism::constant(const Field& f, const std::vector<FieldElement>& point) {
  std::vector<MultiPoly> im;
  for (const auto& c : point) {
    require_same_field(f, c.field());
    im.push_back(MultiPoly::constant(f, point.size(), c.value()));
  }
  return Endomorphism(f, point.size(), std::move(im));
}

Endomorphism Endomorphism::zero(const Field& f, std::size_t n) {
  return Endomorphism(f, n, std::vector<MultiPoly>(n, MultiPoly::zero(f, n)));
}

bool Endomorphism::is_constant_map() const {
  return std::all_of(images_.begin(), images_.end(), [](const MultiPoly& f) { return f.is_constant(); });
}

std::vector<FieldElement> Endomorphism::constant_point() const {
  if (!is_constant_map()) fail(ErrorCode::PreconditionViolated, "not a constant map");
  std::vector<FieldElement> out;
  for (const auto& f : images_) out.push_back(f.constant_term());
  return out;
}

std::uint32_t Endomorphism::max_degree() const {
  std::uint32_t d = 0;
  for (const auto& f : images_) d = std::max(d, f.total_degree());
  return d;
}

MultiPoly Endomorphism::apply(const MultiPoly& f, unsigned degree_cap) const {
  if (f.field() != field_) fail(ErrorCode::SpecMismatch, "polynomial over a different field");
  if (f.nvars() != nvars_) fail(ErrorCode::ArityMismatch, "polynomial arity differs from endomorphism");
  return f.substitute(images_, degree_cap);
}

std::vector<FieldElement> Endomorphism::evaluate(const std::vector<FieldElement>& point) const {
  std::vector<FieldElement> out;
  for (const auto& f : images_) out.push_back(f.evaluate(point));
  return out;
}

Endomorphism compose(const Endomorphism& g, const Endomorphism& f, unsigned degree_cap) {
  if (g.field() != f.field()) fail(ErrorCode::SpecMismatch, "composing endomorphisms over different fields");
  if (g.nvars() != f.nvars()) fail(ErrorCode::ArityMismatch, "composing endomorphisms of different arity");
  std::vector<MultiPoly> im;
  im.reserve(f.nvars());
  for (const auto& fk : f.images()) im.push_back(fk.substitute(g.images(), degree_cap));
  return Endomorphism(f.field(), f.nvars(), std::move(im));
}

Endomorphism kronecker_endo(const Field& f, std::size_t n, std::size_t i, std::size_t j) {
  if (i >= n || j >= n) fail(ErrorCode::InvalidIndex, "Kronecker index out of range");
  std::vector<MultiPoly> im(n, MultiPoly::zero(f, n));
  im[j] = MultiPoly::variable(f, n, i);
  return Endomorphism(f, n, std::move(im));
}

Endomorphism kronecker_endo(std::size_t i, std::size_t j, const std::vector<MultiPoly>& base, const EngineConfig& cfg) {
  if (base.empty()) fail(ErrorCode::ArityMismatch, "empty base");
  const Endomorphism sigma(base);
  const auto inverse = invert_poly_map(base, cfg);
  if (!inverse) fail(ErrorCode::NotABase, "base is not an invertible polynomial map");
  const Endomorphism sigma_inv(*inverse);
  const auto e = kronecker_endo(sigma.field(), sigma.nvars(), i, j);
  return compose(sigma, compose(e, sigma_inv, cfg.degree_cap), cfg.degree_cap);
}

Ideal relation_ideal(const Endomorphism& phi, const EngineConfig& cfg) {
  const std::size_t n = phi.nvars();
  if (2 * n > kMaxVars) fail(ErrorCode::ArityMismatch, "relation ideal needs 2n <= 16 variables");
  std::vector<std::size_t> x_index(n);
  for (std::size_t k = 0; k < n; ++k) x_index[k] = k;
  std::vector<MultiPoly> gens;
  for (std::size_t i = 0; i < n; ++i)
    gens.push_back(MultiPoly::variable(phi.field(), 2 * n, n + i) - phi.image(i).remap(2 * n, x_index));
  const Ideal graph(phi.field(), 2 * n, std::move(gens));
  return eliminate(graph, (1u << n) - 1, cfg);
}

int matrix_rank(std::vector<std::vector<FieldElement>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  int r = 0;
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(r) < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    const FieldElement inv = m[r][c].inv();
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c].is_zero()) continue;
      const FieldElement factor = m[i][c] * inv;
      for (std::size_t k = c; k < cols; ++k) m[i][k] = m[i][k] - factor * m[r][k];
    }
    ++r;
  }
  return r;
}

int jacobian_rank_at(const Endomorphism& phi, const std::vector<FieldElement>& point) {
  const std::size_t n = phi.nvars();
  if (point.size() != n) fail(ErrorCode::ArityMismatch, "probe point has wrong arity");
  std::vector<std::vector<FieldElement>> jac;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<FieldElement> row;
    for (std::size_t j = 0; j < n; ++j) row.push_back(phi.image(i).partial_derivative(j).evaluate(point));
    jac.push_back(std::move(row));
  }
  return matrix_rank(std::move(jac));
}

std::vector<FieldElement> random_point(const Field& f, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<FieldElement> out;
  for (std::size_t k = 0; k < n; ++k) {
    if (f.is_finite()) {
      std::uniform_int_distribution<std::uint64_t> d(0, f.order() - 1);
      out.emplace_back(f, f.element_at(d(rng)));
    } else {
      std::uniform_int_distribution<std::int64_t> d(-97, 97);
      out.push_back(FieldElement::from_int(f, d(rng)));
    }
  }
  return out;
}

RankCertificate rank(const Endomorphism& phi, RankMethod method, const EngineConfig& cfg, std::uint64_t seed) {
  if (method == RankMethod::JacobianProbe) {
    if (phi.field().is_finite())
      fail(ErrorCode::MethodRefused, "Jacobian probe is only sound in characteristic 0; use elimination");
    auto point = random_point(phi.field(), phi.nvars(), seed);
    const int r = jacobian_rank_at(phi, point);
    return RankCertificate{phi, Ideal(phi.field(), phi.nvars()), r, method, seed, std::move(point)};
  }
  Ideal rel = relation_ideal(phi, cfg);
  const int r = ideal_dimension(rel, cfg);
  return RankCertificate{phi, std::move(rel), r, method, seed, {}};
}

std::string to_string(Relation r) {
  switch (r) {
    case Relation::Equivalent: return "equivalent";
    case Relation::StrictlyBelow: return "strictly_below";
    case Relation::StrictlyAbove: return "strictly_above";
    case Relation::Incomparable: return "incomparable";
  }
  return "?";
}

Comparison compare(const Endomorphism& phi, const Endomorphism& psi, const EngineConfig& cfg) {
  if (phi.field() != psi.field()) fail(ErrorCode::SpecMismatch, "comparing endomorphisms over different fields");
  if (phi.nvars() != psi.nvars()) fail(ErrorCode::ArityMismatch, "comparing endomorphisms of different arity");
  Comparison c{Relation::Incomparable, relation_ideal(phi, cfg), relation_ideal(psi, cfg), false, false};
  const auto gb_phi = groebner_basis(c.phi_ideal, MonomialOrder::grevlex(), cfg);
  const auto gb_psi = groebner_basis(c.psi_ideal, MonomialOrder::grevlex(), cfg);
  c.phi_contains_psi = ideal_contains(gb_phi, c.psi_ideal);
  c.psi_contains_phi = ideal_contains(gb_psi, c.phi_ideal);
  if (c.phi_contains_psi && c.psi_contains_phi)
    c.relation = Relation::Equivalent;
  else if (c.phi_contains_psi)
    c.relation = Relation::StrictlyBelow;
  else if (c.psi_contains_phi)
    c.relation = Relation::StrictlyAbove;
  return c;
}

MultiPoly random_poly(const Field& f, std::size_t n, unsigned max_degree, unsigned max_terms, std::mt19937_64& rng) {
  std::uniform_int_distribution<unsigned> nterms(1, std::max(1u, max_terms));
  std::uniform_int_distribution<unsigned> deg(0, max_degree);
  std::uniform_int_distribution<std::size_t> var(0, n - 1);
  std::vector<Term> terms;
  const unsigned count = nterms(rng);
  for (unsigned t = 0; t < count; ++t) {
    Monomial m(n);
    const unsigned d = deg(rng);
    for (unsigned e = 0; e < d; ++e) {
      const std::size_t i = var(rng);
      m.set(i, m[i] + 1);
    }
    Scalar c;
    if (f.is_finite()) {
      std::uniform_int_distribution<std::uint64_t> cd(1, f.order() - 1);
      c = f.element_at(cd(rng));
    } else {
      std::uniform_int_distribution<int> cd(-3, 3);
      int v = cd(rng);
      if (v == 0) v = 1;
      c = f.from_int(v);
    }
    terms.push_back({m, c});
  }
  return MultiPoly::from_terms(f, n, std::move(terms));
}

Endomorphism random_endomorphism(const Field& f, std::size_t n, unsigned max_degree, unsigned max_terms,
                                 std::mt19937_64& rng) {
  std::vector<MultiPoly> im;
  for (std::size_t k = 0; k < n; ++k) im.push_back(random_poly(f, n, max_degree, max_terms, rng));
  return Endomorphism(f, n, std::move(im));
}

std::optional<FalsifierCounterexample> equivalence_falsifier(const Endomorphism& phi, const Endomorphism& psi,
                                                             std::size_t samples, std::uint64_t seed,
                                                             const EngineConfig& cfg) {
  const auto cmp = compare(phi, psi, cfg);
  const Field& F = phi.field();
  const std::size_t n = phi.nvars();
  std::mt19937_64 rng(seed);
  // Relation ideal generators live in K[y1..yn]; renamed y -> x they give
  // shifts f2 = f1 + h that one side is blind to.
  std::vector<MultiPoly> shifts = cmp.phi_ideal.generators();
  for (const auto& g : cmp.psi_ideal.generators()) shifts.push_back(g);

  for (std::size_t s = 0; s < samples; ++s) {
    const Endomorphism f1 = random_endomorphism(F, n, 2, 3, rng);
    std::vector<MultiPoly> im2 = f1.images();
    const unsigned kind = static_cast<unsigned>(rng() % 3);
    if (kind < 2 && !shifts.empty()) {
      const auto& h = shifts[rng() % shifts.size()];
      MultiPoly shift = h;
      if (kind == 1) shift = shift * random_poly(F, n, 1, 2, rng);
      im2[rng() % n] += shift;
    } else {
      im2 = random_endomorphism(F, n, 2, 3, rng).images();
    }
    const Endomorphism f2(F, n, std::move(im2));
    bool eq_phi = false, eq_psi = false;
    try {
      eq_phi = compose(phi, f1, cfg.degree_cap) == compose(phi, f2, cfg.degree_cap);
      eq_psi = compose(psi, f1, cfg.degree_cap) == compose(psi, f2, cfg.degree_cap);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::DegreeCapExceeded) continue;
      throw;
    }
    if (cmp.phi_contains_psi && eq_psi && !eq_phi)
      return FalsifierCounterexample{f1, f2, "phi <= psi claimed but psi identifies a pair phi separates"};
    if (cmp.psi_contains_phi && eq_phi && !eq_psi)
      return FalsifierCounterexample{f1, f2, "psi <= phi claimed but phi identifies a pair psi separates"};
  }
  return std::nullopt;
}

}  // namespace endorank
