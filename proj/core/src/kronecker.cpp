#include "endorank/kronecker.hpp"

#include <algorithm>

#include "endorank/chains.hpp"

namespace endorank {

namespace {

std::string name(const char* base, std::size_t i, std::size_t j) {
  return std::string(base) + std::to_string(i + 1) + std::to_string(j + 1);
}

std::vector<MultiPoly> variables(const Field& f, std::size_t n) { return Endomorphism::identity(f, n).images(); }

}  // namespace

KroneckerSystem::KroneckerSystem(std::size_t n, std::vector<Endomorphism> entries, std::optional<Endomorphism> zero)
    : n_(n), entries_(std::move(entries)), zero_(std::move(zero)) {
  if (n_ == 0 || entries_.size() != n_ * n_) fail(ErrorCode::ArityMismatch, "Kronecker system needs n^2 entries");
  const Endomorphism& first = entries_.front();
  for (const auto& e : entries_) {
    if (e.field() != first.field()) fail(ErrorCode::SpecMismatch, "Kronecker entries over different fields");
    if (e.nvars() != first.nvars()) fail(ErrorCode::ArityMismatch, "Kronecker entries of different arity");
  }
  if (first.nvars() != n_) fail(ErrorCode::ArityMismatch, "Kronecker system size must equal the number of variables");
  if (zero_ && (zero_->field() != first.field() || zero_->nvars() != n_))
    fail(ErrorCode::ArityMismatch, "zero entry does not match the system");
}

KroneckerSystem KroneckerSystem::standard(const Field& f, std::size_t n) {
  std::vector<Endomorphism> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e.push_back(kronecker_endo(f, n, i, j));
  return KroneckerSystem(n, std::move(e), Endomorphism::zero(f, n));
}

KroneckerSystem KroneckerSystem::in_base(const std::vector<MultiPoly>& base, const EngineConfig& cfg) {
  if (base.empty()) fail(ErrorCode::ArityMismatch, "empty base");
  const auto inverse = invert_poly_map(base, cfg);
  if (!inverse) fail(ErrorCode::NotABase, "base is not an invertible polynomial map");
  const Endomorphism sigma(base);
  return standard(sigma.field(), sigma.nvars()).conjugated(sigma, Endomorphism(*inverse), cfg.degree_cap);
}

KroneckerSystem KroneckerSystem::conjugated(const Endomorphism& sigma, const Endomorphism& sigma_inv,
                                            unsigned degree_cap) const {
  auto conj = [&](const Endomorphism& e) { return compose(sigma, compose(e, sigma_inv, degree_cap), degree_cap); };
  std::vector<Endomorphism> e;
  for (const auto& x : entries_) e.push_back(conj(x));
  std::optional<Endomorphism> z;
  if (zero_) z = conj(*zero_);
  return KroneckerSystem(n_, std::move(e), std::move(z));
}

SubbaseReport check_relations(const KroneckerSystem& s, const EngineConfig& cfg) {
  SubbaseReport r;
  const std::size_t n = s.n();
  const unsigned cap = cfg.degree_cap;
  auto bad = [&](std::string msg) {
    r.ok = false;
    r.violations.push_back(std::move(msg));
  };
  if (s.zero()) {
    r.zero_image = *s.zero();
  } else {
    // The delta = 0 products must agree; their common value plays rho(0).
    for (std::size_t i = 0; i < n && !r.zero_image; ++i)
      for (std::size_t j = 0; j < n && !r.zero_image; ++j)
        for (std::size_t k = 0; k < n && !r.zero_image; ++k)
          if (j != k) r.zero_image = compose(s.entry(i, j), s.entry(k, 0), cap);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m) {
          const auto prod = compose(s.entry(i, j), s.entry(k, m), cap);
          const std::string lhs = name("e", i, j) + "*" + name("e", k, m);
          if (j == k) {
            if (prod != s.entry(i, m)) bad(lhs + " != " + name("e", i, m));
          } else if (prod != *r.zero_image) {
            bad(lhs + " != 0");
          }
        }
  if (s.zero()) {
    const Endomorphism& z = *s.zero();
    if (compose(z, z, cap) != z) bad("0*0 != 0");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (compose(z, s.entry(i, j), cap) != z) bad("0*" + name("e", i, j) + " != 0");
        if (compose(s.entry(i, j), z, cap) != z) bad(name("e", i, j) + "*0 != 0");
      }
  }
  return r;
}

SubbaseReport verify_subbase(const KroneckerSystem& s, const EngineConfig& cfg) {
  SubbaseReport r = check_relations(s, cfg);
  for (std::size_t i = 0; i < s.n(); ++i)
    for (std::size_t j = 0; j < s.n(); ++j) {
      const auto& e = s.entry(i, j);
      if (r.zero_image && e == *r.zero_image) {
        r.ok = false;
        r.violations.push_back(name("e", i, j) + " is the zero image");
      }
      const int rk = rank(e, RankMethod::Elimination, cfg).rank;
      if (rk != 1) {
        r.ok = false;
        r.violations.push_back("rank(" + name("e", i, j) + ") = " + std::to_string(rk));
      }
    }
  return r;
}

std::string to_string(Representation r) { return r == Representation::Singular ? "singular" : "nonsingular"; }

Classification classify_representation(const KroneckerSystem& s, const EngineConfig& cfg) {
  const auto rel = check_relations(s, cfg);
  if (!rel.ok) fail(ErrorCode::RelationViolation, "homomorphism relations fail: " + rel.violations.front());
  Classification c;
  for (const auto& e : s.entries()) c.ranks.push_back(rank(e, RankMethod::Elimination, cfg).rank);
  const std::size_t n = s.n();
  if (c.ranks.front() == 0) {
    c.kind = Representation::Singular;
    const Endomorphism& z = rel.zero_image ? *rel.zero_image : s.entry(0, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (s.entry(i, j) != z)
          fail(ErrorCode::RelationViolation, "singular representation but " + name("e", i, j) + " differs from rho(0)");
  } else {
    c.kind = Representation::NonSingular;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (c.ranks[i * n + j] != 1)
          fail(ErrorCode::RelationViolation, "nonsingular representation but rank(" + name("e", i, j) +
                                                 ") = " + std::to_string(c.ranks[i * n + j]));
  }
  return c;
}

Matrix matrix_multiply(const Matrix& a, const Matrix& b) {
  const std::size_t rows = a.size(), inner = b.size(), cols = b.front().size();
  const Field& f = a.front().front().field();
  Matrix c(rows, std::vector<FieldElement>(cols, FieldElement(f, f.zero())));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t l = 0; l < inner; ++l) {
      if (a[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < cols; ++j) c[i][j] = c[i][j] + a[i][l] * b[l][j];
    }
  return c;
}

Endomorphism translation(const Field& f, const std::vector<FieldElement>& d) {
  std::vector<MultiPoly> im;
  for (std::size_t k = 0; k < d.size(); ++k)
    im.push_back(MultiPoly::variable(f, d.size(), k) + MultiPoly::constant(d[k], d.size()));
  return Endomorphism(f, d.size(), std::move(im));
}

Endomorphism translate(const Endomorphism& phi, const std::vector<FieldElement>& d) {
  std::vector<FieldElement> minus;
  for (const auto& c : d) minus.push_back(-c);
  return compose(translation(phi.field(), d), compose(phi, translation(phi.field(), minus)));
}

Matrix linear_part(const Endomorphism& phi) {
  const std::size_t n = phi.nvars();
  Matrix l(n, std::vector<FieldElement>(n, FieldElement(phi.field(), phi.field().zero())));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t r = 0; r < n; ++r) l[r][k] = phi.image(k).coefficient(Monomial::variable(n, r));
  return l;
}

namespace {

bool fixes(const Endomorphism& e, const std::vector<FieldElement>& d) { return e.evaluate(d) == d; }

}  // namespace

StructureReport structure_analysis(const KroneckerSystem& s, std::uint64_t seed, const EngineConfig& cfg) {
  const Field& F = s.field();
  const std::size_t n = s.n();
  const auto rel = check_relations(s, cfg);

  std::vector<std::vector<FieldElement>> candidates;
  if (rel.zero_image && rel.zero_image->is_constant_map()) candidates.push_back(rel.zero_image->constant_point());
  const std::vector<FieldElement> zeros(n, FieldElement(F, F.zero())), ones(n, FieldElement(F, F.one()));
  for (std::size_t j = 0; j < n; ++j) {
    candidates.push_back(s.entry(j, j).evaluate(zeros));
    candidates.push_back(s.entry(j, j).evaluate(ones));
  }
  for (const auto& xi : specialization_schedule(F, seed, 8)) {
    const std::vector<FieldElement> p(n, FieldElement(F, xi));
    candidates.push_back(s.entry(0, 0).evaluate(p));
  }

  std::optional<std::vector<FieldElement>> d;
  bool diagonal_fixed = false;
  for (const auto& c : candidates) {
    bool diag = true;
    for (std::size_t j = 0; j < n && diag; ++j) diag = fixes(s.entry(j, j), c);
    if (!diag) continue;
    diagonal_fixed = true;
    if (std::all_of(s.entries().begin(), s.entries().end(), [&](const Endomorphism& e) { return fixes(e, c); })) {
      d = c;
      break;
    }
  }
  if (!d) {
    if (diagonal_fixed)
      fail(ErrorCode::ConstantTermSurvives, "every candidate fixed point leaves a constant term after translation");
    fail(ErrorCode::NoFixedPointFound, "no common fixed point in the schedule; an extension field may be needed");
  }

  std::vector<Endomorphism> moved;
  for (const auto& e : s.entries()) moved.push_back(translate(e, *d));
  std::optional<Endomorphism> moved_zero;
  if (s.zero()) moved_zero = translate(*s.zero(), *d);
  StructureReport r{*d, KroneckerSystem(n, std::move(moved), std::move(moved_zero)), false, {}, false, {}, false};

  r.constant_terms_vanish = true;
  for (const auto& e : r.translated.entries())
    for (const auto& f : e.images())
      if (!f.constant_term().is_zero()) r.constant_terms_vanish = false;
  if (!r.constant_terms_vanish) fail(ErrorCode::ConstantTermSurvives, "translated system keeps a constant term");

  for (const auto& e : r.translated.entries()) r.linear_parts.push_back(linear_part(e));
  const Matrix zero_matrix(n, std::vector<FieldElement>(n, FieldElement(F, F.zero())));
  r.matrix_units = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m) {
          const Matrix prod = matrix_multiply(r.linear_parts[i * n + j], r.linear_parts[k * n + m]);
          if (prod != (j == k ? r.linear_parts[i * n + m] : zero_matrix)) r.matrix_units = false;
        }

  const Matrix& l11 = r.linear_parts[0];
  for (std::size_t c = 0; c < n && r.common_basis.empty(); ++c) {
    std::vector<FieldElement> col;
    bool nonzero = false;
    for (std::size_t row = 0; row < n; ++row) {
      col.push_back(l11[row][c]);
      nonzero = nonzero || !l11[row][c].is_zero();
    }
    if (!nonzero) continue;
    Matrix v1(n, std::vector<FieldElement>(1, FieldElement(F, F.zero())));
    for (std::size_t row = 0; row < n; ++row) v1[row][0] = col[row];
    for (std::size_t i = 0; i < n; ++i) {
      const Matrix vi = matrix_multiply(r.linear_parts[i * n], v1);
      std::vector<FieldElement> v;
      for (std::size_t row = 0; row < n; ++row) v.push_back(vi[row][0]);
      r.common_basis.push_back(std::move(v));
    }
  }
  r.basis_independent = r.common_basis.size() == n && matrix_rank(r.common_basis) == static_cast<int>(n);
  return r;
}

std::optional<ImageGenerator> image_generator(const Endomorphism& phi, const std::optional<MultiPoly>& hint,
                                              const EngineConfig& cfg) {
  if (compose(phi, phi, cfg.degree_cap) != phi)
    fail(ErrorCode::PreconditionViolated, "image_generator needs an idempotent endomorphism");
  if (rank(phi, RankMethod::Elimination, cfg).rank != 1)
    fail(ErrorCode::PreconditionViolated, "image_generator needs a rank 1 endomorphism");
  const Field& F = phi.field();
  const std::size_t n = phi.nvars();

  std::vector<MultiPoly> candidates;
  auto add = [&](const MultiPoly& z) {
    if (z.is_constant()) return;
    if (std::find(candidates.begin(), candidates.end(), z) == candidates.end()) candidates.push_back(z);
  };
  if (hint) add(*hint);
  std::vector<std::size_t> order(n);
  for (std::size_t k = 0; k < n; ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return phi.image(a).total_degree() < phi.image(b).total_degree();
  });
  for (std::size_t k : order) add(phi.image(k));
  {
    // Any image point of an idempotent map is fixed; the linear part there
    // gives a linear candidate.
    const std::vector<FieldElement> zeros(n, FieldElement(F, F.zero()));
    const auto d = phi.evaluate(zeros);
    const Matrix l = linear_part(translate(phi, d));
    for (std::size_t k = 0; k < n; ++k) {
      MultiPoly z = MultiPoly::zero(F, n);
      for (std::size_t r = 0; r < n; ++r)
        z += (MultiPoly::variable(F, n, r) - MultiPoly::constant(d[r], n)).scale(l[r][k]);
      if (!z.is_constant()) {
        add(z);
        break;
      }
    }
  }

  std::vector<MultiPoly> images;
  for (const auto& f : phi.images())
    if (!f.is_constant()) images.push_back(f);
  for (const auto& z : candidates) {
    auto w = subalgebra_members(phi.images(), {z}, cfg);
    if (!std::all_of(w.begin(), w.end(), [](const auto& x) { return x.has_value(); })) continue;
    const bool is_image = std::find(images.begin(), images.end(), z) != images.end();
    if (!is_image && !subalgebra_member(z, images, cfg)) continue;
    ImageGenerator g{z, {}};
    for (auto& x : w) g.witnesses.push_back(std::move(*x));
    return g;
  }
  return std::nullopt;
}

ExternalBaseResult verify_base_external(const KroneckerSystem& s, const std::optional<std::vector<MultiPoly>>& generators,
                                        const EngineConfig& cfg) {
  const auto sub = verify_subbase(s, cfg);
  if (!sub.ok) fail(ErrorCode::PreconditionViolated, "not a subbase: " + sub.violations.front());
  const std::size_t n = s.n();
  ExternalBaseResult r;
  if (generators) {
    if (generators->size() != n) fail(ErrorCode::ArityMismatch, "need one generator per variable");
    r.generators = *generators;
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      auto g = image_generator(s.entry(i, i), std::nullopt, cfg);
      if (!g) fail(ErrorCode::GeneratorNotFound, "no generator found for the image of " + name("e", i, i));
      r.generators.push_back(std::move(g->z));
    }
  }
  auto w = subalgebra_members(variables(s.field(), n), r.generators, cfg);
  for (std::size_t k = 0; k < n; ++k) {
    if (!w[k]) {
      r.failing_variable = k;
      return r;
    }
  }
  BaseCertificate cert{s, r.generators, {}, false};
  for (auto& x : w) cert.witnesses.push_back(std::move(*x));
  r.certificate = std::move(cert);
  return r;
}

bool satisfies_base_relations(const KroneckerSystem& s, const std::vector<MultiPoly>& z, unsigned degree_cap) {
  const std::size_t n = s.n();
  const MultiPoly zero = MultiPoly::zero(s.field(), n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (s.entry(i, j).apply(z[k], degree_cap) != (j == k ? z[i] : zero)) return false;
  return true;
}

namespace {

// Writes r = a*z + b with constants a, b; nullopt when r is not affine in z.
std::optional<std::pair<FieldElement, FieldElement>> affine_in(const MultiPoly& r, const MultiPoly& z) {
  const Field& F = z.field();
  if (z.is_constant()) fail(ErrorCode::PreconditionViolated, "base generator is constant");
  FieldElement a(F, F.zero());
  if (!r.is_constant()) {
    if (r.leading_term().mono != z.leading_term().mono) return std::nullopt;
    a = FieldElement(F, r.leading_term().coeff) / FieldElement(F, z.leading_term().coeff);
  }
  const MultiPoly b = r - z.scale(a);
  if (!b.is_constant()) return std::nullopt;
  return std::make_pair(a, b.constant_term());
}

}  // namespace

BaseCertificate normalize_base(const BaseCertificate& cert, const EngineConfig& cfg) {
  const KroneckerSystem& s = cert.system;
  const Field& F = s.field();
  const std::size_t n = s.n();
  const unsigned cap = cfg.degree_cap;

  const auto rel = check_relations(s, cfg);
  std::vector<FieldElement> d0;
  if (rel.zero_image && rel.zero_image->is_constant_map())
    d0 = rel.zero_image->constant_point();
  else
    d0 = s.entry(0, 0).evaluate(std::vector<FieldElement>(n, FieldElement(F, F.zero())));

  std::vector<FieldElement> shift;
  std::vector<MultiPoly> centered;
  for (const auto& z : cert.generators) {
    shift.push_back(z.evaluate(d0));
    centered.push_back(z - MultiPoly::constant(shift.back(), n));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto ab = affine_in(s.entry(i, j).apply(centered[j], cap), centered[i]);
      if (!ab)
        fail(ErrorCode::NonAffineImage, name("e'", i, j) + "(z" + std::to_string(j + 1) + ") is not affine in z" +
                                            std::to_string(i + 1));
      if (ab->first.is_zero()) fail(ErrorCode::ZeroScale, name("e'", i, j) + " has zero scale");
    }

  const FieldElement lambda(F, centered[0].leading_term().coeff);
  std::vector<FieldElement> scale;  // z_i = scale_i * z'_i + shift_i
  for (std::size_t i = 0; i < n; ++i) {
    const auto ab = affine_in(s.entry(0, i).apply(centered[i], cap), centered[0]);
    scale.push_back(lambda * ab->first);
  }

  BaseCertificate out{s, {}, {}, true};
  std::vector<MultiPoly> back;  // z_i in terms of the new generators
  for (std::size_t i = 0; i < n; ++i) {
    out.generators.push_back(centered[i].scale(scale[i].inv()));
    back.push_back(MultiPoly::variable(F, n, i).scale(scale[i]) + MultiPoly::constant(shift[i], n));
  }
  for (const auto& w : cert.witnesses) out.witnesses.push_back(w.substitute(back, cap));
  const auto xs = variables(F, n);
  for (std::size_t k = 0; k < n; ++k)
    if (out.witnesses[k].substitute(out.generators, 0xFFFF) != xs[k])
      fail(ErrorCode::InvariantViolation, "normalized witness does not reproduce x" + std::to_string(k + 1));
  if (!satisfies_base_relations(s, out.generators, cap))
    fail(ErrorCode::InvariantViolation, "normalized base does not satisfy the Kronecker relations");
  return out;
}

InternalBaseReport check_internal_base_condition(const BaseCertificate& cert, const KroneckerSystem& f,
                                                 const std::vector<Endomorphism>& alphas, const EngineConfig& cfg) {
  const KroneckerSystem& s = cert.system;
  const std::size_t n = s.n();
  if (f.n() != n || alphas.size() != n) fail(ErrorCode::ArityMismatch, "collections of different size");
  const auto sub = verify_subbase(f, cfg);
  if (!sub.ok) fail(ErrorCode::PreconditionViolated, "second collection is not a subbase: " + sub.violations.front());
  const unsigned cap = cfg.degree_cap;

  std::vector<MultiPoly> y;
  for (std::size_t i = 0; i < n; ++i) {
    auto g = image_generator(f.entry(i, i), std::nullopt, cfg);
    if (!g) fail(ErrorCode::GeneratorNotFound, "no generator found for the image of f" + std::to_string(i + 1) +
                                                   std::to_string(i + 1));
    y.push_back(std::move(g->z));
  }
  std::vector<MultiPoly> alpha_y;
  for (std::size_t i = 0; i < n; ++i) alpha_y.push_back(alphas[i].apply(y[i], cap));
  std::vector<MultiPoly> psi_images;
  for (const auto& w : cert.witnesses) psi_images.push_back(w.substitute(alpha_y, cap));

  InternalBaseReport r{true, Endomorphism(cert.generators), Endomorphism(std::move(psi_images)), y, {}};
  for (std::size_t i = 0; i < n; ++i) {
    const auto lhs = compose(alphas[i], f.entry(i, i), cap);
    const auto rhs = compose(r.psi, compose(s.entry(i, i), r.phi, cap), cap);
    if (lhs != rhs) {
      r.ok = false;
      r.failures.push_back("alpha" + std::to_string(i + 1) + " o f" + std::to_string(i + 1) + std::to_string(i + 1) +
                           " != psi o e'" + std::to_string(i + 1) + std::to_string(i + 1) + " o phi");
    }
  }
  return r;
}

InternalBaseReport check_internal_base_condition(const KroneckerSystem& s, const KroneckerSystem& f,
                                                 const std::vector<Endomorphism>& alphas, const EngineConfig& cfg) {
  const auto ext = verify_base_external(s, std::nullopt, cfg);
  if (!ext.certificate) fail(ErrorCode::PreconditionViolated, "first collection has no base certificate");
  return check_internal_base_condition(*ext.certificate, f, alphas, cfg);
}

}  // namespace endorank
