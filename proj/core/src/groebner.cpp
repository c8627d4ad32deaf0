#include "endorank/groebner.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <limits>

namespace endorank {

namespace {

using OPoly = std::vector<Term>;

OPoly to_ordered(const MultiPoly& f, const MonomialOrder& order) {
  OPoly out = f.terms();
  if (order.kind() != OrderKind::GrevLex)
    std::sort(out.begin(), out.end(), [&](const Term& a, const Term& b) { return order.greater(a.mono, b.mono); });
  return out;
}

MultiPoly from_ordered(const Field& F, std::size_t nvars, OPoly terms) {
  return MultiPoly::from_terms(F, nvars, std::move(terms));
}

void make_monic(const Field& F, OPoly& p) {
  if (p.empty() || F.is_one(p.front().coeff)) return;
  const Scalar inv = F.inv(p.front().coeff);
  for (auto& t : p) t.coeff = F.mul(t.coeff, inv);
}

std::uint32_t degree_of(const OPoly& p) {
  std::uint32_t d = 0;
  for (const auto& t : p) d = std::max(d, t.mono.degree());
  return d;
}

// Returns h[start..] - c * m * g[1..], merged in order. The caller guarantees
// that c*m*LT(g) cancels h[start-1].
OPoly sub_mul(const Field& F, const MonomialOrder& order, const OPoly& h, std::size_t start, const Scalar& c,
              const Monomial& m, const OPoly& g) {
  OPoly out;
  out.reserve(h.size() - start + g.size());
  std::size_t i = start, j = 1;
  while (i < h.size() || j < g.size()) {
    if (j == g.size()) {
      out.push_back(h[i++]);
      continue;
    }
    Monomial gm = g[j].mono * m;
    if (i == h.size()) {
      out.push_back({gm, F.neg(F.mul(c, g[j].coeff))});
      ++j;
      continue;
    }
    const int cmp = order.compare(h[i].mono, gm);
    if (cmp > 0) {
      out.push_back(h[i++]);
    } else if (cmp < 0) {
      out.push_back({gm, F.neg(F.mul(c, g[j].coeff))});
      ++j;
    } else {
      Scalar s = F.sub(h[i].coeff, F.mul(c, g[j].coeff));
      if (!F.is_zero(s)) out.push_back({h[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

struct Reducer {
  const Field& F;
  const MonomialOrder& order;
  std::uint64_t budget;
  std::uint64_t steps = 0;

  // Full reduction of h modulo the monic polynomials basis[idx] for idx in active.
  OPoly reduce(OPoly h, const std::vector<OPoly>& basis, const std::vector<std::size_t>& active) {
    OPoly rem;
    std::size_t pos = 0;
    while (pos < h.size()) {
      const Term& lt = h[pos];
      const OPoly* divisor = nullptr;
      for (std::size_t idx : active) {
        if (basis[idx].front().mono.divides(lt.mono)) {
          divisor = &basis[idx];
          break;
        }
      }
      if (divisor == nullptr) {
        rem.push_back(lt);
        ++pos;
        continue;
      }
      if (++steps > budget)
        fail(ErrorCode::BudgetExceeded, "reduction budget of " + std::to_string(budget) + " steps exhausted");
      const Monomial m = lt.mono / divisor->front().mono;
      const Scalar c = lt.coeff;
      h = sub_mul(F, order, h, pos + 1, c, m, *divisor);
      pos = 0;
    }
    return rem;
  }
};

OPoly spoly(const Field& F, const MonomialOrder& order, const OPoly& f, const OPoly& g) {
  const Monomial l = Monomial::lcm(f.front().mono, g.front().mono);
  const Monomial mf = l / f.front().mono;
  const Monomial mg = l / g.front().mono;
  OPoly a;
  a.reserve(f.size());
  for (std::size_t i = 1; i < f.size(); ++i) a.push_back({f[i].mono * mf, f[i].coeff});
  // a = mf * tail(f); subtract mg * tail(g) (both monic, leading terms cancel).
  OPoly shifted_g;
  shifted_g.reserve(g.size());
  shifted_g.push_back({l, F.one()});
  for (std::size_t i = 1; i < g.size(); ++i) shifted_g.push_back({g[i].mono * mg, g[i].coeff});
  OPoly padded;
  padded.reserve(a.size() + 1);
  padded.push_back({l, F.one()});
  padded.insert(padded.end(), a.begin(), a.end());
  return sub_mul(F, order, padded, 1, F.one(), Monomial(l.nvars()), shifted_g);
}

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
};

}  // namespace

Ideal::Ideal(Field field, std::size_t nvars, std::vector<MultiPoly> generators)
    : field_(std::move(field)), nvars_(nvars) {
  for (auto& g : generators) {
    require_same_field(field_, g.field());
    if (g.nvars() != nvars_) fail(ErrorCode::ArityMismatch, "ideal generator has wrong arity");
    if (!g.is_zero()) generators_.push_back(std::move(g));
  }
}

GroebnerBasis groebner_basis(const Ideal& ideal, const MonomialOrder& order, const EngineConfig& cfg) {
  const Field& F = ideal.field();
  const std::size_t n = ideal.nvars();
  Reducer red{F, order, cfg.reduction_budget};

  std::vector<OPoly> polys;
  std::vector<std::size_t> G;
  std::vector<Pair> B;
  bool unit = false;

  auto check_degree = [&](const OPoly& p) {
    if (degree_of(p) > cfg.degree_cap)
      fail(ErrorCode::DegreeCapExceeded, "basis element exceeds degree cap " + std::to_string(cfg.degree_cap));
  };

  auto lm = [&](std::size_t idx) -> const Monomial& { return polys[idx].front().mono; };

  auto update = [&](std::size_t h) {
    const Monomial& lh = lm(h);
    std::vector<Pair> C;
    for (std::size_t g : G) C.push_back({g, h, Monomial::lcm(lm(g), lh)});
    std::vector<Pair> D;
    for (std::size_t a = 0; a < C.size(); ++a) {
      const Pair& p = C[a];
      bool keep = Monomial::coprime(lm(p.i), lh);
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < C.size() && keep; ++b)
          if (C[b].lcm.divides(p.lcm)) keep = false;
        for (std::size_t b = 0; b < D.size() && keep; ++b)
          if (D[b].lcm.divides(p.lcm)) keep = false;
      }
      if (keep) D.push_back(p);
    }
    std::vector<Pair> next;
    for (const Pair& p : B) {
      const bool drop = lh.divides(p.lcm) && Monomial::lcm(lm(p.i), lh) != p.lcm &&
                        Monomial::lcm(lm(p.j), lh) != p.lcm;
      if (!drop) next.push_back(p);
    }
    for (const Pair& p : D)
      if (!Monomial::coprime(lm(p.i), lh)) next.push_back(p);
    B = std::move(next);
    std::vector<std::size_t> g2;
    for (std::size_t g : G)
      if (!lh.divides(lm(g))) g2.push_back(g);
    g2.push_back(h);
    G = std::move(g2);
  };

  auto add = [&](OPoly p) {
    make_monic(F, p);
    check_degree(p);
    if (p.front().mono.is_one()) unit = true;
    polys.push_back(std::move(p));
    update(polys.size() - 1);
  };

  for (const auto& g : ideal.generators()) {
    if (unit) break;
    add(to_ordered(g, order));
  }

  while (!B.empty() && !unit) {
    std::size_t best = 0;
    for (std::size_t a = 1; a < B.size(); ++a) {
      const Pair& x = B[a];
      const Pair& y = B[best];
      if (x.lcm.degree() != y.lcm.degree() ? x.lcm.degree() < y.lcm.degree()
                                           : (x.i != y.i ? x.i < y.i : x.j < y.j))
        best = a;
    }
    const Pair p = B[best];
    B.erase(B.begin() + static_cast<std::ptrdiff_t>(best));
    OPoly s = spoly(F, order, polys[p.i], polys[p.j]);
    check_degree(s);
    OPoly h = red.reduce(std::move(s), polys, G);
    if (!h.empty()) add(std::move(h));
  }

  GroebnerBasis out(ideal, order);
  std::vector<OPoly> final;
  if (unit) {
    final.push_back({Term{Monomial(n), F.one()}});
  } else {
    // Minimalize, then interreduce.
    std::vector<std::size_t> minimal;
    for (std::size_t a = 0; a < G.size(); ++a) {
      bool redundant = false;
      for (std::size_t b = 0; b < G.size() && !redundant; ++b) {
        if (a == b) continue;
        if (lm(G[b]).divides(lm(G[a])) && (lm(G[b]) != lm(G[a]) || b < a)) redundant = true;
      }
      if (!redundant) minimal.push_back(G[a]);
    }
    for (std::size_t a = 0; a < minimal.size(); ++a) {
      std::vector<std::size_t> others;
      for (std::size_t b = 0; b < minimal.size(); ++b)
        if (b != a) others.push_back(minimal[b]);
      const OPoly& g = polys[minimal[a]];
      OPoly tail(g.begin() + 1, g.end());
      OPoly r = red.reduce(std::move(tail), polys, others);
      r.insert(r.begin(), g.front());
      final.push_back(std::move(r));
    }
    std::sort(final.begin(), final.end(),
              [&](const OPoly& a, const OPoly& b) { return order.compare(a.front().mono, b.front().mono) < 0; });
  }
  for (auto& p : final) {
    out.leading_.push_back(p.front().mono);
    out.basis_.push_back(from_ordered(F, n, p));
    out.ordered_.push_back(std::move(p));
  }

  if (cfg.audit != nullptr) {
    cfg.audit->bases_checked.fetch_add(1);
    if (!satisfies_buchberger_criterion(out)) cfg.audit->failures.fetch_add(1);
  } else {
    assert(satisfies_buchberger_criterion(out));
  }
  return out;
}

MultiPoly normal_form(const MultiPoly& f, const GroebnerBasis& g) {
  require_same_field(f.field(), g.ideal().field());
  if (f.nvars() != g.ideal().nvars()) fail(ErrorCode::ArityMismatch, "normal form arity mismatch");
  Reducer red{f.field(), g.order_, std::numeric_limits<std::uint64_t>::max()};
  std::vector<std::size_t> all(g.ordered_.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return from_ordered(f.field(), f.nvars(), red.reduce(to_ordered(f, g.order_), g.ordered_, all));
}

bool satisfies_buchberger_criterion(const GroebnerBasis& g) {
  const auto& basis = g.basis();
  const Field& F = g.ideal().field();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      const OPoly a = to_ordered(basis[i], g.order());
      const OPoly b = to_ordered(basis[j], g.order());
      if (Monomial::coprime(a.front().mono, b.front().mono)) continue;
      OPoly s = spoly(F, g.order(), a, b);
      if (!normal_form(from_ordered(F, g.ideal().nvars(), std::move(s)), g).is_zero()) return false;
    }
  }
  return true;
}

Ideal eliminate(const Ideal& ideal, std::uint32_t drop, const EngineConfig& cfg) {
  const std::size_t n = ideal.nvars();
  const std::uint32_t all = n == 32 ? ~0u : ((1u << n) - 1);
  if ((drop & all) == all && n > 0) fail(ErrorCode::PreconditionViolated, "cannot eliminate every variable");
  std::vector<std::size_t> new_index(n, kMaxVars + 1);
  std::size_t kept = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (!(drop & (1u << i))) new_index[i] = kept++;
  if ((drop & all) == 0) {
    auto gb = groebner_basis(ideal, MonomialOrder::grevlex(), cfg);
    return Ideal(ideal.field(), n, gb.basis());
  }
  const auto gb = groebner_basis(ideal, MonomialOrder::block(drop & all), cfg);
  std::vector<MultiPoly> out;
  for (const auto& g : gb.basis())
    if ((g.support() & drop) == 0) out.push_back(g.remap(kept, new_index));
  return Ideal(ideal.field(), kept, std::move(out));
}

bool ideal_contains(const GroebnerBasis& outer, const Ideal& inner) {
  for (const auto& g : inner.generators())
    if (!normal_form(g, outer).is_zero()) return false;
  return true;
}

bool ideal_contains(const Ideal& outer, const Ideal& inner, const EngineConfig& cfg) {
  require_same_field(outer.field(), inner.field());
  if (outer.nvars() != inner.nvars()) fail(ErrorCode::ArityMismatch, "ideals live in different rings");
  if (inner.is_zero_ideal()) return true;
  return ideal_contains(groebner_basis(outer, MonomialOrder::grevlex(), cfg), inner);
}

int ideal_dimension(const GroebnerBasis& g) {
  if (g.is_unit()) return -1;
  const std::size_t n = g.ideal().nvars();
  std::vector<std::uint32_t> supports;
  for (const auto& m : g.leading_monomials()) supports.push_back(m.support());
  int best = 0;
  const std::uint32_t limit = 1u << n;
  for (std::uint32_t s = 0; s < limit; ++s) {
    const int size = std::popcount(s);
    if (size <= best) continue;
    bool independent = true;
    for (std::uint32_t sup : supports) {
      if ((sup & ~s) == 0) {
        independent = false;
        break;
      }
    }
    if (independent) best = size;
  }
  return best;
}

int ideal_dimension(const Ideal& ideal, const EngineConfig& cfg) {
  if (ideal.is_zero_ideal()) return static_cast<int>(ideal.nvars());
  return ideal_dimension(groebner_basis(ideal, MonomialOrder::grevlex(), cfg));
}

std::vector<std::optional<MultiPoly>> subalgebra_members(const std::vector<MultiPoly>& targets,
                                                         const std::vector<MultiPoly>& gens,
                                                         const EngineConfig& cfg) {
  if (gens.empty()) fail(ErrorCode::PreconditionViolated, "subalgebra needs at least one generator");
  const Field& F = gens.front().field();
  const std::size_t n = gens.front().nvars();
  const std::size_t m = gens.size();
  if (n + m > kMaxVars) fail(ErrorCode::ArityMismatch, "too many variables for tag elimination");
  std::vector<std::size_t> x_index(n);
  for (std::size_t i = 0; i < n; ++i) x_index[i] = i;
  std::vector<MultiPoly> rel;
  for (std::size_t i = 0; i < m; ++i) {
    require_compatible(gens[i], gens.front());
    rel.push_back(MultiPoly::variable(F, n + m, n + i) - gens[i].remap(n + m, x_index));
  }
  const std::uint32_t xmask = (1u << n) - 1;
  const auto gb = groebner_basis(Ideal(F, n + m, rel), MonomialOrder::block(xmask), cfg);

  std::vector<std::size_t> y_index(n + m, kMaxVars + 1);
  for (std::size_t i = 0; i < m; ++i) y_index[n + i] = i;
  std::vector<std::optional<MultiPoly>> out;
  for (const auto& f : targets) {
    require_compatible(f, gens.front());
    const MultiPoly r = normal_form(f.remap(n + m, x_index), gb);
    if ((r.support() & xmask) != 0) {
      out.emplace_back(std::nullopt);
      continue;
    }
    MultiPoly w = r.remap(m, y_index);
    if (w.substitute(gens, 0xFFFF) != f)
      fail(ErrorCode::InvariantViolation, "subalgebra witness failed substitution check");
    out.emplace_back(std::move(w));
  }
  return out;
}

std::optional<SubalgebraWitness> subalgebra_member(const MultiPoly& f, const std::vector<MultiPoly>& gens,
                                                   const EngineConfig& cfg) {
  auto r = subalgebra_members({f}, gens, cfg);
  if (!r.front()) return std::nullopt;
  return SubalgebraWitness{std::move(*r.front())};
}

std::optional<std::vector<MultiPoly>> invert_poly_map(const std::vector<MultiPoly>& s, const EngineConfig& cfg) {
  if (s.empty()) fail(ErrorCode::PreconditionViolated, "empty polynomial map");
  const std::size_t n = s.size();
  if (s.front().nvars() != n) fail(ErrorCode::ArityMismatch, "map must send n variables to n polynomials");
  const Field& F = s.front().field();
  std::vector<MultiPoly> xs;
  for (std::size_t k = 0; k < n; ++k) xs.push_back(MultiPoly::variable(F, n, k));
  auto w = subalgebra_members(xs, s, cfg);
  std::vector<MultiPoly> inv;
  for (auto& wk : w) {
    if (!wk) return std::nullopt;
    inv.push_back(std::move(*wk));
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (s[k].substitute(inv, 0xFFFF) != xs[k]) return std::nullopt;
    if (inv[k].substitute(s, 0xFFFF) != xs[k]) return std::nullopt;
  }
  return inv;
}

}  // namespace endorank
