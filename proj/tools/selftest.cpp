#include "cli.hpp"

#include "endorank/text_format.hpp"

namespace endorank::cli {

namespace {

constexpr const char* kGf2Counterexample =
    "field F 2\n"
    "vars 2\n"
    "x1 -> (x1^2 - x1)*(x2^2 - x2)*x1\n"
    "x2 -> (x1^2 - x1)*(x2^2 - x2)*x2\n";

constexpr const char* kNonBaseSubbase =
    "field Q\nvars 2\nkron 2\n"
    "e 1 1\nx1 -> x1 + x1*x2\nx2 -> 0\n"
    "e 1 2\nx1 -> 0\nx2 -> x1 + x1*x2\n"
    "e 2 1\nx1 -> x2\nx2 -> 0\n"
    "e 2 2\nx1 -> 0\nx2 -> x2\n"
    "zero\nx1 -> 0\nx2 -> 0\n";

constexpr const char* kSwapFrobenius =
    "field F 2^2 mod t^2+t+1\nvars 2\ndelta frob^1\n"
    "x1 -> x2\n"
    "x2 -> x1\n";

constexpr const char* kTameFrobenius =
    "field F 2^2 mod t^2+t+1\nvars 2\ndelta frob^1\n"
    "x1 -> x2\n"
    "x2 -> x1 + t*x2^2\n";

std::string show(const std::vector<MultiPoly>& ps) {
  std::string s = "(";
  for (std::size_t k = 0; k < ps.size(); ++k) s += (k ? ", " : "") + to_string(ps[k], variable_names(ps[k].nvars()));
  return s + ")";
}

template <class F>
SelftestRow row(std::string check, std::string expected, F&& body) {
  SelftestRow r{std::move(check), std::move(expected), "", false};
  try {
    body(r);
  } catch (const Error& e) {
    r.observed = e.what();
    r.pass = false;
  }
  return r;
}

}  // namespace

std::vector<SelftestRow> run_selftest(const EngineConfig& cfg, std::uint64_t seed) {
  std::vector<SelftestRow> rows;
  const Field q = Field::rationals();
  const Field gf2 = Field::prime(2);

  rows.push_back(row("parse x1 + x1*x2", "", [&](SelftestRow& r) {
    const auto x1 = MultiPoly::variable(q, 2, 0), x2 = MultiPoly::variable(q, 2, 1);
    const MultiPoly u = x1 + x1 * x2;
    r.expected = to_string(u, variable_names(2));
    const MultiPoly parsed = parse_polynomial("x1 + x1*x2", q, 2);
    r.observed = to_string(parsed, variable_names(2));
    r.pass = parsed == u && parse_polynomial(r.observed, q, 2) == u;
  }));

  const Endomorphism gf2_map = parse_endomorphism(kGf2Counterexample);
  rows.push_back(row("GF(2) counterexample rank", "2", [&](SelftestRow& r) {
    const int k = rank(gf2_map, RankMethod::Elimination, cfg).rank;
    r.observed = std::to_string(k);
    r.pass = k == 2;
  }));

  rows.push_back(row("GF(2) specializations", "4 of 4 give the zero tuple", [&](SelftestRow& r) {
    int zero = 0;
    for (std::size_t v = 0; v < 2; ++v)
      for (std::uint64_t xi = 0; xi < 2; ++xi)
        if (SubstitutionRecord::specialize(v, gf2.element_at(xi)).apply(gf2_map) == Endomorphism::zero(gf2, 2))
          ++zero;
    r.observed = std::to_string(zero) + " of 4 give the zero tuple";
    r.pass = zero == 4;
  }));

  rows.push_back(row("GF(2) full chain", "length 2, first step power", [&](SelftestRow& r) {
    ChainPolicy policy;
    policy.engine = cfg;
    const auto chain = build_full_chain(gf2_map, policy, seed);
    r.observed = "length " + std::to_string(chain.length()) + ", first step " + chain.substitutions.front().kind_name();
    r.pass = chain.length() == 2 && chain.substitutions.front().kind_name() == "power" && verify_chain(chain, cfg).ok;
  }));

  rows.push_back(row("Frobenius (x1^2, x2^2) over GF(2)", "probe 0 < elimination 2, probe refused", [&](SelftestRow& r) {
    const auto x1 = MultiPoly::variable(gf2, 2, 0), x2 = MultiPoly::variable(gf2, 2, 1);
    const Endomorphism frob(gf2, 2, {x1.pow(2), x2.pow(2)});
    const int probe = jacobian_rank_at(frob, random_point(gf2, 2, seed));
    const int elim = rank(frob, RankMethod::Elimination, cfg).rank;
    bool refused = false;
    try {
      rank(frob, RankMethod::JacobianProbe, cfg, seed);
    } catch (const Error& e) {
      refused = e.code() == ErrorCode::MethodRefused;
    }
    r.observed = "probe " + std::to_string(probe) + ", elimination " + std::to_string(elim) +
                 (refused ? ", probe refused" : ", probe accepted");
    r.pass = probe == 0 && elim == 2 && refused;
  }));

  const KroneckerSystem nonbase_system = parse_kronecker(kNonBaseSubbase).system;
  rows.push_back(row("non-base subbase relations", "subbase", [&](SelftestRow& r) {
    const auto rep = verify_subbase(nonbase_system, cfg);
    r.observed = rep.ok ? "subbase" : rep.violations.front();
    r.pass = rep.ok;
  }));

  rows.push_back(row("non-base subbase base test", "not a base, x1 fails", [&](SelftestRow& r) {
    const auto res = verify_base_external(nonbase_system, std::nullopt, cfg);
    r.observed = res.certificate ? "base" : "not a base, x" + std::to_string(*res.failing_variable + 1) + " fails";
    r.pass = !res.certificate && res.failing_variable == 0u;
  }));

  rows.push_back(row("standard system over Q", "base with z = (x1, x2)", [&](SelftestRow& r) {
    const auto res = verify_base_external(KroneckerSystem::standard(q, 2), std::nullopt, cfg);
    r.observed = res.certificate ? "base with z = " + show(res.generators) : "not a base";
    r.pass = res.certificate && res.generators == Endomorphism::identity(q, 2).images();
  }));

  rows.push_back(row("normalization of (5*x1 + 3, 7*x2 - 2)-conjugate", "exact relations", [&](SelftestRow& r) {
    const auto x1 = MultiPoly::variable(q, 2, 0), x2 = MultiPoly::variable(q, 2, 1);
    auto c = [&](std::int64_t n, std::int64_t d) { return q.from_rational(n, d); };
    const Endomorphism sigma(q, 2, {x1.scale(c(5, 1)) + MultiPoly::constant(q, 2, c(3, 1)),
                                    x2.scale(c(7, 1)) - MultiPoly::constant(q, 2, c(2, 1))});
    const Endomorphism sigma_inv(q, 2, {(x1 - MultiPoly::constant(q, 2, c(3, 1))).scale(c(1, 5)),
                                        (x2 + MultiPoly::constant(q, 2, c(2, 1))).scale(c(1, 7))});
    const auto sys = KroneckerSystem::standard(q, 2).conjugated(sigma, sigma_inv);
    const auto res = verify_base_external(sys, std::nullopt, cfg);
    if (!res.certificate) {
      r.observed = "not a base";
      return;
    }
    const auto norm = normalize_base(*res.certificate, cfg);
    const bool exact = satisfies_base_relations(sys, norm.generators, cfg.degree_cap);
    r.observed = (exact ? "exact relations, z' = " : "relations fail, z' = ") + show(norm.generators);
    r.pass = exact;
  }));

  rows.push_back(row("semi-inner conjugation over GF(4)", "Phi(e11) = e22, no violations", [&](SelftestRow& r) {
    const auto swap = parse_automorphism(kSwapFrobenius, cfg);
    const Field& f = swap.field();
    const bool swaps = conjugate(swap, kronecker_endo(f, 2, 0, 0), cfg.degree_cap) == kronecker_endo(f, 2, 1, 1);
    const auto rep = verify_automorphism_properties(parse_automorphism(kTameFrobenius, cfg),
                                                    endomorphism_pairs(f, 2, 4, 2, seed), cfg);
    r.observed = std::string(swaps ? "Phi(e11) = e22" : "Phi(e11) != e22") + ", " +
                 std::to_string(rep.homomorphism_violations + rep.rank_violations) + " violations" +
                 (rep.kronecker_base_check ? "" : ", base check fails");
    r.pass = swaps && rep.ok();
  }));
  return rows;
}

}  // namespace endorank::cli
