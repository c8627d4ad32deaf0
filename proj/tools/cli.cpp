#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <iomanip>
#include <limits>

#include "endorank/text_format.hpp"

namespace endorank::cli {

namespace {

struct Options {
  std::uint64_t seed = 0;
  unsigned r_max = 8;
  std::string method = "elim";
  std::string format = "text";
  std::uint64_t budget = 0;
  std::vector<std::string> files;
  std::string aut_file;
};

struct Context {
  const Options& opt;
  EngineConfig cfg;
  std::ostream& out;

  bool json() const { return opt.format == "json"; }

  void emit(Json report, const std::string& command) const {
    report["schema"] = kJsonSchemaVersion;
    report["command"] = command;
    report["seed"] = opt.seed;
    out << report.dump(2) << "\n";
  }
};

std::uint64_t budget_from_env() {
  const char* env = std::getenv("ENDORANK_BUDGET");
  if (!env || !*env) return kDefaultReductionBudget;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (errno != 0 || *end != '\0' || v == 0 || env[0] == '-')
    fail(ErrorCode::InputError, std::string("ENDORANK_BUDGET must be a positive integer, got '") + env + "'");
  return v;
}

const std::string& single_file(const Options& o, const std::string& command) {
  if (o.files.size() != 1) fail(ErrorCode::InputError, command + " takes exactly one -f file");
  return o.files.front();
}

Endomorphism load_endo(const std::string& path) { return parse_endomorphism(read_text_file(path)); }
KroneckerFile load_kron(const std::string& path) { return parse_kronecker(read_text_file(path)); }

std::string join_polys(const std::vector<MultiPoly>& ps, const std::string& prefix = "x") {
  std::string s = "(";
  for (std::size_t k = 0; k < ps.size(); ++k) {
    if (k) s += ", ";
    s += to_string(ps[k], variable_names(ps[k].nvars(), prefix));
  }
  return s + ")";
}

std::string show(const Endomorphism& e) { return join_polys(e.images()); }

Json poly_array(const std::vector<MultiPoly>& ps, const std::string& prefix = "x") {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(to_string(p, variable_names(p.nvars(), prefix)));
  return a;
}

int cmd_rank(const Context& c) {
  const auto phi = load_endo(single_file(c.opt, "rank"));
  const RankMethod m = c.opt.method == "jacobian" ? RankMethod::JacobianProbe : RankMethod::Elimination;
  const auto cert = rank(phi, m, c.cfg, c.opt.seed);
  const std::string method = m == RankMethod::Elimination ? "elimination" : "jacobian";
  if (c.json()) {
    c.emit({{"rank", cert.rank}, {"method", method}, {"certificate", to_json(cert)}}, "rank");
    return kComputed;
  }
  c.out << "rank " << cert.rank << " (" << method << ")\n";
  if (m == RankMethod::Elimination) {
    const auto& gens = cert.relation_ideal.generators();
    c.out << "relation ideal: " << (gens.empty() ? "(0)" : join_polys(gens, "y")) << "\n";
  }
  return kComputed;
}

int cmd_compare(const Context& c) {
  if (c.opt.files.size() != 2) fail(ErrorCode::InputError, "compare takes exactly two -f files");
  const auto phi = load_endo(c.opt.files[0]);
  const auto psi = load_endo(c.opt.files[1]);
  const auto cmp = compare(phi, psi, c.cfg);
  const int rp = ideal_dimension(cmp.phi_ideal, c.cfg), rq = ideal_dimension(cmp.psi_ideal, c.cfg);
  if (c.json()) {
    c.emit({{"relation", to_string(cmp.relation)},
            {"ranks", {rp, rq}},
            {"certificate", to_json(cmp, phi, psi)}},
           "compare");
    return kComputed;
  }
  c.out << "phi " << to_string(cmp.relation) << " psi\n"
        << "rank(phi) = " << rp << ", rank(psi) = " << rq << "\n"
        << "I_phi contains I_psi: " << (cmp.phi_contains_psi ? "yes" : "no") << "\n"
        << "I_psi contains I_phi: " << (cmp.psi_contains_phi ? "yes" : "no") << "\n";
  return kComputed;
}

int cmd_chain(const Context& c) {
  const auto phi = load_endo(single_file(c.opt, "chain"));
  ChainPolicy policy;
  policy.r_max = c.opt.r_max;
  policy.engine = c.cfg;
  const auto chain = build_full_chain(phi, policy, c.opt.seed);
  const Field& f = phi.field();
  if (c.json()) {
    Json kinds = Json::array();
    for (const auto& s : chain.substitutions) kinds.push_back(s.kind_name());
    c.emit({{"length", chain.length()},
            {"rank", chain.steps.front().rank.rank},
            {"step_kinds", kinds},
            {"verified", chain.verified},
            {"certificate", to_json(chain)}},
           "chain");
    return kComputed;
  }
  c.out << "chain of length " << chain.length() << (chain.verified ? " (verified)" : "") << "\n";
  for (std::size_t k = 0; k < chain.steps.size(); ++k) {
    c.out << "  rank " << chain.steps[k].rank.rank << "  " << show(chain.steps[k].endo) << "\n";
    if (k < chain.substitutions.size()) c.out << "    via " << chain.substitutions[k].to_string(f) << "\n";
  }
  return kComputed;
}

int cmd_kron_verify(const Context& c) {
  const auto kf = load_kron(single_file(c.opt, "kron-verify"));
  const auto rep = verify_subbase(kf.system, c.cfg);
  if (c.json()) {
    c.emit({{"is_subbase", rep.ok},
            {"violations", rep.violations},
            {"certificate", subbase_to_json(kf.system, rep)}},
           "kron-verify");
    return kComputed;
  }
  c.out << (rep.ok ? "subbase" : "not a subbase") << "\n";
  for (const auto& v : rep.violations) c.out << "  " << v << "\n";
  return kComputed;
}

int cmd_kron_classify(const Context& c) {
  const auto kf = load_kron(single_file(c.opt, "kron-classify"));
  const auto cls = classify_representation(kf.system, c.cfg);
  if (c.json()) {
    c.emit({{"representation", to_string(cls.kind)},
            {"ranks", cls.ranks},
            {"certificate", classification_to_json(kf.system, cls)}},
           "kron-classify");
    return kComputed;
  }
  c.out << to_string(cls.kind) << " representation\nranks:";
  for (int r : cls.ranks) c.out << " " << r;
  c.out << "\n";
  return kComputed;
}

int cmd_kron_base(const Context& c) {
  const auto kf = load_kron(single_file(c.opt, "kron-base"));
  const auto res = verify_base_external(kf.system, kf.base, c.cfg);
  const bool is_base = res.certificate.has_value();
  if (c.json()) {
    Json j{{"is_base", is_base}, {"generators", poly_array(res.generators)}};
    if (is_base) {
      j["certificate"] = to_json(*res.certificate);
    } else {
      j["failing_generator_membership"] = "x" + std::to_string(*res.failing_variable + 1);
      j["certificate"] = base_failure_to_json(kf.system, res.generators, *res.failing_variable);
    }
    c.emit(std::move(j), "kron-base");
    return kComputed;
  }
  c.out << (is_base ? "base" : "not a base") << "\n"
        << "generators z = " << join_polys(res.generators) << "\n";
  if (is_base) {
    const auto& w = res.certificate->witnesses;
    for (std::size_t k = 0; k < w.size(); ++k)
      c.out << "  x" << k + 1 << " = " << to_string(w[k], variable_names(w[k].nvars(), "z")) << "\n";
  } else {
    c.out << "x" << *res.failing_variable + 1 << " is not in K[z1..z" << res.generators.size() << "]\n";
  }
  return kComputed;
}

int cmd_kron_normalize(const Context& c) {
  const auto kf = load_kron(single_file(c.opt, "kron-normalize"));
  const auto res = verify_base_external(kf.system, kf.base, c.cfg);
  if (!res.certificate)
    fail(ErrorCode::NotABase, "system is not a base: x" + std::to_string(*res.failing_variable + 1) +
                                  " is not in the subalgebra of its image generators");
  const auto norm = normalize_base(*res.certificate, c.cfg);
  if (c.json()) {
    c.emit({{"generators", poly_array(res.generators)},
            {"normalized", poly_array(norm.generators)},
            {"certificate", to_json(norm)}},
           "kron-normalize");
    return kComputed;
  }
  c.out << "generators z  = " << join_polys(res.generators) << "\n"
        << "normalized z' = " << join_polys(norm.generators) << "\n";
  return kComputed;
}

int cmd_conj(const Context& c) {
  if (c.opt.aut_file.empty()) fail(ErrorCode::InputError, "conj needs -a <automorphism file>");
  const auto a = parse_automorphism(read_text_file(c.opt.aut_file), c.cfg);
  const auto g = load_endo(single_file(c.opt, "conj"));
  const auto image = conjugate(a, g, c.cfg.degree_cap);
  const int rb = rank(g, RankMethod::Elimination, c.cfg).rank;
  const int ra = rank(image, RankMethod::Elimination, c.cfg).rank;
  if (c.json()) {
    c.emit({{"image", poly_array(image.images())},
            {"rank_before", rb},
            {"rank_after", ra},
            {"certificate", conjugation_to_json(a, g, image)}},
           "conj");
    return kComputed;
  }
  c.out << "Phi(g) = " << show(image) << "\n"
        << "rank " << rb << " -> " << ra << "\n";
  return kComputed;
}

int cmd_invert(const Context& c) {
  const auto s = load_endo(single_file(c.opt, "invert"));
  const auto inv = invert_poly_map(s.images(), c.cfg);
  if (c.json()) {
    Json j{{"invertible", inv.has_value()}};
    if (inv) {
      j["inverse"] = poly_array(*inv);
      j["certificate"] = inverse_to_json(s.images(), *inv);
    }
    c.emit(std::move(j), "invert");
    return kComputed;
  }
  if (inv)
    c.out << "inverse " << join_polys(*inv) << "\n";
  else
    c.out << "not invertible\n";
  return kComputed;
}

int cmd_verify(const Context& c) {
  const std::string text = read_text_file(single_file(c.opt, "verify"));
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::InputError, std::string("malformed JSON: ") + e.what());
  }
  const auto r = replay_certificate(j, c.cfg);
  if (c.json()) {
    c.emit({{"ok", r.ok}, {"kind", r.kind}, {"diagnostics", r.diagnostics}}, "verify");
    return r.ok ? kComputed : kInputError;
  }
  c.out << r.kind << " certificate " << (r.ok ? "verified" : "REJECTED") << "\n";
  for (const auto& d : r.diagnostics) c.out << "  " << d << "\n";
  return r.ok ? kComputed : kInputError;
}

int cmd_selftest(const Context& c) {
  const auto rows = run_selftest(c.cfg, c.opt.seed);
  const bool all = std::all_of(rows.begin(), rows.end(), [](const SelftestRow& r) { return r.pass; });
  if (c.json()) {
    Json table = Json::array();
    for (const auto& r : rows)
      table.push_back({{"check", r.check}, {"expected", r.expected}, {"observed", r.observed}, {"pass", r.pass}});
    c.emit({{"checks", table}, {"all_pass", all}}, "selftest");
  } else {
    std::size_t w = 5;
    for (const auto& r : rows) w = std::max(w, r.check.size());
    c.out << std::left << std::setw(static_cast<int>(w)) << "check" << "  status  expected | observed\n";
    for (const auto& r : rows)
      c.out << std::setw(static_cast<int>(w)) << r.check << "  " << (r.pass ? "PASS  " : "FAIL  ") << "  "
            << r.expected << " | " << r.observed << "\n";
    c.out << (all ? "all checks pass" : "some checks FAIL") << "\n";
  }
  return all ? kComputed : kInputError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Exact rank, chain, Kronecker base and conjugation computations for polynomial endomorphisms",
               "endorank"};
  app.require_subcommand(1, 1);
  app.add_option("--seed", opt.seed, "seed for every randomized choice")->capture_default_str();
  app.add_option("--r-max", opt.r_max, "largest power-substitution exponent")
      ->check(CLI::Range(1u, 64u))
      ->capture_default_str();
  app.add_option("--method", opt.method, "rank method")->check(CLI::IsMember({"elim", "jacobian"}))->capture_default_str();
  app.add_option("--format", opt.format, "report format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.add_option("--budget", opt.budget, "Groebner reduction budget (overrides ENDORANK_BUDGET)")
      ->check(CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()));

  using Handler = int (*)(const Context&);
  struct Sub {
    const char* name;
    const char* help;
    Handler handler;
    bool takes_files;
  };
  const Sub subs[] = {
      {"rank", "rank of an endomorphism", cmd_rank, true},
      {"compare", "order relation between two endomorphisms (-f phi -f psi)", cmd_compare, true},
      {"chain", "rank-reducing chain down to rank 0", cmd_chain, true},
      {"kron-verify", "check the Kronecker relations of a system", cmd_kron_verify, true},
      {"kron-classify", "singular or nonsingular representation", cmd_kron_classify, true},
      {"kron-base", "decide whether a subbase is a base", cmd_kron_base, true},
      {"kron-normalize", "rescale a base so the relations hold exactly", cmd_kron_normalize, true},
      {"conj", "conjugate an endomorphism by a semi-linear automorphism (-a aut -f endo)", cmd_conj, true},
      {"invert", "inverse of a polynomial map", cmd_invert, true},
      {"verify", "replay a JSON certificate or report", cmd_verify, true},
      {"selftest", "worked-example regression suite", cmd_selftest, false},
  };
  std::vector<std::pair<CLI::App*, Handler>> handlers;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->fallthrough();
    if (s.takes_files) sub->add_option("-f,--file", opt.files, "input file")->required();
    if (std::string(s.name) == "conj") sub->add_option("-a,--aut", opt.aut_file, "automorphism file")->required();
    handlers.emplace_back(sub, s.handler);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kComputed : kInputError;
  }

  try {
    EngineConfig cfg;
    cfg.reduction_budget = opt.budget ? opt.budget : budget_from_env();
    Context ctx{opt, cfg, out};
    for (const auto& [sub, handler] : handlers)
      if (sub->parsed()) return handler(ctx);
    return kInputError;
  } catch (const Error& e) {
    err << "endorank: " << e.what() << "\n";
    if (const auto* se = dynamic_cast<const SearchExhaustedError*>(&e)) {
      err << "attempted " << se->attempts().size() << " candidates\n";
    }
    return e.is_exhaustion() ? kExhausted : kInputError;
  }
}

}  // namespace endorank::cli
