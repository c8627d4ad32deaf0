#include "endorank/certificates.hpp"

#include "endorank/text_format.hpp"

namespace endorank {

namespace {

Json polys(const std::vector<MultiPoly>& ps, const std::string& prefix) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(to_string(p, variable_names(p.nvars(), prefix)));
  return a;
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::InputError, std::string("certificate lacks '") + key + "'");
  return j.at(key);
}

template <class T>
T get(const Json& j, const char* key) {
  try {
    return member(j, key).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorCode::InputError, std::string("certificate field '") + key + "' has the wrong type");
  }
}

Field field_of(const Json& j) { return parse_field_header(get<std::string>(j, "field")); }

std::vector<MultiPoly> polys_from(const Json& j, const char* key, const Field& f, std::size_t n,
                                  const std::string& prefix) {
  std::vector<MultiPoly> out;
  const Json& a = member(j, key);
  if (!a.is_array()) fail(ErrorCode::InputError, std::string("'") + key + "' must be an array");
  for (const auto& s : a) {
    if (!s.is_string()) fail(ErrorCode::InputError, std::string("'") + key + "' must hold polynomial strings");
    out.push_back(parse_polynomial(s.get<std::string>(), f, n, 1, 0, prefix));
  }
  return out;
}

Endomorphism endo_in(const Json& j, const Field& f, std::size_t n) {
  auto im = polys_from(j, "images", f, n, "x");
  if (im.size() != n) fail(ErrorCode::InputError, "endomorphism needs one image per variable");
  return Endomorphism(f, n, std::move(im));
}

std::size_t nvars_of(const Json& j) {
  const auto n = get<std::size_t>(j, "vars");
  if (n == 0 || n > kMaxVars) fail(ErrorCode::InputError, "vars out of range");
  return n;
}

Json images_only(const Endomorphism& e) { return polys(e.images(), "x"); }

bool same_ideal(const Ideal& a, const Ideal& b, const EngineConfig& cfg) {
  return ideal_contains(a, b, cfg) && ideal_contains(b, a, cfg);
}

}  // namespace

Json to_json(const Endomorphism& e) {
  return Json{{"field", e.field().header()}, {"vars", e.nvars()}, {"images", images_only(e)}};
}

Endomorphism endomorphism_from_json(const Json& j) { return endo_in(j, field_of(j), nvars_of(j)); }

Json to_json(const RankCertificate& c) {
  Json j{{"kind", "rank"},
         {"endomorphism", to_json(c.endo)},
         {"rank", c.rank},
         {"method", c.method == RankMethod::Elimination ? "elimination" : "jacobian"}};
  if (c.method == RankMethod::Elimination) {
    j["relation_ideal"] = polys(c.relation_ideal.generators(), "y");
  } else {
    j["seed"] = c.seed;
    Json pt = Json::array();
    for (const auto& v : c.probe_point) pt.push_back(v.to_string());
    j["probe_point"] = pt;
  }
  return j;
}

RankCertificate rank_certificate_from_json(const Json& j) {
  const Endomorphism e = endomorphism_from_json(member(j, "endomorphism"));
  const Field& f = e.field();
  const std::size_t n = e.nvars();
  const auto method = get<std::string>(j, "method");
  RankCertificate c{e, Ideal(f, n), get<int>(j, "rank"), RankMethod::Elimination, 0, {}};
  if (method == "elimination") {
    c.relation_ideal = Ideal(f, n, polys_from(j, "relation_ideal", f, n, "y"));
  } else if (method == "jacobian") {
    c.method = RankMethod::JacobianProbe;
    c.seed = get<std::uint64_t>(j, "seed");
    for (const auto& v : member(j, "probe_point"))
      c.probe_point.push_back(parse_polynomial(v.get<std::string>(), f, 1).constant_term());
  } else {
    fail(ErrorCode::InputError, "unknown rank method '" + method + "'");
  }
  return c;
}

Json to_json(const SubstitutionRecord& r, const Field& f) {
  Json atoms = Json::array();
  for (const auto& a : r.atoms) {
    switch (a.kind) {
      case SubstitutionAtom::Kind::Specialize:
        atoms.push_back({{"type", "specialize"}, {"var", a.var + 1}, {"value", f.format(a.value)}});
        break;
      case SubstitutionAtom::Kind::Power:
        atoms.push_back({{"type", "power"}, {"var", a.var + 1}, {"dst", a.dst + 1}, {"r", a.r}});
        break;
      case SubstitutionAtom::Kind::Collapse: {
        Json pt = Json::array();
        for (const auto& v : a.point) pt.push_back(f.format(v));
        atoms.push_back({{"type", "collapse"}, {"point", pt}});
        break;
      }
    }
  }
  return Json{{"kind", r.kind_name()}, {"text", r.to_string(f)}, {"atoms", atoms}};
}

SubstitutionRecord substitution_from_json(const Json& j, const Field& f) {
  auto scalar = [&](const Json& v) {
    if (!v.is_string()) fail(ErrorCode::InputError, "field elements are stored as strings");
    return parse_polynomial(v.get<std::string>(), f, 1).constant_term().value();
  };
  SubstitutionRecord r;
  for (const auto& a : member(j, "atoms")) {
    const auto type = get<std::string>(a, "type");
    SubstitutionAtom atom;
    if (type == "specialize") {
      atom.kind = SubstitutionAtom::Kind::Specialize;
      atom.var = get<std::size_t>(a, "var") - 1;
      atom.value = scalar(member(a, "value"));
    } else if (type == "power") {
      atom.kind = SubstitutionAtom::Kind::Power;
      atom.var = get<std::size_t>(a, "var") - 1;
      atom.dst = get<std::size_t>(a, "dst") - 1;
      atom.r = get<unsigned>(a, "r");
    } else if (type == "collapse") {
      atom.kind = SubstitutionAtom::Kind::Collapse;
      for (const auto& v : member(a, "point")) atom.point.push_back(scalar(v));
    } else {
      fail(ErrorCode::InputError, "unknown substitution type '" + type + "'");
    }
    r.atoms.push_back(std::move(atom));
  }
  return r;
}

Json to_json(const ChainCertificate& c) {
  Json steps = Json::array();
  for (const auto& s : c.steps)
    steps.push_back({{"images", images_only(s.endo)},
                     {"rank", s.rank.rank},
                     {"relation_ideal", polys(s.rank.relation_ideal.generators(), "y")}});
  const Field& f = c.steps.front().endo.field();
  Json subs = Json::array();
  for (const auto& r : c.substitutions) subs.push_back(to_json(r, f));
  return Json{{"kind", "chain"},
              {"field", f.header()},
              {"vars", c.steps.front().endo.nvars()},
              {"seed", c.seed},
              {"length", c.length()},
              {"verified", c.verified},
              {"steps", steps},
              {"substitutions", subs}};
}

ChainCertificate chain_certificate_from_json(const Json& j) {
  const Field f = field_of(j);
  const std::size_t n = nvars_of(j);
  ChainCertificate c;
  c.seed = get<std::uint64_t>(j, "seed");
  c.verified = get<bool>(j, "verified");
  for (const auto& s : member(j, "steps")) {
    const Endomorphism e = endo_in(s, f, n);
    RankCertificate rc{e, Ideal(f, n, polys_from(s, "relation_ideal", f, n, "y")), get<int>(s, "rank"),
                       RankMethod::Elimination, 0, {}};
    c.steps.push_back({e, std::move(rc)});
  }
  for (const auto& r : member(j, "substitutions")) c.substitutions.push_back(substitution_from_json(r, f));
  return c;
}

Json to_json(const KroneckerSystem& s) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < s.n(); ++i)
    for (std::size_t j = 0; j < s.n(); ++j)
      entries.push_back({{"i", i + 1}, {"j", j + 1}, {"images", images_only(s.entry(i, j))}});
  Json out{{"field", s.field().header()}, {"vars", s.n()}, {"entries", entries}};
  if (s.zero()) out["zero"] = images_only(*s.zero());
  return out;
}

KroneckerSystem kronecker_system_from_json(const Json& j) {
  const Field f = field_of(j);
  const std::size_t n = nvars_of(j);
  std::vector<std::optional<Endomorphism>> slots(n * n);
  for (const auto& e : member(j, "entries")) {
    const auto i = get<std::size_t>(e, "i"), k = get<std::size_t>(e, "j");
    if (i < 1 || i > n || k < 1 || k > n) fail(ErrorCode::InputError, "Kronecker index out of range");
    slots[(i - 1) * n + (k - 1)] = endo_in(e, f, n);
  }
  std::vector<Endomorphism> entries;
  for (auto& s : slots) {
    if (!s) fail(ErrorCode::InputError, "Kronecker system is missing an entry");
    entries.push_back(std::move(*s));
  }
  std::optional<Endomorphism> zero;
  if (j.contains("zero")) zero = Endomorphism(f, n, polys_from(j, "zero", f, n, "x"));
  return KroneckerSystem(n, std::move(entries), std::move(zero));
}

Json to_json(const BaseCertificate& c) {
  return Json{{"kind", "base"},
              {"system", to_json(c.system)},
              {"generators", polys(c.generators, "x")},
              {"witnesses", polys(c.witnesses, "z")},
              {"normalized", c.normalized}};
}

BaseCertificate base_certificate_from_json(const Json& j) {
  KroneckerSystem s = kronecker_system_from_json(member(j, "system"));
  const Field f = s.field();
  const std::size_t n = s.n();
  auto gens = polys_from(j, "generators", f, n, "x");
  auto wits = polys_from(j, "witnesses", f, n, "z");
  if (gens.size() != n || wits.size() != n) fail(ErrorCode::InputError, "base certificate needs n generators and witnesses");
  return BaseCertificate{std::move(s), std::move(gens), std::move(wits), get<bool>(j, "normalized")};
}

Json to_json(const Comparison& c, const Endomorphism& phi, const Endomorphism& psi) {
  return Json{{"kind", "compare"},
              {"phi", to_json(phi)},
              {"psi", to_json(psi)},
              {"relation", to_string(c.relation)},
              {"phi_ideal", polys(c.phi_ideal.generators(), "y")},
              {"psi_ideal", polys(c.psi_ideal.generators(), "y")},
              {"phi_contains_psi", c.phi_contains_psi},
              {"psi_contains_phi", c.psi_contains_phi}};
}

Json to_json(const SemiLinearAut& a) {
  return Json{{"field", a.field().header()},
              {"vars", a.nvars()},
              {"delta", a.delta().to_string()},
              {"s", polys(a.s(), "x")},
              {"s_inv", polys(a.s_inv(), "x")}};
}

SemiLinearAut automorphism_from_json(const Json& j) {
  const Field f = field_of(j);
  const std::size_t n = nvars_of(j);
  const auto d = get<std::string>(j, "delta");
  FieldAutomorphism delta = FieldAutomorphism::identity(f);
  if (d != "identity") {
    if (d.rfind("frob^", 0) != 0) fail(ErrorCode::InputError, "unknown field automorphism '" + d + "'");
    delta = FieldAutomorphism::frobenius_power(f, static_cast<unsigned>(std::stoul(d.substr(5))));
  }
  return SemiLinearAut(delta, polys_from(j, "s", f, n, "x"), polys_from(j, "s_inv", f, n, "x"));
}

Json base_failure_to_json(const KroneckerSystem& s, const std::vector<MultiPoly>& generators, std::size_t failing) {
  return Json{{"kind", "base_failure"},
              {"system", to_json(s)},
              {"generators", polys(generators, "x")},
              {"failing_variable", "x" + std::to_string(failing + 1)}};
}

Json subbase_to_json(const KroneckerSystem& s, const SubbaseReport& r) {
  return Json{{"kind", "subbase"}, {"system", to_json(s)}, {"is_subbase", r.ok}, {"violations", r.violations}};
}

Json classification_to_json(const KroneckerSystem& s, const Classification& c) {
  return Json{{"kind", "classification"},
              {"system", to_json(s)},
              {"representation", to_string(c.kind)},
              {"ranks", c.ranks}};
}

Json conjugation_to_json(const SemiLinearAut& a, const Endomorphism& g, const Endomorphism& image) {
  return Json{{"kind", "conjugation"},
              {"automorphism", to_json(a)},
              {"endomorphism", to_json(g)},
              {"image", to_json(image)}};
}

Json inverse_to_json(const std::vector<MultiPoly>& s, const std::vector<MultiPoly>& s_inv) {
  return Json{{"kind", "inverse"},
              {"field", s.front().field().header()},
              {"vars", s.size()},
              {"map", polys(s, "x")},
              {"inverse", polys(s_inv, "x")}};
}

ReplayResult replay_certificate(const Json& input, const EngineConfig& cfg) {
  const Json& j = input.is_object() && input.contains("certificate") ? input.at("certificate") : input;
  ReplayResult r;
  r.kind = get<std::string>(j, "kind");
  auto check = [&](bool cond, const std::string& msg) {
    if (!cond) r.diagnostics.push_back(msg);
  };

  if (r.kind == "rank") {
    const auto c = rank_certificate_from_json(j);
    if (c.method == RankMethod::Elimination) {
      check(same_ideal(c.relation_ideal, relation_ideal(c.endo, cfg), cfg), "relation ideal differs from recomputation");
      check(ideal_dimension(c.relation_ideal, cfg) == c.rank, "rank differs from the dimension of the relation ideal");
    } else {
      check(jacobian_rank_at(c.endo, c.probe_point) == c.rank, "Jacobian rank at the probe point differs");
    }
  } else if (r.kind == "chain") {
    const auto v = verify_chain(chain_certificate_from_json(j), cfg);
    r.diagnostics = v.diagnostics;
    check(v.ok, "chain verification failed");
  } else if (r.kind == "compare") {
    const auto phi = endomorphism_from_json(member(j, "phi"));
    const auto psi = endomorphism_from_json(member(j, "psi"));
    const auto fresh = compare(phi, psi, cfg);
    const Ideal ip(phi.field(), phi.nvars(), polys_from(j, "phi_ideal", phi.field(), phi.nvars(), "y"));
    const Ideal iq(psi.field(), psi.nvars(), polys_from(j, "psi_ideal", psi.field(), psi.nvars(), "y"));
    check(same_ideal(ip, fresh.phi_ideal, cfg), "phi relation ideal differs from recomputation");
    check(same_ideal(iq, fresh.psi_ideal, cfg), "psi relation ideal differs from recomputation");
    check(get<std::string>(j, "relation") == to_string(fresh.relation), "recorded relation differs");
  } else if (r.kind == "base") {
    const auto c = base_certificate_from_json(j);
    const auto sub = verify_subbase(c.system, cfg);
    check(sub.ok, "system is not a subbase");
    const auto xs = Endomorphism::identity(c.system.field(), c.system.n()).images();
    for (std::size_t k = 0; k < xs.size(); ++k)
      check(c.witnesses[k].substitute(c.generators, 0xFFFF) == xs[k],
            "witness for x" + std::to_string(k + 1) + " does not reproduce it");
    if (c.normalized)
      check(satisfies_base_relations(c.system, c.generators, cfg.degree_cap), "normalized base fails the relations");
  } else if (r.kind == "base_failure") {
    const auto s = kronecker_system_from_json(member(j, "system"));
    const auto gens = polys_from(j, "generators", s.field(), s.n(), "x");
    const auto var = parse_polynomial(get<std::string>(j, "failing_variable"), s.field(), s.n());
    check(!subalgebra_member(var, gens, cfg), "failing variable is in fact a member");
  } else if (r.kind == "subbase") {
    const auto s = kronecker_system_from_json(member(j, "system"));
    check(verify_subbase(s, cfg).ok == get<bool>(j, "is_subbase"), "subbase verdict differs from recomputation");
  } else if (r.kind == "classification") {
    const auto s = kronecker_system_from_json(member(j, "system"));
    const auto c = classify_representation(s, cfg);
    check(to_string(c.kind) == get<std::string>(j, "representation"), "classification differs from recomputation");
  } else if (r.kind == "conjugation") {
    const auto a = automorphism_from_json(member(j, "automorphism"));
    const auto g = endomorphism_from_json(member(j, "endomorphism"));
    const auto image = endomorphism_from_json(member(j, "image"));
    check(conjugate(a, g, cfg.degree_cap) == image, "conjugate differs from recomputation");
  } else if (r.kind == "inverse") {
    const Field f = field_of(j);
    const std::size_t n = nvars_of(j);
    const auto s = polys_from(j, "map", f, n, "x");
    const auto inv = polys_from(j, "inverse", f, n, "x");
    const auto xs = Endomorphism::identity(f, n).images();
    for (std::size_t k = 0; k < n; ++k) {
      check(s[k].substitute(inv, 0xFFFF) == xs[k], "map after inverse is not the identity at x" + std::to_string(k + 1));
      check(inv[k].substitute(s, 0xFFFF) == xs[k], "inverse after map is not the identity at x" + std::to_string(k + 1));
    }
  } else {
    fail(ErrorCode::InputError, "unknown certificate kind '" + r.kind + "'");
  }
  r.ok = r.diagnostics.empty();
  return r;
}

}  // namespace endorank
