#include "endorank/chains.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <random>
#include <sstream>

namespace endorank {

SubstitutionRecord SubstitutionRecord::specialize(std::size_t var, Scalar value) {
  SubstitutionAtom a;
  a.kind = SubstitutionAtom::Kind::Specialize;
  a.var = var;
  a.value = std::move(value);
  return SubstitutionRecord{{a}};
}

SubstitutionRecord SubstitutionRecord::power(std::size_t src, std::size_t dst, unsigned r) {
  SubstitutionAtom a;
  a.kind = SubstitutionAtom::Kind::Power;
  a.var = src;
  a.dst = dst;
  a.r = r;
  return SubstitutionRecord{{a}};
}

SubstitutionRecord SubstitutionRecord::collapse(std::vector<Scalar> point) {
  SubstitutionAtom a;
  a.kind = SubstitutionAtom::Kind::Collapse;
  a.point = std::move(point);
  return SubstitutionRecord{{a}};
}

std::string SubstitutionRecord::kind_name() const {
  if (atoms.empty()) return "identity";
  const auto k = atoms.front().kind;
  for (const auto& a : atoms)
    if (a.kind != k) return "mixed";
  switch (k) {
    case SubstitutionAtom::Kind::Specialize: return "specialize";
    case SubstitutionAtom::Kind::Power: return "power";
    case SubstitutionAtom::Kind::Collapse: return "collapse";
  }
  return "?";
}

Endomorphism SubstitutionRecord::sigma(const Field& f, std::size_t n) const {
  auto images = Endomorphism::identity(f, n).images();
  std::vector<bool> touched(n, false);
  auto claim = [&](std::size_t v) {
    if (v >= n) fail(ErrorCode::InvalidIndex, "substitution variable out of range");
    if (touched[v]) fail(ErrorCode::InputError, "substitution assigns a variable twice");
    touched[v] = true;
  };
  for (const auto& a : atoms) {
    switch (a.kind) {
      case SubstitutionAtom::Kind::Specialize:
        claim(a.var);
        images[a.var] = MultiPoly::constant(f, n, a.value);
        break;
      case SubstitutionAtom::Kind::Power:
        claim(a.var);
        if (a.dst >= n || a.dst == a.var) fail(ErrorCode::InvalidIndex, "power substitution needs a distinct target");
        images[a.var] = MultiPoly::monomial(f, Monomial::variable(n, a.dst, a.r), f.one());
        break;
      case SubstitutionAtom::Kind::Collapse:
        if (a.point.size() != n) fail(ErrorCode::ArityMismatch, "collapse point has wrong arity");
        for (std::size_t k = 0; k < n; ++k) {
          claim(k);
          images[k] = MultiPoly::constant(f, n, a.point[k]);
        }
        break;
    }
  }
  return Endomorphism(f, n, std::move(images));
}

Endomorphism SubstitutionRecord::apply(const Endomorphism& psi, unsigned degree_cap) const {
  return compose(sigma(psi.field(), psi.nvars()), psi, degree_cap);
}

std::string SubstitutionRecord::to_string(const Field& f) const {
  std::ostringstream os;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) os << ", ";
    const auto& a = atoms[i];
    switch (a.kind) {
      case SubstitutionAtom::Kind::Specialize: os << "x" << a.var + 1 << " -> " << f.format(a.value); break;
      case SubstitutionAtom::Kind::Power: os << "x" << a.var + 1 << " -> x" << a.dst + 1 << "^" << a.r; break;
      case SubstitutionAtom::Kind::Collapse:
        os << "x -> (";
        for (std::size_t k = 0; k < a.point.size(); ++k) os << (k ? ", " : "") << f.format(a.point[k]);
        os << ")";
        break;
    }
  }
  return os.str();
}

std::vector<Scalar> specialization_schedule(const Field& f, std::uint64_t seed, unsigned random_values) {
  std::vector<Scalar> out;
  if (f.is_finite()) {
    for (const auto& e : enumerate_elements(f)) out.push_back(e.value());
    return out;
  }
  out.push_back(f.zero());
  for (int v = 1; v <= 8; ++v) {
    out.push_back(f.from_int(v));
    out.push_back(f.from_int(-v));
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> d(-(std::int64_t{1} << 31), (std::int64_t{1} << 31) - 1);
  for (unsigned i = 0; i < random_values; ++i) out.push_back(f.from_int(d(rng)));
  return out;
}

namespace {

std::uint32_t live_variables(const Endomorphism& psi) {
  std::uint32_t s = 0;
  for (const auto& f : psi.images()) s |= f.support();
  return s;
}

std::vector<std::size_t> bits(std::uint32_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (mask & (1u << i)) out.push_back(i);
  return out;
}

class Search {
 public:
  Search(const Endomorphism& psi, int target, const ChainPolicy& policy, std::uint64_t seed)
      : psi_(psi), target_(target), policy_(policy), seed_(seed) {}

  /// Returns true when the candidate lowers the rank to exactly target_.
  bool attempt(const SubstitutionRecord& rec) {
    const Field& F = psi_.field();
    const std::string label = rec.to_string(F);
    std::optional<Endomorphism> next;
    try {
      next = rec.apply(psi_, policy_.engine.degree_cap);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegreeCapExceeded) throw;
      log_.push_back(label + ": degree cap");
      return false;
    }
    // The Jacobian rank at any point bounds the rank from below.
    const auto point = random_point(F, psi_.nvars(), seed_ + log_.size());
    const int probe = jacobian_rank_at(*next, point);
    if (probe > target_) {
      log_.push_back(label + ": probe rank " + std::to_string(probe));
      return false;
    }
    auto cert = rank(*next, RankMethod::Elimination, policy_.engine);
    log_.push_back(label + ": rank " + std::to_string(cert.rank));
    if (cert.rank != target_) return false;
    found_ = RankReduction{std::move(*next), rec, std::move(cert), {}};
    return true;
  }

  RankReduction take() {
    found_->attempts = std::move(log_);
    return std::move(*found_);
  }
  std::vector<std::string>& log() { return log_; }

 private:
  const Endomorphism& psi_;
  int target_;
  const ChainPolicy& policy_;
  std::uint64_t seed_;
  std::vector<std::string> log_;
  std::optional<RankReduction> found_;
};

// Enumerates value tuples for the given variables from a prefix of the
// schedule, at most `cap` tuples, calling fn on each record.
template <class Fn>
bool for_each_tuple(const std::vector<std::size_t>& vars, const std::vector<Scalar>& values, std::size_t cap,
                    const SubstitutionRecord& base, Fn&& fn) {
  std::vector<std::size_t> idx(vars.size(), 0);
  for (std::size_t count = 0; count < cap; ++count) {
    SubstitutionRecord rec = base;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      auto one = SubstitutionRecord::specialize(vars[i], values[idx[i]]);
      rec.atoms.push_back(one.atoms.front());
    }
    if (fn(rec)) return true;
    std::size_t pos = vars.size();
    while (pos > 0) {
      --pos;
      if (++idx[pos] < values.size()) break;
      idx[pos] = 0;
      if (pos == 0) return false;
    }
    if (vars.empty()) return false;
  }
  return false;
}

}  // namespace

RankReduction reduce_rank_once(const Endomorphism& psi, const ChainPolicy& policy, std::uint64_t seed) {
  const Field& F = psi.field();
  const std::size_t n = psi.nvars();
  const int m = rank(psi, RankMethod::Elimination, policy.engine).rank;
  if (m < 1) fail(ErrorCode::PreconditionViolated, "rank 0 endomorphism cannot be reduced");

  Search search(psi, m - 1, policy, seed);
  if (m == 1) {
    if (search.attempt(SubstitutionRecord::collapse(std::vector<Scalar>(n, F.zero())))) return search.take();
    fail(ErrorCode::InvariantViolation, "collapse to a point did not reach rank 0");
  }

  const auto schedule = specialization_schedule(F, seed, policy.random_values);
  const std::uint32_t live = live_variables(psi);
  const auto live_vars = bits(live);

  // Single specializations, last variable first.
  for (auto it = live_vars.rbegin(); it != live_vars.rend(); ++it)
    for (const auto& xi : schedule)
      if (search.attempt(SubstitutionRecord::specialize(*it, xi))) return search.take();

  // Power substitutions x_src -> x_dst^r.
  for (unsigned r = 2; r <= policy.r_max; ++r)
    for (std::size_t src : live_vars)
      for (std::size_t dst = 0; dst < n; ++dst)
        if (dst != src && search.attempt(SubstitutionRecord::power(src, dst, r))) return search.take();

  if (policy.fallback) {
    const std::size_t prefix = F.is_finite() ? schedule.size() : std::min<std::size_t>(schedule.size(), 5);
    const std::vector<Scalar> values(schedule.begin(), schedule.begin() + static_cast<std::ptrdiff_t>(prefix));
    const std::size_t cap = 125;
    auto attempt = [&](const SubstitutionRecord& rec) { return search.attempt(rec); };

    // Several variables specialized at once.
    for (std::size_t size = 2; size < live_vars.size(); ++size) {
      for (std::uint32_t subset = live; subset != 0; subset = (subset - 1) & live) {
        if (static_cast<std::size_t>(std::popcount(subset)) != size) continue;
        if (for_each_tuple(bits(subset), values, cap, SubstitutionRecord{}, attempt)) return search.take();
      }
    }
    // One power substitution combined with specializations elsewhere.
    const unsigned r_combo = std::min(policy.r_max, 4u);
    for (unsigned r = 2; r <= r_combo; ++r) {
      for (std::size_t src : live_vars) {
        for (std::size_t dst = 0; dst < n; ++dst) {
          if (dst == src) continue;
          const std::uint32_t rest = live & ~(1u << src) & ~(1u << dst);
          for (std::uint32_t subset = rest; subset != 0; subset = (subset - 1) & rest) {
            if (for_each_tuple(bits(subset), values, cap, SubstitutionRecord::power(src, dst, r), attempt))
              return search.take();
          }
        }
      }
    }
  }
  throw SearchExhaustedError("no substitution lowers rank " + std::to_string(m) + " to " + std::to_string(m - 1),
                             std::move(search.log()));
}

ChainCertificate build_full_chain(const Endomorphism& psi, const ChainPolicy& policy, std::uint64_t seed) {
  ChainCertificate c;
  c.seed = seed;
  c.steps.push_back({psi, rank(psi, RankMethod::Elimination, policy.engine)});
  while (c.steps.back().rank.rank > 0) {
    auto red = reduce_rank_once(c.steps.back().endo, policy, seed + c.steps.size());
    c.substitutions.push_back(std::move(red.record));
    c.steps.push_back({std::move(red.result), std::move(red.rank)});
  }
  const auto check = verify_chain(c, policy.engine);
  if (!check.ok) {
    std::string msg = "constructed chain failed verification";
    for (const auto& d : check.diagnostics) msg += "; " + d;
    fail(ErrorCode::InvariantViolation, msg);
  }
  c.verified = true;
  return c;
}

ChainVerification verify_chain(const ChainCertificate& c, const EngineConfig& cfg) {
  ChainVerification v;
  auto bad = [&](std::string msg) {
    v.ok = false;
    v.diagnostics.push_back(std::move(msg));
  };
  if (c.steps.empty()) {
    bad("chain has no steps");
    return v;
  }
  if (c.substitutions.size() + 1 != c.steps.size()) {
    bad("expected " + std::to_string(c.steps.size() - 1) + " substitutions, found " +
        std::to_string(c.substitutions.size()));
    return v;
  }
  std::vector<int> ranks;
  for (std::size_t k = 0; k < c.steps.size(); ++k) {
    try {
      const int r = rank(c.steps[k].endo, RankMethod::Elimination, cfg).rank;
      ranks.push_back(r);
      if (r != c.steps[k].rank.rank)
        bad("step " + std::to_string(k) + ": recorded rank " + std::to_string(c.steps[k].rank.rank) +
            " but elimination gives " + std::to_string(r));
    } catch (const Error& e) {
      bad("step " + std::to_string(k) + ": " + e.what());
      return v;
    }
  }
  for (std::size_t k = 0; k + 1 < c.steps.size(); ++k) {
    const std::string pair = "steps " + std::to_string(k) + "->" + std::to_string(k + 1);
    try {
      if (c.substitutions[k].apply(c.steps[k].endo, cfg.degree_cap) != c.steps[k + 1].endo)
        bad(pair + ": substitution does not reproduce the next step");
      if (ranks[k + 1] != ranks[k] - 1)
        bad(pair + ": rank " + std::to_string(ranks[k]) + " -> " + std::to_string(ranks[k + 1]) +
            " is not a single decrement");
      const auto cmp = compare(c.steps[k + 1].endo, c.steps[k].endo, cfg);
      if (cmp.relation != Relation::StrictlyBelow)
        bad(pair + ": later step is " + to_string(cmp.relation) + " to the earlier one, not strictly_below");
    } catch (const Error& e) {
      bad(pair + ": " + e.what());
    }
  }
  if (ranks.back() != 0) bad("final step has rank " + std::to_string(ranks.back()));
  return v;
}

InternalRankReport internal_rank_lower_bound(const Endomorphism& psi, const ChainPolicy& policy, std::uint64_t seed) {
  InternalRankReport r;
  r.chain = build_full_chain(psi, policy, seed);
  r.chain_length = static_cast<int>(r.chain.length());
  r.elimination_rank = r.chain.steps.front().rank.rank;
  r.equal = r.chain_length == r.elimination_rank;
  return r;
}

}  // namespace endorank
