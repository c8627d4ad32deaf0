#include "endorank/poly.hpp"

#include <algorithm>
#include <unordered_map>

namespace endorank {

namespace {

const MonomialOrder& canonical_order() {
  static const MonomialOrder order = MonomialOrder::grevlex();
  return order;
}

}  // namespace

MultiPoly::MultiPoly(Field field, std::size_t nvars) : field_(std::move(field)), nvars_(nvars) {
  if (nvars > kMaxVars) fail(ErrorCode::ArityMismatch, "at most 16 variables are supported");
}

MultiPoly MultiPoly::constant(const Field& f, std::size_t nvars, const Scalar& c) {
  MultiPoly p(f, nvars);
  if (!f.is_zero(c)) p.terms_.push_back({Monomial(nvars), c});
  return p;
}

MultiPoly MultiPoly::variable(const Field& f, std::size_t nvars, std::size_t i) {
  if (i >= nvars) fail(ErrorCode::InvalidIndex, "variable index out of range");
  MultiPoly p(f, nvars);
  p.terms_.push_back({Monomial::variable(nvars, i), f.one()});
  return p;
}

MultiPoly MultiPoly::monomial(const Field& f, const Monomial& m, const Scalar& c) {
  MultiPoly p(f, m.nvars());
  if (!f.is_zero(c)) p.terms_.push_back({m, c});
  return p;
}

MultiPoly MultiPoly::from_terms(const Field& f, std::size_t nvars, std::vector<Term> terms) {
  MultiPoly p(f, nvars);
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void MultiPoly::normalize() {
  const auto& ord = canonical_order();
  std::sort(terms_.begin(), terms_.end(),
            [&](const Term& a, const Term& b) { return ord.greater(a.mono, b.mono); });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff = field_.add(out.back().coeff, t.coeff);
    } else {
      if (!out.empty() && field_.is_zero(out.back().coeff)) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && field_.is_zero(out.back().coeff)) out.pop_back();
  terms_ = std::move(out);
}

bool MultiPoly::is_one() const {
  return terms_.size() == 1 && terms_[0].mono.is_one() && field_.is_one(terms_[0].coeff);
}

FieldElement MultiPoly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return {field_, terms_.back().coeff};
  return {field_, field_.zero()};
}

FieldElement MultiPoly::coefficient(const Monomial& m) const {
  for (const auto& t : terms_)
    if (t.mono == m) return {field_, t.coeff};
  return {field_, field_.zero()};
}

std::uint32_t MultiPoly::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

std::uint32_t MultiPoly::support() const {
  std::uint32_t s = 0;
  for (const auto& t : terms_) s |= t.mono.support();
  return s;
}

void require_compatible(const MultiPoly& f, const MultiPoly& g) {
  require_same_field(f.field(), g.field());
  if (f.nvars() != g.nvars())
    fail(ErrorCode::ArityMismatch, std::to_string(f.nvars()) + " vs " + std::to_string(g.nvars()) + " variables");
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coeff = field_.neg(t.coeff);
  return r;
}

MultiPoly operator+(const MultiPoly& f, const MultiPoly& g) {
  require_compatible(f, g);
  const auto& ord = canonical_order();
  const Field& F = f.field_;
  MultiPoly r(F, f.nvars_);
  r.terms_.reserve(f.terms_.size() + g.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < f.terms_.size() || j < g.terms_.size()) {
    if (j == g.terms_.size()) {
      r.terms_.push_back(f.terms_[i++]);
    } else if (i == f.terms_.size()) {
      r.terms_.push_back(g.terms_[j++]);
    } else {
      const int c = ord.compare(f.terms_[i].mono, g.terms_[j].mono);
      if (c > 0) {
        r.terms_.push_back(f.terms_[i++]);
      } else if (c < 0) {
        r.terms_.push_back(g.terms_[j++]);
      } else {
        Scalar s = F.add(f.terms_[i].coeff, g.terms_[j].coeff);
        if (!F.is_zero(s)) r.terms_.push_back({f.terms_[i].mono, std::move(s)});
        ++i;
        ++j;
      }
    }
  }
  return r;
}

MultiPoly operator-(const MultiPoly& f, const MultiPoly& g) { return f + (-g); }

MultiPoly operator*(const MultiPoly& f, const MultiPoly& g) {
  require_compatible(f, g);
  const Field& F = f.field_;
  if (f.is_zero() || g.is_zero()) return MultiPoly(F, f.nvars_);
  std::unordered_map<Monomial, Scalar, MonomialHash> acc;
  acc.reserve(f.terms_.size() * g.terms_.size());
  for (const auto& a : f.terms_) {
    for (const auto& b : g.terms_) {
      Monomial m = a.mono * b.mono;
      Scalar c = F.mul(a.coeff, b.coeff);
      auto [it, inserted] = acc.try_emplace(m, c);
      if (!inserted) it->second = F.add(it->second, c);
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!F.is_zero(c)) terms.push_back({m, std::move(c)});
  return MultiPoly::from_terms(F, f.nvars_, std::move(terms));
}

MultiPoly MultiPoly::scale(const Scalar& c) const {
  if (field_.is_zero(c)) return MultiPoly(field_, nvars_);
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coeff = field_.mul(t.coeff, c);
  return r;
}

MultiPoly MultiPoly::scale(const FieldElement& c) const {
  require_same_field(field_, c.field());
  return scale(c.value());
}

MultiPoly MultiPoly::pow(unsigned e, unsigned degree_cap) const {
  if (static_cast<std::uint64_t>(total_degree()) * e > degree_cap)
    fail(ErrorCode::DegreeCapExceeded, "power exceeds degree cap " + std::to_string(degree_cap));
  MultiPoly r = constant(field_, nvars_, field_.one());
  MultiPoly base = *this;
  while (e != 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return r;
}

MultiPoly MultiPoly::monic() const {
  if (is_zero()) return *this;
  return scale(field_.inv(terms_.front().coeff));
}

MultiPoly MultiPoly::substitute(const std::vector<MultiPoly>& images, unsigned degree_cap) const {
  if (images.size() != nvars_)
    fail(ErrorCode::ArityMismatch, "substitution needs " + std::to_string(nvars_) + " images");
  std::size_t target = nvars_;
  if (!images.empty()) target = images.front().nvars();
  std::uint64_t bound = 0;
  for (const auto& im : images) {
    require_same_field(field_, im.field());
    if (im.nvars() != target) fail(ErrorCode::ArityMismatch, "substitution images differ in arity");
  }
  for (const auto& t : terms_) {
    std::uint64_t d = 0;
    for (std::size_t i = 0; i < nvars_; ++i) d += std::uint64_t{t.mono[i]} * images[i].total_degree();
    bound = std::max(bound, d);
  }
  if (bound > degree_cap)
    fail(ErrorCode::DegreeCapExceeded, "substitution degree " + std::to_string(bound) + " exceeds cap " +
                                           std::to_string(degree_cap));

  // Cache powers of each image; Horner would be tighter but terms are sparse.
  std::vector<std::vector<MultiPoly>> powers(nvars_);
  auto power_of = [&](std::size_t i, std::uint32_t e) -> const MultiPoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(constant(field_, target, field_.one()));
    while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
    return cache[e];
  };

  MultiPoly result(field_, target);
  for (const auto& t : terms_) {
    MultiPoly term = constant(field_, target, t.coeff);
    for (std::size_t i = 0; i < nvars_ && !term.is_zero(); ++i)
      if (t.mono[i] != 0) term = term * power_of(i, t.mono[i]);
    result += term;
  }
  return result;
}

FieldElement MultiPoly::evaluate(const std::vector<FieldElement>& point) const {
  if (point.size() != nvars_) fail(ErrorCode::ArityMismatch, "evaluation point has wrong length");
  for (const auto& v : point) require_same_field(field_, v.field());
  Scalar acc = field_.zero();
  for (const auto& t : terms_) {
    Scalar c = t.coeff;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (t.mono[i] != 0) c = field_.mul(c, field_.pow(point[i].value(), t.mono[i]));
    acc = field_.add(acc, c);
  }
  return {field_, acc};
}

MultiPoly MultiPoly::partial_derivative(std::size_t i) const {
  if (i >= nvars_) fail(ErrorCode::ArityMismatch, "derivative variable out of range");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    const std::uint32_t e = t.mono[i];
    if (e == 0) continue;
    Scalar c = field_.mul(t.coeff, field_.from_int(e));
    if (field_.is_zero(c)) continue;
    Monomial m = t.mono;
    m.set(i, e - 1);
    out.push_back({m, std::move(c)});
  }
  return from_terms(field_, nvars_, std::move(out));
}

MultiPoly MultiPoly::map_coefficients(const std::function<Scalar(const Scalar&)>& fn) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({t.mono, fn(t.coeff)});
  return from_terms(field_, nvars_, std::move(out));
}

MultiPoly MultiPoly::remap(std::size_t new_nvars, const std::vector<std::size_t>& new_index) const {
  if (new_index.size() != nvars_) fail(ErrorCode::ArityMismatch, "remap table has wrong length");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m(new_nvars);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (t.mono[i] == 0) continue;
      if (new_index[i] >= new_nvars) fail(ErrorCode::ArityMismatch, "remap drops a variable that occurs");
      m.set(new_index[i], m[new_index[i]] + t.mono[i]);
    }
    out.push_back({m, t.coeff});
  }
  return from_terms(field_, new_nvars, std::move(out));
}

bool operator==(const MultiPoly& f, const MultiPoly& g) {
  if (f.nvars_ != g.nvars_ || f.terms_.size() != g.terms_.size() || f.field_ != g.field_) return false;
  for (std::size_t i = 0; i < f.terms_.size(); ++i) {
    if (f.terms_[i].mono != g.terms_[i].mono || !(f.terms_[i].coeff == g.terms_[i].coeff)) return false;
  }
  return true;
}

std::vector<std::string> variable_names(std::size_t nvars, const std::string& prefix) {
  std::vector<std::string> names;
  names.reserve(nvars);
  for (std::size_t i = 0; i < nvars; ++i) names.push_back(prefix + std::to_string(i + 1));
  return names;
}

std::string to_string(const MultiPoly& f, const std::vector<std::string>& names) {
  if (f.is_zero()) return "0";
  const Field& F = f.field();
  std::string out;
  bool first = true;
  for (const auto& t : f.terms()) {
    std::string mono;
    for (std::size_t i = 0; i < f.nvars(); ++i) {
      if (t.mono[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names.at(i);
      if (t.mono[i] > 1) mono += "^" + std::to_string(t.mono[i]);
    }
    bool negative = false;
    Scalar c = t.coeff;
    if (F.kind() == FieldKind::Rationals && c.rational() < 0) {
      negative = true;
      c = F.neg(c);
    }
    std::string coeff;
    if (mono.empty()) {
      coeff = F.format(c);
      if (F.needs_parens(c) && !first) coeff = "(" + coeff + ")";
    } else if (!F.is_one(c)) {
      coeff = F.format(c);
      if (F.needs_parens(c)) coeff = "(" + coeff + ")";
      coeff += "*";
    }
    if (first) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    out += coeff + mono;
    first = false;
  }
  return out;
}

std::string to_string(const MultiPoly& f) { return to_string(f, variable_names(f.nvars())); }

}  // namespace endorank
