#include "endorank/field.hpp"

#include <algorithm>
#include <sstream>

namespace endorank {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e != 0) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

// Remainder of a (low-to-high) modulo a monic divisor over GF(p).
std::vector<std::uint64_t> poly_rem(std::vector<std::uint64_t> a, const std::vector<std::uint64_t>& m,
                                    std::uint64_t p) {
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    if (lead != 0) {
      for (std::size_t i = 0; i <= dm; ++i) {
        const std::uint64_t t = mulmod(lead, m[i], p);
        a[i + shift] = (a[i + shift] + p - t) % p;
      }
    }
    a.pop_back();
  }
  return a;
}

bool has_factor_of_degree(const std::vector<std::uint64_t>& modulus, std::uint64_t p, unsigned d) {
  std::uint64_t count = 1;
  for (unsigned i = 0; i < d; ++i) count *= p;
  std::vector<std::uint64_t> cand(d + 1, 0);
  cand[d] = 1;
  for (std::uint64_t code = 0; code < count; ++code) {
    std::uint64_t c = code;
    for (unsigned i = 0; i < d; ++i) {
      cand[i] = c % p;
      c /= p;
    }
    auto r = poly_rem(modulus, cand, p);
    if (std::all_of(r.begin(), r.end(), [](std::uint64_t v) { return v == 0; })) return true;
  }
  return false;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (std::uint64_t i = 5; i <= n / i; i += 6) {
    if (n % i == 0 || n % (i + 2) == 0) return false;
  }
  return true;
}

Field::Field() : Field(rationals()) {}

Field Field::rationals() {
  static const auto spec = std::make_shared<const FieldSpec>();
  return Field(spec);
}

Field Field::prime(std::uint64_t p) {
  if (p >= kMaxPrime) fail(ErrorCode::InvalidField, "prime must be below 2^61");
  if (!is_prime(p)) fail(ErrorCode::InvalidField, std::to_string(p) + " is not prime");
  auto spec = std::make_shared<FieldSpec>();
  spec->kind = FieldKind::PrimeField;
  spec->p = p;
  spec->k = 1;
  spec->order = p;
  return Field(std::move(spec));
}

Field Field::extension(std::uint64_t p, const std::vector<std::uint64_t>& modulus) {
  if (!is_prime(p)) fail(ErrorCode::InvalidField, std::to_string(p) + " is not prime");
  if (modulus.size() < 3) fail(ErrorCode::InvalidField, "extension modulus must have degree >= 2");
  const unsigned k = static_cast<unsigned>(modulus.size() - 1);
  std::uint64_t order = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (order > kMaxExtOrder / p) fail(ErrorCode::InvalidField, "extension field exceeds 2^24 elements");
    order *= p;
  }
  std::vector<std::uint64_t> m(modulus.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = modulus[i] % p;
  if (m.back() != 1) fail(ErrorCode::InvalidField, "extension modulus must be monic");
  for (unsigned d = 1; d <= k / 2; ++d) {
    if (has_factor_of_degree(m, p, d)) fail(ErrorCode::InvalidField, "extension modulus is reducible");
  }
  auto spec = std::make_shared<FieldSpec>();
  spec->kind = FieldKind::ExtField;
  spec->p = p;
  spec->k = k;
  spec->modulus = std::move(m);
  spec->order = order;
  Field tmp{std::shared_ptr<const FieldSpec>(spec)};
  if (order <= 256) {
    std::vector<std::uint32_t> table(order * order);
    for (std::uint64_t a = 0; a < order; ++a)
      for (std::uint64_t b = 0; b < order; ++b)
        table[a * order + b] = static_cast<std::uint32_t>(tmp.ext_mul_slow(a, b));
    spec->mul_table = std::move(table);
  }
  return Field(std::move(spec));
}

Field Field::builtin_extension(std::uint64_t order) {
  switch (order) {
    case 4: return extension(2, {1, 1, 1});     // t^2+t+1
    case 8: return extension(2, {1, 1, 0, 1});  // t^3+t+1
    case 9: return extension(3, {1, 0, 1});     // t^2+1
    default: fail(ErrorCode::InvalidField, "no built-in modulus for order " + std::to_string(order));
  }
}

std::vector<std::uint64_t> Field::digits(std::uint64_t code) const {
  std::vector<std::uint64_t> d(spec_->k, 0);
  for (unsigned i = 0; i < spec_->k; ++i) {
    d[i] = code % spec_->p;
    code /= spec_->p;
  }
  return d;
}

std::uint64_t Field::encode(const std::vector<std::uint64_t>& d) const {
  std::uint64_t code = 0;
  for (std::size_t i = d.size(); i-- > 0;) code = code * spec_->p + d[i];
  return code;
}

std::uint64_t Field::ext_mul_slow(std::uint64_t a, std::uint64_t b) const {
  const auto da = digits(a);
  const auto db = digits(b);
  const std::uint64_t p = spec_->p;
  std::vector<std::uint64_t> prod(2 * spec_->k - 1, 0);
  for (unsigned i = 0; i < spec_->k; ++i) {
    if (da[i] == 0) continue;
    for (unsigned j = 0; j < spec_->k; ++j) prod[i + j] = (prod[i + j] + mulmod(da[i], db[j], p)) % p;
  }
  auto r = poly_rem(std::move(prod), spec_->modulus, p);
  r.resize(spec_->k, 0);
  return encode(r);
}

Scalar Field::zero() const {
  return kind() == FieldKind::Rationals ? Scalar(mpq_class(0)) : Scalar(std::uint64_t{0});
}

Scalar Field::one() const {
  return kind() == FieldKind::Rationals ? Scalar(mpq_class(1)) : Scalar(std::uint64_t{1});
}

Scalar Field::from_int(std::int64_t v) const {
  if (kind() == FieldKind::Rationals) return Scalar(mpq_class(static_cast<long>(v)));
  const auto p = static_cast<std::int64_t>(spec_->p);
  std::int64_t r = v % p;
  if (r < 0) r += p;
  return Scalar(static_cast<std::uint64_t>(r));
}

Scalar Field::from_mpz(const mpz_class& v) const {
  if (kind() == FieldKind::Rationals) return Scalar(mpq_class(v));
  return Scalar(static_cast<std::uint64_t>(mpz_fdiv_ui(v.get_mpz_t(), spec_->p)));
}

Scalar Field::from_rational(const mpz_class& num, const mpz_class& den) const {
  if (kind() == FieldKind::Rationals) {
    if (den == 0) fail(ErrorCode::DivisionByZero, "zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(std::move(q));
  }
  const Scalar d = from_mpz(den);
  if (is_zero(d)) fail(ErrorCode::DivisionByZero, "denominator vanishes in " + header());
  return div(from_mpz(num), d);
}

Scalar Field::generator() const {
  if (kind() != FieldKind::ExtField) fail(ErrorCode::InvalidField, "generator t exists only in extension fields");
  return Scalar(spec_->p);  // digit vector (0, 1, 0, ...)
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  switch (kind()) {
    case FieldKind::Rationals: return Scalar(mpq_class(a.rational() + b.rational()));
    case FieldKind::PrimeField: {
      std::uint64_t s = a.residue() + b.residue();
      if (s >= spec_->p) s -= spec_->p;
      return Scalar(s);
    }
    case FieldKind::ExtField: {
      if (spec_->p == 2) return Scalar(a.residue() ^ b.residue());
      auto da = digits(a.residue());
      const auto db = digits(b.residue());
      for (unsigned i = 0; i < spec_->k; ++i) da[i] = (da[i] + db[i]) % spec_->p;
      return Scalar(encode(da));
    }
  }
  return {};
}

Scalar Field::neg(const Scalar& a) const {
  switch (kind()) {
    case FieldKind::Rationals: return Scalar(mpq_class(-a.rational()));
    case FieldKind::PrimeField: return Scalar(a.residue() == 0 ? 0 : spec_->p - a.residue());
    case FieldKind::ExtField: {
      if (spec_->p == 2) return a;
      auto d = digits(a.residue());
      for (auto& x : d) x = (spec_->p - x) % spec_->p;
      return Scalar(encode(d));
    }
  }
  return {};
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
  if (kind() == FieldKind::Rationals) return Scalar(mpq_class(a.rational() - b.rational()));
  return add(a, neg(b));
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  switch (kind()) {
    case FieldKind::Rationals: return Scalar(mpq_class(a.rational() * b.rational()));
    case FieldKind::PrimeField: return Scalar(mulmod(a.residue(), b.residue(), spec_->p));
    case FieldKind::ExtField:
      if (!spec_->mul_table.empty()) return Scalar(spec_->mul_table[a.residue() * spec_->order + b.residue()]);
      return Scalar(ext_mul_slow(a.residue(), b.residue()));
  }
  return {};
}

Scalar Field::pow(const Scalar& a, std::uint64_t e) const {
  if (kind() == FieldKind::PrimeField) return Scalar(powmod(a.residue(), e, spec_->p));
  Scalar r = one();
  Scalar base = a;
  while (e != 0) {
    if (e & 1) r = mul(r, base);
    e >>= 1;
    if (e != 0) base = mul(base, base);
  }
  return r;
}

Scalar Field::inv(const Scalar& a) const {
  if (is_zero(a)) fail(ErrorCode::DivisionByZero, "inverse of zero");
  switch (kind()) {
    case FieldKind::Rationals: return Scalar(mpq_class(1 / a.rational()));
    case FieldKind::PrimeField: return Scalar(powmod(a.residue(), spec_->p - 2, spec_->p));
    case FieldKind::ExtField: return pow(a, spec_->order - 2);
  }
  return {};
}

Scalar Field::frobenius(const Scalar& a, unsigned e) const {
  if (e == 0 || kind() != FieldKind::ExtField) return a;
  std::uint64_t exp = 1;
  for (unsigned i = 0; i < e % spec_->k; ++i) exp *= spec_->p;
  return pow(a, exp);
}

bool Field::is_zero(const Scalar& a) const {
  return kind() == FieldKind::Rationals ? a.rational() == 0 : a.residue() == 0;
}

bool Field::is_one(const Scalar& a) const {
  return kind() == FieldKind::Rationals ? a.rational() == 1 : a.residue() == 1;
}

Scalar Field::element_at(std::uint64_t index) const {
  if (!is_finite()) fail(ErrorCode::InfiniteField, "Q has no element enumeration");
  if (index >= spec_->order) fail(ErrorCode::InvalidIndex, "element index out of range");
  return Scalar(index);
}

std::string Field::format(const Scalar& a) const {
  switch (kind()) {
    case FieldKind::Rationals: return a.rational().get_str();
    case FieldKind::PrimeField: return std::to_string(a.residue());
    case FieldKind::ExtField: {
      const auto d = digits(a.residue());
      std::string out;
      for (std::size_t i = d.size(); i-- > 0;) {
        if (d[i] == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
          out += std::to_string(d[i]);
          continue;
        }
        if (d[i] != 1) out += std::to_string(d[i]) + "*";
        out += "t";
        if (i > 1) out += "^" + std::to_string(i);
      }
      return out.empty() ? "0" : out;
    }
  }
  return {};
}

bool Field::needs_parens(const Scalar& a) const {
  if (kind() != FieldKind::ExtField) return false;
  const auto d = digits(a.residue());
  return std::count_if(d.begin(), d.end(), [](std::uint64_t v) { return v != 0; }) > 1;
}

std::string Field::header() const {
  switch (kind()) {
    case FieldKind::Rationals: return "field Q";
    case FieldKind::PrimeField: return "field F " + std::to_string(spec_->p);
    case FieldKind::ExtField: {
      std::ostringstream os;
      os << "field F " << spec_->p << "^" << spec_->k << " mod ";
      bool first = true;
      for (std::size_t i = spec_->modulus.size(); i-- > 0;) {
        const std::uint64_t c = spec_->modulus[i];
        if (c == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) {
          os << c;
          continue;
        }
        if (c != 1) os << c << "*";
        os << "t";
        if (i > 1) os << "^" << i;
      }
      return os.str();
    }
  }
  return {};
}

void require_same_field(const Field& a, const Field& b) {
  if (a != b) fail(ErrorCode::SpecMismatch, a.header() + " vs " + b.header());
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  require_same_field(a.field_, b.field_);
  return {a.field_, a.field_.add(a.value_, b.value_)};
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  require_same_field(a.field_, b.field_);
  return {a.field_, a.field_.sub(a.value_, b.value_)};
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  require_same_field(a.field_, b.field_);
  return {a.field_, a.field_.mul(a.value_, b.value_)};
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  require_same_field(a.field_, b.field_);
  return {a.field_, a.field_.div(a.value_, b.value_)};
}

FieldAutomorphism FieldAutomorphism::frobenius_power(const Field& f, unsigned e) {
  if (f.kind() != FieldKind::ExtField) {
    if (e != 0) fail(ErrorCode::InvalidField, "only the identity automorphism exists on " + f.header());
    return FieldAutomorphism(f, 0);
  }
  if (e >= f.degree()) fail(ErrorCode::InvalidField, "Frobenius exponent must be below the extension degree");
  return FieldAutomorphism(f, e);
}

FieldAutomorphism FieldAutomorphism::inverse() const {
  if (exponent_ == 0) return *this;
  return FieldAutomorphism(field_, field_.degree() - exponent_);
}

FieldAutomorphism FieldAutomorphism::compose(const FieldAutomorphism& other) const {
  require_same_field(field_, other.field_);
  if (field_.kind() != FieldKind::ExtField) return *this;
  return FieldAutomorphism(field_, (exponent_ + other.exponent_) % field_.degree());
}

std::string FieldAutomorphism::to_string() const {
  return exponent_ == 0 ? "identity" : "frob^" + std::to_string(exponent_);
}

FieldElement apply_automorphism(const FieldAutomorphism& delta, const FieldElement& a) {
  require_same_field(delta.field(), a.field());
  return {a.field(), delta.apply(a.value())};
}

std::vector<FieldElement> enumerate_elements(const Field& f) {
  if (!f.is_finite()) fail(ErrorCode::InfiniteField, "cannot enumerate Q; sample integers instead");
  std::vector<FieldElement> out;
  out.reserve(f.order());
  for (std::uint64_t i = 0; i < f.order(); ++i) out.emplace_back(f, f.element_at(i));
  return out;
}

}  // namespace endorank
