#include "endorank/text_format.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace endorank {

namespace {

[[noreturn]] void fail_at(ErrorCode code, std::size_t line, std::size_t column, const std::string& what) {
  fail(code, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

class Parser {
 public:
  Parser(std::string_view text, const Field& f, std::size_t nvars, std::size_t line, std::size_t column_offset,
         std::string prefix, bool bare_variable)
      : s_(text), f_(f), n_(nvars), line_(line), offset_(column_offset), prefix_(std::move(prefix)),
        bare_(bare_variable) {}

  MultiPoly parse() {
    skip();
    if (pos_ == s_.size()) error(ErrorCode::SyntaxError, "empty expression");
    MultiPoly r = expr();
    skip();
    if (pos_ != s_.size()) error(ErrorCode::SyntaxError, std::string("unexpected '") + s_[pos_] + "'");
    return r;
  }

 private:
  [[noreturn]] void error(ErrorCode code, const std::string& what) const {
    fail_at(code, line_, offset_ + pos_ + 1, what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPoly expr() {
    MultiPoly r = term();
    for (;;) {
      if (eat('+'))
        r += term();
      else if (eat('-'))
        r -= term();
      else
        return r;
    }
  }

  MultiPoly term() {
    MultiPoly r = unary();
    while (eat('*')) r *= unary();
    return r;
  }

  MultiPoly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  MultiPoly power() {
    MultiPoly b = base();
    if (!eat('^')) return b;
    skip();
    const std::size_t start = pos_;
    const std::string digits = integer();
    if (digits.size() > 5 || std::stoul(digits) > 0xFFFF) {
      pos_ = start;
      error(ErrorCode::SyntaxError, "exponent too large");
    }
    return b.pow(static_cast<unsigned>(std::stoul(digits)));
  }

  std::string integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) error(ErrorCode::SyntaxError, "expected an integer");
    return std::string(s_.substr(start, pos_ - start));
  }

  MultiPoly base() {
    skip();
    if (pos_ == s_.size()) error(ErrorCode::SyntaxError, "unexpected end of expression");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      const mpz_class num(integer());
      mpz_class den = 1;
      if (eat('/')) den = mpz_class(integer());
      try {
        if (den == 0) fail(ErrorCode::DivisionByZero, "zero denominator");
        return MultiPoly::constant(f_, n_, f_.from_rational(num, den));
      } catch (const Error& e) {
        pos_ = start;
        error(ErrorCode::CoefficientParseError, std::string("coefficient not defined in this field (") + e.what() + ")");
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string id(s_.substr(start, pos_ - start));
      if (bare_ && id == prefix_) return MultiPoly::variable(f_, n_, 0);
      if (!bare_ && id.size() > prefix_.size() && id.compare(0, prefix_.size(), prefix_) == 0) {
        const std::string idx = id.substr(prefix_.size());
        const bool numeric = idx.size() <= 3 && idx.find_first_not_of("0123456789") == std::string::npos && idx[0] != '0';
        if (numeric) {
          const std::size_t k = std::stoul(idx);
          if (k >= 1 && k <= n_) return MultiPoly::variable(f_, n_, k - 1);
        }
      }
      if (id == "t" && f_.kind() == FieldKind::ExtField) return MultiPoly::constant(f_, n_, f_.generator());
      pos_ = start;
      error(ErrorCode::UnknownVariable, "unknown variable '" + id + "'");
    }
    if (eat('(')) {
      MultiPoly r = expr();
      if (!eat(')')) error(ErrorCode::SyntaxError, "expected ')'");
      return r;
    }
    error(ErrorCode::SyntaxError, std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  const Field& f_;
  std::size_t n_;
  std::size_t line_;
  std::size_t offset_;
  std::string prefix_;
  bool bare_;
  std::size_t pos_ = 0;
};

struct Line {
  std::size_t no;
  std::size_t indent;  // 0-based column of the first character of text
  std::string text;
};

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t no = 0, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++no;
    std::string_view l = text.substr(start, end - start);
    if (const auto hash = l.find('#'); hash != std::string_view::npos) l = l.substr(0, hash);
    std::size_t a = 0, b = l.size();
    while (a < b && std::isspace(static_cast<unsigned char>(l[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(l[b - 1]))) --b;
    if (a < b) out.push_back({no, a, std::string(l.substr(a, b - a))});
    start = end + 1;
  }
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

std::uint64_t parse_count(const std::string& token, const Line& l, const char* what) {
  if (token.empty() || token.size() > 18 || token.find_first_not_of("0123456789") != std::string::npos)
    fail_at(ErrorCode::SyntaxError, l.no, l.indent + 1, std::string("expected a number for ") + what);
  return std::stoull(token);
}

class LineCursor {
 public:
  explicit LineCursor(std::string_view text) : lines_(content_lines(text)) {}

  bool done() const { return i_ == lines_.size(); }
  const Line& peek() const {
    if (done()) fail(ErrorCode::SyntaxError, "unexpected end of file");
    return lines_[i_];
  }
  const Line& next() {
    const Line& l = peek();
    ++i_;
    return l;
  }
  void expect_end() const {
    if (!done()) fail_at(ErrorCode::SyntaxError, lines_[i_].no, lines_[i_].indent + 1, "unexpected trailing content");
  }

 private:
  std::vector<Line> lines_;
  std::size_t i_ = 0;
};

Field header_of(LineCursor& c) {
  const Line& l = c.next();
  return parse_field_header(l.text, l.no);
}

std::size_t keyword_count(LineCursor& c, const char* keyword) {
  const Line& l = c.next();
  const auto w = words(l.text);
  if (w.size() != 2 || w[0] != keyword)
    fail_at(ErrorCode::SyntaxError, l.no, l.indent + 1, std::string("expected '") + keyword + " <n>'");
  const auto n = parse_count(w[1], l, keyword);
  if (n == 0 || n > kMaxVars)
    fail_at(ErrorCode::SyntaxError, l.no, l.indent + 1, std::string(keyword) + " must be between 1 and 16");
  return static_cast<std::size_t>(n);
}

// n lines "<prefix><k> -> poly" in any order, each k exactly once.
std::vector<MultiPoly> mapping_block(LineCursor& c, const Field& f, std::size_t n, const std::string& prefix) {
  std::vector<std::optional<MultiPoly>> im(n);
  for (std::size_t count = 0; count < n; ++count) {
    const Line& l = c.next();
    const auto arrow = l.text.find("->");
    if (arrow == std::string::npos) fail_at(ErrorCode::SyntaxError, l.no, l.indent + 1, "expected '" + prefix + "<k> -> <polynomial>'");
    std::string lhs = l.text.substr(0, arrow);
    while (!lhs.empty() && std::isspace(static_cast<unsigned char>(lhs.back()))) lhs.pop_back();
    std::size_t k = 0;
    if (lhs.size() > prefix.size() && lhs.compare(0, prefix.size(), prefix) == 0) {
      const std::string idx = lhs.substr(prefix.size());
      if (idx.size() <= 3 && idx.find_first_not_of("0123456789") == std::string::npos) k = std::stoul(idx);
    }
    if (k < 1 || k > n) fail_at(ErrorCode::UnknownVariable, l.no, l.indent + 1, "unknown variable '" + lhs + "'");
    if (im[k - 1]) fail_at(ErrorCode::SyntaxError, l.no, l.indent + 1, "'" + lhs + "' assigned twice");
    im[k - 1] = parse_polynomial(std::string_view(l.text).substr(arrow + 2), f, n, l.no, l.indent + arrow + 2);
  }
  std::vector<MultiPoly> out;
  for (auto& p : im) out.push_back(std::move(*p));
  return out;
}

void write_mappings(std::ostream& os, const std::vector<MultiPoly>& im, const std::string& prefix) {
  for (std::size_t k = 0; k < im.size(); ++k) os << prefix << k + 1 << " -> " << to_string(im[k]) << "\n";
}

}  // namespace

MultiPoly parse_polynomial(std::string_view text, const Field& f, std::size_t nvars, std::size_t line,
                           std::size_t column_offset, const std::string& prefix) {
  return Parser(text, f, nvars, line, column_offset, prefix, false).parse();
}

Field parse_field_header(std::string_view text, std::size_t line) {
  const std::string s(text);
  auto bad = [&](const std::string& what) -> Field { fail_at(ErrorCode::InvalidField, line, 1, what); };
  const auto w = words(s);
  if (w.size() < 2 || w[0] != "field") return bad("expected 'field Q' or 'field F <p>[^<k>] [mod <poly>]'");
  if (w[1] == "Q") {
    if (w.size() != 2) return bad("unexpected text after 'field Q'");
    return Field::rationals();
  }
  if (w[1] != "F" || w.size() < 3) return bad("expected 'field Q' or 'field F <p>[^<k>] [mod <poly>]'");
  const std::string& order = w[2];
  const auto caret = order.find('^');
  const std::string ps = order.substr(0, caret);
  const std::string ks = caret == std::string::npos ? "1" : order.substr(caret + 1);
  if (ps.empty() || ks.empty() || ps.size() > 19 || ks.size() > 2 ||
      ps.find_first_not_of("0123456789") != std::string::npos || ks.find_first_not_of("0123456789") != std::string::npos)
    return bad("malformed field order '" + order + "'");
  const std::uint64_t p = std::stoull(ps);
  const unsigned k = static_cast<unsigned>(std::stoul(ks));
  if (k == 0) return bad("extension degree must be positive");
  try {
    if (w.size() == 3) {
      if (k == 1) return Field::prime(p);
      std::uint64_t q = 1;
      for (unsigned i = 0; i < k; ++i) q *= p;
      return Field::builtin_extension(q);
    }
    if (w[3] != "mod") return bad("expected 'mod' after the field order");
    if (k == 1) return bad("a modulus needs an extension degree k >= 2");
    const auto at = s.find("mod") + 3;
    const Field base = Field::prime(p);
    const MultiPoly m = Parser(std::string_view(s).substr(at), base, 1, line, at, "t", true).parse();
    if (m.total_degree() != k) return bad("modulus degree must equal " + std::to_string(k));
    std::vector<std::uint64_t> coeffs;
    for (unsigned i = 0; i <= k; ++i) coeffs.push_back(m.coefficient(Monomial::variable(1, 0, i)).value().residue());
    return Field::extension(p, coeffs);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SyntaxError || e.code() == ErrorCode::UnknownVariable) throw;
    return bad(e.what());
  }
}

Endomorphism parse_endomorphism(std::string_view text) {
  LineCursor c(text);
  const Field f = header_of(c);
  const std::size_t n = keyword_count(c, "vars");
  auto im = mapping_block(c, f, n, "x");
  c.expect_end();
  return Endomorphism(f, n, std::move(im));
}

std::string format_endomorphism(const Endomorphism& e) {
  std::ostringstream os;
  os << e.field().header() << "\nvars " << e.nvars() << "\n";
  write_mappings(os, e.images(), "x");
  return os.str();
}

KroneckerFile parse_kronecker(std::string_view text) {
  LineCursor c(text);
  const Field f = header_of(c);
  const std::size_t n = keyword_count(c, "vars");
  const Line& kl = c.peek();
  if (keyword_count(c, "kron") != n) fail_at(ErrorCode::SyntaxError, kl.no, kl.indent + 1, "kron size must equal vars");
  std::vector<std::optional<Endomorphism>> entries(n * n);
  std::optional<Endomorphism> zero;
  std::optional<std::vector<MultiPoly>> base;
  while (!c.done()) {
    const Line& l = c.next();
    const auto w = words(l.text);
    if (w.size() == 3 && w[0] == "e") {
      const auto i = parse_count(w[1], l, "e i j"), j = parse_count(w[2], l, "e i j");
      if (i < 1 || i > n || j < 1 || j > n) fail_at(ErrorCode::SyntaxError, l.no, l.indent + 1, "Kronecker index out of range");
      auto& slot = entries[(i - 1) * n + (j - 1)];
      if (slot) fail_at(ErrorCode::SyntaxError, l.no, l.indent + 1, "block " + l.text + " given twice");
      slot = Endomorphism(f, n, mapping_block(c, f, n, "x"));
    } else if (w.size() == 1 && w[0] == "zero") {
      if (zero) fail_at(ErrorCode::SyntaxError, l.no, l.indent + 1, "zero block given twice");
      zero = Endomorphism(f, n, mapping_block(c, f, n, "x"));
    } else if (w.size() == 1 && w[0] == "base") {
      if (base) fail_at(ErrorCode::SyntaxError, l.no, l.indent + 1, "base block given twice");
      base = mapping_block(c, f, n, "z");
    } else {
      fail_at(ErrorCode::SyntaxError, l.no, l.indent + 1, "expected 'e <i> <j>', 'zero' or 'base'");
    }
  }
  std::vector<Endomorphism> es;
  for (std::size_t k = 0; k < n * n; ++k) {
    if (!entries[k])
      fail(ErrorCode::SyntaxError, "missing block e " + std::to_string(k / n + 1) + " " + std::to_string(k % n + 1));
    es.push_back(std::move(*entries[k]));
  }
  return KroneckerFile{KroneckerSystem(n, std::move(es), std::move(zero)), std::move(base)};
}

std::string format_kronecker(const KroneckerSystem& s, const std::optional<std::vector<MultiPoly>>& base) {
  std::ostringstream os;
  os << s.field().header() << "\nvars " << s.n() << "\nkron " << s.n() << "\n";
  for (std::size_t i = 0; i < s.n(); ++i)
    for (std::size_t j = 0; j < s.n(); ++j) {
      os << "e " << i + 1 << " " << j + 1 << "\n";
      write_mappings(os, s.entry(i, j).images(), "x");
    }
  if (s.zero()) {
    os << "zero\n";
    write_mappings(os, s.zero()->images(), "x");
  }
  if (base) {
    os << "base\n";
    write_mappings(os, *base, "z");
  }
  return os.str();
}

SemiLinearAut parse_automorphism(std::string_view text, const EngineConfig& cfg) {
  LineCursor c(text);
  const Field f = header_of(c);
  const std::size_t n = keyword_count(c, "vars");
  const Line& dl = c.next();
  const auto w = words(dl.text);
  if (w.size() != 2 || w[0] != "delta")
    fail_at(ErrorCode::SyntaxError, dl.no, dl.indent + 1, "expected 'delta identity' or 'delta frob^<e>'");
  FieldAutomorphism delta = FieldAutomorphism::identity(f);
  if (w[1] != "identity") {
    if (w[1].rfind("frob^", 0) != 0) fail_at(ErrorCode::SyntaxError, dl.no, dl.indent + 1, "unknown field automorphism '" + w[1] + "'");
    const auto e = parse_count(w[1].substr(5), dl, "frob^e");
    try {
      delta = FieldAutomorphism::frobenius_power(f, static_cast<unsigned>(e));
    } catch (const Error& err) {
      fail_at(ErrorCode::InvalidField, dl.no, dl.indent + 1, err.what());
    }
  }
  auto s = mapping_block(c, f, n, "x");
  c.expect_end();
  try {
    return SemiLinearAut(delta, std::move(s), cfg);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotABase) fail(ErrorCode::InputError, "automorphism file: s is not invertible");
    throw;
  }
}

std::string format_automorphism(const SemiLinearAut& a) {
  std::ostringstream os;
  os << a.field().header() << "\nvars " << a.nvars() << "\ndelta " << a.delta().to_string() << "\n";
  write_mappings(os, a.s(), "x");
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::InputError, "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace endorank
