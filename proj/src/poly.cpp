#include "torlink/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace torlink {

bool degrevlex_greater(const Monomial& a, const Monomial& b) {
  unsigned da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  // reverse lex: last nonzero coordinate of a-b is negative
  for (int i = 2; i >= 0; --i) {
    if (a.e[static_cast<std::size_t>(i)] != b.e[static_cast<std::size_t>(i)])
      return a.e[static_cast<std::size_t>(i)] < b.e[static_cast<std::size_t>(i)];
  }
  return false;
}

std::string Monomial::str() const {
  if (degree() == 0) return "1";
  static const char* names[3] = {"x", "y", "z"};
  std::string s;
  for (std::size_t i = 0; i < 3; ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += names[i];
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

std::vector<Monomial> monomials_of_degree(unsigned d) {
  std::vector<Monomial> out;
  for (unsigned a = 0; a <= d; ++a)
    for (unsigned b = 0; a + b <= d; ++b) out.push_back(Monomial{{a, b, d - a - b}});
  std::sort(out.begin(), out.end(),
            [](const Monomial& a, const Monomial& b) { return degrevlex_greater(a, b); });
  return out;
}

Polynomial Polynomial::constant(const Field& f, const Scalar& c) {
  return term(f, Monomial::one(), c);
}

Polynomial Polynomial::term(const Field& f, const Monomial& m, const Scalar& c) {
  Polynomial p(f);
  if (!c.is_zero()) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::variable(const Field& f, int i) {
  return term(f, Monomial::var(i), Scalar::one(f));
}

Polynomial Polynomial::from_terms(const Field& f, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return degrevlex_greater(a.first, b.first); });
  Polynomial p(f);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first)
      p.terms_.back().second += t.second;
    else
      p.terms_.push_back(std::move(t));
  }
  std::erase_if(p.terms_, [](const Term& t) { return t.second.is_zero(); });
  return p;
}

const Monomial& Polynomial::leading_monomial() const {
  if (terms_.empty()) throw Error(Errc::bad_input, "leading term of zero polynomial");
  return terms_.front().first;
}

const Scalar& Polynomial::leading_coeff() const {
  if (terms_.empty()) throw Error(Errc::bad_input, "leading term of zero polynomial");
  return terms_.front().second;
}

Scalar Polynomial::constant_term() const { return coeff(Monomial::one()); }

Scalar Polynomial::coeff(const Monomial& m) const {
  for (const auto& t : terms_)
    if (t.first == m) return t.second;
  return Scalar::zero(field_);
}

int Polynomial::degree() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.front().first.degree());
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  unsigned d = terms_.front().first.degree();
  for (const auto& t : terms_)
    if (t.first.degree() != d) return false;
  return true;
}

void Polynomial::check_same_field(const Polynomial& o) const {
  if (!(field_ == o.field_))
    throw Error(Errc::field_mismatch,
                "polynomial fields differ: " + field_.str() + " vs " + o.field_.str());
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_same_field(o);
  Polynomial r(field_);
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() ||
        (i < terms_.size() && degrevlex_greater(terms_[i].first, o.terms_[j].first))) {
      r.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() || degrevlex_greater(o.terms_[j].first, terms_[i].first)) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      Scalar c = terms_[i].second + o.terms_[j].second;
      if (!c.is_zero()) r.terms_.push_back({terms_[i].first, c});
      ++i;
      ++j;
    }
  }
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::times_term(const Monomial& m, const Scalar& c) const {
  Polynomial r(field_);
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Scalar cc = t.second * c;
    if (!cc.is_zero()) r.terms_.push_back({t.first * m, cc});
  }
  // multiplying by a fixed monomial preserves degrevlex order
  return r;
}

Polynomial Polynomial::scaled(const Scalar& c) const { return times_term(Monomial::one(), c); }

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  return scaled(leading_coeff().inverse());
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_same_field(o);
  std::vector<Term> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) acc.push_back({a.first * b.first, a.second * b.second});
  return from_terms(field_, std::move(acc));
}

Polynomial multiply(const Polynomial& p, const Polynomial& q) { return p * q; }

bool Polynomial::operator==(const Polynomial& o) const {
  if (!(field_ == o.field_) || terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].first == o.terms_[i].first) || !(terms_[i].second == o.terms_[i].second))
      return false;
  return true;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string cs = c.str();
    bool neg = !cs.empty() && cs[0] == '-';
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    if (neg) cs = cs.substr(1);
    if (m.degree() == 0) {
      os << cs;
    } else if (cs == "1") {
      os << m.str();
    } else {
      os << cs << "*" << m.str();
    }
    first = false;
  }
  return os.str();
}

bool IdealSpec::is_homogeneous() const {
  for (const auto& g : gens)
    if (!g.is_homogeneous()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// parsing

namespace {

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;
  int line = 1, col = 1;

  explicit Cursor(const std::string& t) : text(t) {}

  bool eof() const { return pos >= text.size(); }
  char peek() const { return eof() ? '\0' : text[pos]; }
  char get() {
    char c = text[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }
  void skip_ws_and_comments() {
    while (!eof()) {
      char c = peek();
      if (c == '#') {
        while (!eof() && peek() != '\n') get();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        get();
      } else {
        break;
      }
    }
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line, col, msg); }
  void expect(char c) {
    skip_ws_and_comments();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }
  bool accept(char c) {
    skip_ws_and_comments();
    if (peek() == c) {
      get();
      return true;
    }
    return false;
  }
  std::string ident() {
    skip_ws_and_comments();
    if (!std::isalpha(static_cast<unsigned char>(peek()))) fail("expected identifier");
    std::string s;
    while (!eof() && std::isalnum(static_cast<unsigned char>(peek()))) s += get();
    return s;
  }
  unsigned long number() {
    skip_ws_and_comments();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected number");
    std::string s;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) s += get();
    return std::stoul(s);
  }
};

class PolyParser {
 public:
  PolyParser(Cursor& cur, const Field& f) : cur_(cur), field_(f) {}

  // expr := ['-'] term (('+'|'-') term)*
  Polynomial expr() {
    cur_.skip_ws_and_comments();
    bool neg = cur_.accept('-');
    Polynomial p = term();
    if (neg) p = -p;
    for (;;) {
      cur_.skip_ws_and_comments();
      if (cur_.accept('+')) {
        p = p + term();
      } else if (cur_.accept('-')) {
        p = p - term();
      } else {
        return p;
      }
    }
  }

 private:
  // term := factor ('*' factor)*
  Polynomial term() {
    Polynomial p = factor();
    while (cur_.accept('*')) p = p * factor();
    return p;
  }

  // factor := base ('^' nat)?
  Polynomial factor() {
    Polynomial b = base();
    if (cur_.accept('^')) {
      unsigned long e = cur_.number();
      Polynomial r = Polynomial::constant(field_, Scalar::one(field_));
      for (unsigned long i = 0; i < e; ++i) r = r * b;
      return r;
    }
    return b;
  }

  // base := nat | x|y|z | '(' expr ')'
  Polynomial base() {
    cur_.skip_ws_and_comments();
    char c = cur_.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      unsigned long v = cur_.number();
      return Polynomial::constant(field_, Scalar::of_int(field_, static_cast<long>(v)));
    }
    if (c == 'x' || c == 'y' || c == 'z') {
      cur_.get();
      return Polynomial::variable(field_, c == 'x' ? 0 : c == 'y' ? 1 : 2);
    }
    if (c == '(') {
      cur_.get();
      Polynomial p = expr();
      cur_.expect(')');
      return p;
    }
    cur_.fail("expected a coefficient, variable, or '('");
  }

  Cursor& cur_;
  Field field_;
};

Field parse_ring_header(Cursor& cur) {
  std::string kw = cur.ident();
  if (kw != "ring") cur.fail("expected 'ring'");
  std::string name = cur.ident();
  Field f;
  if (name == "Q") {
    f = Field::Q();
  } else if (name.size() > 1 && name[0] == 'F' &&
             std::all_of(name.begin() + 1, name.end(),
                         [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    unsigned long p = std::stoul(name.substr(1));
    if (!is_prime_u64(p)) cur.fail("unsupported field: " + std::to_string(p) + " is not prime");
    f = Field::Fp(p);
  } else {
    cur.fail("unsupported field '" + name + "' (use Q or F<p>)");
  }
  cur.expect('[');
  if (cur.ident() != "x") cur.fail("expected variables x,y,z");
  cur.expect(',');
  if (cur.ident() != "y") cur.fail("expected variables x,y,z");
  cur.expect(',');
  if (cur.ident() != "z") cur.fail("expected variables x,y,z");
  cur.expect(']');
  return f;
}

}  // namespace

IdealSpec parse_ideal(const std::string& text) {
  Cursor cur(text);
  cur.skip_ws_and_comments();
  Field f = parse_ring_header(cur);
  std::string kw = cur.ident();
  if (kw != "ideal") cur.fail("expected 'ideal:'");
  cur.expect(':');
  IdealSpec spec{f, {}};
  for (;;) {
    int gl = cur.line, gc = cur.col;
    PolyParser pp(cur, f);
    Polynomial g = pp.expr();
    if (g.is_zero()) throw ParseError(gl, gc, "zero generator");
    if (!g.constant_term().is_zero())
      throw ParseError(gl, gc, "generator has nonzero constant term (I must lie in (x,y,z))");
    spec.gens.push_back(g);
    cur.skip_ws_and_comments();
    if (cur.eof()) break;
    cur.expect(',');
    cur.skip_ws_and_comments();
    if (cur.eof()) cur.fail("trailing comma");
  }
  if (spec.gens.empty()) cur.fail("empty generator list");
  return spec;
}

Polynomial parse_polynomial(const Field& f, const std::string& text) {
  Cursor cur(text);
  PolyParser pp(cur, f);
  Polynomial p = pp.expr();
  cur.skip_ws_and_comments();
  if (!cur.eof()) cur.fail("unexpected trailing input");
  return p;
}

std::string format_ideal(const IdealSpec& I) {
  std::ostringstream os;
  os << "ring " << (I.field.is_prime_field() ? "F" + std::to_string(I.field.p) : "Q")
     << "[x,y,z]\n";
  os << "ideal: ";
  for (std::size_t i = 0; i < I.gens.size(); ++i) {
    if (i) os << ",\n       ";
    os << I.gens[i].str();
  }
  os << "\n";
  return os.str();
}

}  // namespace torlink
