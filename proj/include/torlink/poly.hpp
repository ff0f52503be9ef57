#pragma once

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "torlink/field.hpp"

namespace torlink {

// Monomial in the fixed variables x, y, z.
struct Monomial {
  std::array<unsigned, 3> e{0, 0, 0};

  unsigned degree() const { return e[0] + e[1] + e[2]; }
  static Monomial one() { return {}; }
  static Monomial var(int i) {
    Monomial m;
    m.e[static_cast<std::size_t>(i)] = 1;
    return m;
  }
  Monomial operator*(const Monomial& o) const {
    return Monomial{{e[0] + o.e[0], e[1] + o.e[1], e[2] + o.e[2]}};
  }
  bool divides(const Monomial& o) const {
    return e[0] <= o.e[0] && e[1] <= o.e[1] && e[2] <= o.e[2];
  }
  Monomial divide(const Monomial& o) const {  // *this / o, requires o.divides(*this)
    return Monomial{{e[0] - o.e[0], e[1] - o.e[1], e[2] - o.e[2]}};
  }
  Monomial lcm(const Monomial& o) const {
    return Monomial{{std::max(e[0], o.e[0]), std::max(e[1], o.e[1]), std::max(e[2], o.e[2])}};
  }
  bool coprime(const Monomial& o) const {
    return (e[0] == 0 || o.e[0] == 0) && (e[1] == 0 || o.e[1] == 0) && (e[2] == 0 || o.e[2] == 0);
  }
  bool operator==(const Monomial&) const = default;
  std::string str() const;
};

// a > b in degrevlex with x > y > z
bool degrevlex_greater(const Monomial& a, const Monomial& b);

// All monomials of total degree d, degrevlex-descending.
std::vector<Monomial> monomials_of_degree(unsigned d);

using Term = std::pair<Monomial, Scalar>;

// Terms stay degrevlex-descending with no zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(const Field& f) : field_(f) {}

  static Polynomial zero(const Field& f) { return Polynomial(f); }
  static Polynomial constant(const Field& f, const Scalar& c);
  static Polynomial term(const Field& f, const Monomial& m, const Scalar& c);
  static Polynomial variable(const Field& f, int i);
  static Polynomial from_terms(const Field& f, std::vector<Term> terms);  // canonicalizes

  const Field& field() const { return field_; }
  bool is_zero() const { return terms_.empty(); }
  std::span<const Term> terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  const Monomial& leading_monomial() const;
  const Scalar& leading_coeff() const;
  Scalar constant_term() const;
  Scalar coeff(const Monomial& m) const;
  int degree() const;  // -1 for zero
  bool is_homogeneous() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const Scalar& c) const;
  Polynomial times_term(const Monomial& m, const Scalar& c) const;
  Polynomial monic() const;

  bool operator==(const Polynomial& o) const;
  std::string str() const;

 private:
  void check_same_field(const Polynomial& o) const;

  Field field_ = Field::Q();
  std::vector<Term> terms_;
};

Polynomial multiply(const Polynomial& p, const Polynomial& q);  // throws field_mismatch

// An ideal given by generators. File-parsed ideals satisfy: generators nonzero
// with zero constant term. The unit ideal is represented by the single
// generator 1 (only ever produced programmatically, e.g. by colon_ideal).
struct IdealSpec {
  Field field = Field::Q();
  std::vector<Polynomial> gens;

  bool is_homogeneous() const;
};

// Grammar:
//   line 1:  ring Q[x,y,z]   |   ring F<p>[x,y,z]
//   then:    ideal: f1, f2, ...   (may span lines; '#' starts a comment)
IdealSpec parse_ideal(const std::string& text);  // throws ParseError / Error

// One polynomial over a known field, same expression grammar.
Polynomial parse_polynomial(const Field& f, const std::string& text);

std::string format_ideal(const IdealSpec& I);

}  // namespace torlink
