#pragma once

#include <span>
#include <vector>

#include "torlink/matrix.hpp"
#include "torlink/poly.hpp"

namespace torlink {

// Reduced Groebner basis in degrevlex: leading coefficients 1, no leading term
// divides another, tails fully reduced. Unique per ideal, so operator==
// decides ideal equality.
class GroebnerBasis {
 public:
  const Field& field() const { return field_; }
  std::span<const Polynomial> gens() const { return gens_; }
  bool operator==(const GroebnerBasis& o) const;

 private:
  friend GroebnerBasis buchberger(const IdealSpec&);
  Field field_ = Field::Q();
  std::vector<Polynomial> gens_;
};

GroebnerBasis buchberger(const IdealSpec& I);  // throws bad_input on empty input

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& G);

bool contains(const GroebnerBasis& G, const Polynomial& p);
bool is_unit_ideal(const GroebnerBasis& G);

// Standard monomials of the quotient, degrevlex-ascending; throws not_artinian
// when some variable has no pure power among the leading terms.
std::vector<Monomial> quotient_basis(const GroebnerBasis& G);

// (X : I) = { f : f*I in X }. Requires X artinian (always the case for the
// complete intersections used in linkage) and X contained in I.
IdealSpec colon_ideal(const IdealSpec& X, const IdealSpec& I);

// In the artinian three-variable setting, a system of parameters is a regular
// sequence: true iff the quotient by (a,b,c) is finite-dimensional.
bool is_regular_sequence(const Polynomial& a, const Polynomial& b, const Polynomial& c);

// Multiplication-by-g matrix on the quotient algebra, in the std-monomial basis.
ExactMatrix multiplication_matrix(const GroebnerBasis& G, std::span<const Monomial> basis,
                                  const Polynomial& g);

// Coordinates of normal_form(p) over the std-monomial basis.
std::vector<Scalar> nf_coords(const Polynomial& p, const GroebnerBasis& G,
                              std::span<const Monomial> basis);

}  // namespace torlink
