#pragma once

#include <span>
#include <string>
#include <vector>

#include "torlink/matrix.hpp"

namespace torlink {

// Graded-commutative multiplication table on dimensions (1, m, l, n) with
// l = m+n-1: mu11 holds the products A1 x A1 -> A2 (coefficients over the
// f-basis), mu12 the products A1 x A2 -> A3 (over the g-basis). Products in
// degree > 3 vanish and are not stored.
struct TorAlgebra {
  Field field = Field::Q();
  std::size_t m = 0, n = 0;
  std::vector<std::vector<Scalar>> mu11;  // [i*m+j], length-l vectors
  std::vector<std::vector<Scalar>> mu12;  // [i*l+h], length-n vectors

  std::size_t l() const { return m + n - 1; }

  static TorAlgebra zero(const Field& f, std::size_t m, std::size_t n);

  const std::vector<Scalar>& e_times_e(std::size_t i, std::size_t j) const {
    return mu11[i * m + j];
  }
  std::vector<Scalar>& e_times_e(std::size_t i, std::size_t j) { return mu11[i * m + j]; }
  const std::vector<Scalar>& e_times_f(std::size_t i, std::size_t h) const {
    return mu12[i * l() + h];
  }
  std::vector<Scalar>& e_times_f(std::size_t i, std::size_t h) { return mu12[i * l() + h]; }

  // product of arbitrary elements, coefficient vectors over the e/f bases
  std::vector<Scalar> mult_ee(std::span<const Scalar> a, std::span<const Scalar> b) const;
  std::vector<Scalar> mult_ef(std::span<const Scalar> a, std::span<const Scalar> f) const;

  bool operator==(const TorAlgebra& o) const;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Checks antisymmetry, zero squares, and that (i,j,k) -> e_i(e_j e_k) is
// alternating; e.e = 0 is checked as a stored constraint (char 2 included).
ValidationReport validate(const TorAlgebra& A);

struct Invariants {
  std::size_t p = 0, q = 0, r = 0;
  bool operator==(const Invariants&) const = default;
};

// p = rank A1.A1, q = rank A1.A2, r = rank of A2 -> Hom(A1,A3) flattened to an
// l x (m*n) matrix with columns indexed (e-index, g-index) row-major.
Invariants invariants_pqr(const TorAlgebra& A);

// Columns of g1/g2/g3 express the new bases in the old coordinates.
struct BasisChange {
  ExactMatrix g1, g2, g3;

  static BasisChange identity(const Field& f, std::size_t m, std::size_t n);
  BasisChange inverse() const;
  BasisChange compose(const BasisChange& then) const;  // apply *this, then `then`
  bool is_identity() const;
};

TorAlgebra change_basis(const TorAlgebra& A, const BasisChange& B);  // throws singular_matrix

// Rank of multiplication by sum(coeffs_i e_i) as a map A1 -> A2.
std::size_t left_mult_rank(const TorAlgebra& A, std::span<const Scalar> coeffs);
// The same map as an l x m matrix (columns = images of the e-basis).
ExactMatrix left_mult_matrix(const TorAlgebra& A, std::span<const Scalar> coeffs);
// Multiplication by the element as a map A2 -> A3, an n x l matrix.
ExactMatrix a2_mult_matrix(const TorAlgebra& A, std::span<const Scalar> coeffs);

// Tor-table file format (JSON): {"field":{"type":"Q"}|{"type":"Fp","p":101},
//  "m":m,"n":n,"mu11":[[i,j,coeffs]...],"mu12":[[i,h,coeffs]...]} with 1-based
// indices; mu11 entries imply the antisymmetric partner; omitted products are 0.
TorAlgebra load_tor_table(const std::string& json_text);
std::string dump_tor_table(const TorAlgebra& A);

}  // namespace torlink
