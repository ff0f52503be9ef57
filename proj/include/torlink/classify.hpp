#pragma once

#include "torlink/gen.hpp"
#include "torlink/toralg.hpp"

namespace torlink {

struct Classification {
  ClassLabel label;
  std::size_t m = 0, n = 0;
  Invariants inv;
  BasisChange witness;    // change_basis(input, witness) == normalized
  TorAlgebra normalized;  // exact eq-(efg) table for `label`
};

// Generic rank of multiplication by an indeterminate element of A1, i.e. the
// rank of the m x l pencil of linear forms over the fraction field k(c_1..c_m),
// computed by fraction-free (Bareiss) elimination. Disambiguates T vs H(3,0).
std::size_t generic_left_rank(const TorAlgebra& A);

// Decision level only: the (p,q,r) branch, or nullopt when no row matches.
// The label still has to be confirmed by normalize().
std::optional<ClassLabel> decide_label(const TorAlgebra& A, const Invariants& inv);

// Explicit bases realizing the normal form of A's class; throws
// normalization_failed (with a "field too small" hint when the witness sweep
// exhausts a small prime field).
std::pair<TorAlgebra, BasisChange> normalize(const TorAlgebra& A);

Classification classify(const TorAlgebra& A);  // throws unclassifiable

}  // namespace torlink
