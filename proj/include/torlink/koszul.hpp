#pragma once

#include <array>

#include "torlink/groebner.hpp"
#include "torlink/toralg.hpp"

namespace torlink {

struct BettiNumbers {
  std::size_t b0 = 0, b1 = 0, b2 = 0, b3 = 0;
  bool operator==(const BettiNumbers&) const = default;
};

struct KoszulOptions {
  Exec exec = Exec::automatic;
  // check boundary^2 = 0 and that representative products are cycles
  bool check_invariants = true;
  // stratify by internal degree (only valid for homogeneous ideals); the
  // automatic default stratifies exactly when the input is homogeneous
  enum class Strategy { automatic, stratified, whole } strategy = Strategy::automatic;
};

struct KoszulHomology {
  TorAlgebra tor;
  // homology class of e_i as a Koszul cycle u1*ee1 + u2*ee2 + u3*ee3; the
  // corresponding ideal element is u1*x + u2*y + u3*z
  std::vector<std::array<Polynomial, 3>> h1_reps;
  GroebnerBasis gb;
  std::vector<Monomial> quotient;
};

// Ranks of Tor_i(Q/I, k) computed from the Koszul complex of Q/I; b2 = b1+b3-1.
BettiNumbers betti_numbers(const IdealSpec& I, const KoszulOptions& opts = {});

// The full graded-commutative multiplication table on Tor(Q/I, k).
KoszulHomology koszul_homology(const IdealSpec& I, const KoszulOptions& opts = {});

// Whole-complex serial reference; valid for any artinian input and kept as the
// oracle the stratified kernels are tested against.
KoszulHomology koszul_homology_reference(const IdealSpec& I);
BettiNumbers betti_numbers_reference(const IdealSpec& I);

}  // namespace torlink
