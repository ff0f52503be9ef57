#pragma once

#include <cstdint>
#include <utility>

#include "torlink/poly.hpp"
#include "torlink/toralg.hpp"

namespace torlink {

// SplitMix64; fixed algorithm so corpora reproduce bit-for-bit across
// implementations (seed 0 emits 0xe220a8397b1dcdaf first).
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // uniform in [0, bound)
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }
  long int_in(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
};

// Stream of per-trial seeds derived from a base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

struct ClassLabel {
  enum class Kind { B, C3, G, H, T };
  Kind kind = Kind::H;
  std::size_t r = 0;          // G(r)
  std::size_t p = 0, q = 0;   // H(p,q)

  static ClassLabel B() { return {Kind::B, 0, 0, 0}; }
  static ClassLabel C3() { return {Kind::C3, 0, 0, 0}; }
  static ClassLabel G(std::size_t r) { return {Kind::G, r, 0, 0}; }
  static ClassLabel H(std::size_t p, std::size_t q) { return {Kind::H, 0, p, q}; }
  static ClassLabel T() { return {Kind::T, 0, 0, 0}; }

  bool operator==(const ClassLabel&) const = default;
  std::string str() const;
};

// Exact multiplication table of the given class on dimensions (m, n):
//   C(3): e1e2=f3 e2e3=f1 e3e1=f2, e_i f_i = g1 (i<=3)
//   T:    e1e2=f3 e2e3=f1 e3e1=f2
//   B:    e1e2=f3, e_i f_i = g1 (i<=2)
//   G(r): e_i f_i = g1 (i<=r), r>=2
//   H(p,q): e_{p+1} e_i = f_i (i<=p), e_{p+1} f_{p+j} = g_j (j<=q)
// Throws dimensionally_invalid when the indices do not fit (admissibility in
// the sense of the classification theorems is *not* required here).
TorAlgebra normal_form_table(const ClassLabel& label, std::size_t m, std::size_t n,
                             const Field& f = Field::Q());

// Random invertible change of basis applied to A; entries from {-2..2} over Q,
// uniform over F_p; singular draws are resampled. Deterministic in the seed.
std::pair<TorAlgebra, BasisChange> scramble(const TorAlgebra& A, std::uint64_t seed);

// Contains x^d, y^d, z^d for d = max_degree plus random homogeneous forms of
// degree 2..max_degree, so the quotient is always artinian.
IdealSpec random_artinian_ideal(std::size_t gen_count, unsigned max_degree, const Field& f,
                                std::uint64_t seed);

}  // namespace torlink
