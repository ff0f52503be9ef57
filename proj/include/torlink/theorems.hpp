#pragma once

#include <vector>

#include "torlink/gen.hpp"

namespace torlink {

// The two-parameter admissibility conditions for class H on (m, n): the innate
// bounds p <= m-1, q <= n and p <= n+1, q <= m-2, the all-or-nothing extremal
// equivalence p = n+1 <=> q = m-2 <=> (p = m-1 and q = n), and away from it
// p <= n-1, q <= m-4 with the parity constraints at the boundary. Requires
// m >= 4 and n >= 2 (false otherwise).
bool admissible_H(std::size_t m, std::size_t n, std::size_t p, std::size_t q);

struct ClassQuery {
  ClassLabel label;
  std::size_t m = 0, n = 0;
};

struct Admissibility {
  bool ok = false;
  std::vector<std::string> advisories;  // conjecture-only caveats
};

// Hard theorem violations give ok = false; conjecture violations keep ok =
// true and add an advisory. Class H additionally carries the small-case
// restrictions (four generators; type two; type three).
Admissibility admissible_class(const ClassQuery& q);

// All labels admissible at (m, n), canonically ordered: C(3), B, T, then
// G(r) by r, then H(p,q) by (q,p).
std::vector<ClassLabel> grid(std::size_t m, std::size_t n);

// Sum of the ranks in the minimal free resolution: 2(m+n), minimized at 8 by
// complete intersections.
std::size_t total_betti(std::size_t m, std::size_t n);

std::string grid_text(std::size_t m, std::size_t n);
std::string grid_csv(std::size_t m, std::size_t n);
std::string grid_json(std::size_t m, std::size_t n);

}  // namespace torlink
