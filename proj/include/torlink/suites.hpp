#pragma once

#include <string>
#include <vector>

#include "torlink/linkage.hpp"
#include "torlink/theorems.hpp"

namespace torlink {

struct SuiteResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::vector<std::string> messages;  // one per failure, with reproducer data
  double seconds = 0;

  bool pass() const { return failures == 0; }
};

// prime used for F_p runs; TORLINK_FIELD ("F127" or "127") overrides 101
std::uint64_t default_prime();

// invariants_pqr of every normal form reproduces its (p,q,r) row exactly
SuiteResult suite_pqr();

// scramble -> classify recovers the label, over Q and F_p, all classes with
// 4 <= m <= 8, 1 <= n <= 6 (plus C(3) at (3,1))
SuiteResult suite_roundtrip(std::size_t trials, std::uint64_t seed);

// per regime: generated normal forms through link_table against the rank
// formulas and bound clauses; plus end-to-end ideal pairs through
// check_proposition
SuiteResult suite_propositions(std::size_t per_regime, std::uint64_t seed);

// every classification of a random-artinian corpus passes admissible_class
SuiteResult suite_theorems(std::size_t corpus, std::uint64_t seed);

// iterated linkage reaches C(3) or H(0,0) within 2(m+n) links with the total
// Betti number descending as the corollary prescribes
SuiteResult suite_linkchain(std::size_t corpus, std::uint64_t seed);

// dispatch by CLI name; throws bad_input for unknown suites
SuiteResult run_suite(const std::string& name, std::size_t trials, std::uint64_t seed);

}  // namespace torlink
