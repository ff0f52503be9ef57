#pragma once

#include <optional>

#include "torlink/classify.hpp"
#include "torlink/koszul.hpp"

namespace torlink {

// The mapping-cone transform is stated for normal-form bases in which the
// regular-sequence slots {1,2,3} overlap the product-carrying indices in a
// controlled way: H0/H1/H2 place the special element in slot 1 with partner
// overlap 0/1/2, and the BGT regimes are the five layouts used for classes
// B, G, and T.
enum class Regime { BGT_A, BGT_B, BGT_C, BGT_D, BGT_E, H0, H1, H2 };

const char* regime_name(Regime r);
std::optional<Regime> regime_from_name(const std::string& s);

// Hypotheses: BGT_A needs class B; BGT_B class G; BGT_C class T with m >= 5;
// BGT_D class T with m >= 4; BGT_E class T; H0 class H with m-3 >= p; H1 class
// H with m-2 >= p >= 1; H2 class H with m-1 >= p >= 2.
bool regime_applies(const Classification& c, Regime r);
void require_regime(const Classification& c, Regime r);  // throws regime_mismatch

struct KnownProduct {
  std::size_t e_index;        // 1-based label n+i of a Koszul-derived generator
  char partner_kind;          // 'E' or 'F'
  std::size_t partner_index;  // 1-based label of the partner
  std::vector<Scalar> value;  // over F labels 1..l ('E') or G labels 1..m ('F')
};

struct LinkedPresentation {
  std::size_t m_linked = 0, n_linked = 0, splits = 0;
  std::vector<std::size_t> surviving_E;  // labels 1..n and surviving n+i
  std::vector<std::size_t> surviving_F;  // labels among 1..l (l+1..l+3 die)
  std::vector<std::size_t> surviving_G;  // labels 4..m
  std::vector<KnownProduct> known_products;
  std::size_t p_lower = 0, q_lower = 0;
};

// Apply the mapping-cone rules (rank, split, zero, and the two product
// formulas) to the normalized table, relabeled into the regime layout.
LinkedPresentation link_table(const Classification& c, Regime r);

struct LinkedBetti {
  std::size_t b1 = 0, b2 = 0, b3 = 0;
};

// General rank formulas from the mapping cone; rank(phi3 (x) k) = 0 follows
// from the Euler characteristic.
LinkedBetti linked_betti_ranks(std::size_t m, std::size_t n, std::size_t rank_phi1,
                               std::size_t rank_phi2);

// Minimal-generator case: (m', n') = (n + 3 - splits, m - 3). The general
// case needs the ranks explicitly; use linked_betti_ranks.
std::pair<std::size_t, std::size_t> linked_betti(std::size_t m, std::size_t n, std::size_t splits,
                                                 bool minimal_gens = true);

// (x : I) for the complete intersection x = (x1,x2,x3); checks membership,
// regularity, and properness of the link.
IdealSpec link_ideal(const IdealSpec& I, const std::array<Polynomial, 3>& x);

struct Verdict {
  std::vector<std::string> violations;  // clause ids with details
  bool pass() const { return violations.empty(); }
};

// Clause-by-clause check of the linkage propositions for a before/after pair.
Verdict check_proposition(const Classification& before, const Classification& after, Regime r);

// Regime the chain driver selects from the class of the ideal (nullopt for
// the terminal classes C(3) and H(0,0)).
std::optional<Regime> preferred_regime(const Classification& c);

// Regime consistent with an observed linked first derivation, used to judge
// user-supplied sequences.
std::optional<Regime> regime_for_observed(const Classification& before, std::size_t m_after);

struct LinkStep {
  IdealSpec input;
  std::array<Polynomial, 3> sequence;
  Regime regime;
  Classification before, after;
  IdealSpec linked;
  Verdict verdict;
};

// One proof-aligned direct link: the regular sequence realizes the regime
// layout slots of the normalized basis (perturbed within M*I as needed to be
// regular). check_proposition must pass on the result. `force` overrides the
// chain driver's regime choice (it still has to apply).
LinkStep link_step(const IdealSpec& I, std::uint64_t seed, std::optional<Regime> force = {});

// Iterate link_step until class C(3) or H(0,0); throws if max_links is hit.
std::vector<LinkStep> link_chain(const IdealSpec& I, std::size_t max_links, std::uint64_t seed);

std::string linked_presentation_json(const Classification& before, Regime r,
                                     const LinkedPresentation& lp);

}  // namespace torlink
