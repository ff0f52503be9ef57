#include "torlink/groebner.hpp"

#include <algorithm>
#include <map>

namespace torlink {

namespace {

Polynomial spoly(const Polynomial& f, const Polynomial& g) {
  Monomial l = f.leading_monomial().lcm(g.leading_monomial());
  Polynomial a = f.times_term(l.divide(f.leading_monomial()), f.leading_coeff().inverse());
  Polynomial b = g.times_term(l.divide(g.leading_monomial()), g.leading_coeff().inverse());
  return a - b;
}

Polynomial reduce(const Polynomial& p, const std::vector<Polynomial>& basis) {
  Polynomial rem(p.field());
  Polynomial cur = p;
  while (!cur.is_zero()) {
    bool reduced = false;
    for (const auto& g : basis) {
      if (g.is_zero()) continue;
      if (g.leading_monomial().divides(cur.leading_monomial())) {
        Monomial q = cur.leading_monomial().divide(g.leading_monomial());
        Scalar c = cur.leading_coeff() / g.leading_coeff();
        cur = cur - g.times_term(q, c);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      const auto& lt = cur.terms().front();
      rem = rem + Polynomial::term(p.field(), lt.first, lt.second);
      cur = cur - Polynomial::term(p.field(), lt.first, lt.second);
    }
  }
  return rem;
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

}  // namespace

GroebnerBasis buchberger(const IdealSpec& I) {
  if (I.gens.empty()) throw Error(Errc::bad_input, "buchberger: empty generator list");
  std::vector<Polynomial> basis;
  for (const auto& g : I.gens) {
    if (!(g.field() == I.field))
      throw Error(Errc::field_mismatch, "generator field differs from ideal field");
    if (!g.is_zero()) basis.push_back(g.monic());
  }
  if (basis.empty()) throw Error(Errc::bad_input, "buchberger: all generators zero");

  std::vector<Pair> pairs;
  auto push_pairs = [&](std::size_t k) {
    for (std::size_t i = 0; i < k; ++i)
      pairs.push_back({i, k, basis[i].leading_monomial().lcm(basis[k].leading_monomial())});
  };
  for (std::size_t k = 1; k < basis.size(); ++k) push_pairs(k);

  auto lcm_less = [](const Pair& a, const Pair& b) {
    return degrevlex_greater(b.lcm, a.lcm);  // process small lcm first
  };

  while (!pairs.empty()) {
    auto it = std::min_element(pairs.begin(), pairs.end(), lcm_less);
    Pair pr = *it;
    pairs.erase(it);
    const Polynomial &f = basis[pr.i], &g = basis[pr.j];
    // product criterion
    if (f.leading_monomial().coprime(g.leading_monomial())) continue;
    // chain criterion: some other basis element divides the lcm and both
    // companion pairs are gone
    bool chained = false;
    for (std::size_t k = 0; k < basis.size() && !chained; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (!basis[k].leading_monomial().divides(pr.lcm)) continue;
      bool pending = false;
      for (const auto& q : pairs) {
        if ((q.i == std::min(pr.i, k) && q.j == std::max(pr.i, k)) ||
            (q.i == std::min(pr.j, k) && q.j == std::max(pr.j, k))) {
          pending = true;
          break;
        }
      }
      if (!pending) chained = true;
    }
    if (chained) continue;
    Polynomial r = reduce(spoly(f, g), basis);
    if (!r.is_zero()) {
      basis.push_back(r.monic());
      push_pairs(basis.size() - 1);
    }
  }

  // inter-reduce to the unique reduced basis
  std::vector<Polynomial> reduced_basis;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (i == j) continue;
      if (basis[j].leading_monomial().divides(basis[i].leading_monomial()) &&
          !(j > i && basis[j].leading_monomial() == basis[i].leading_monomial())) {
        redundant = true;
        break;
      }
    }
    if (!redundant) reduced_basis.push_back(basis[i]);
  }
  for (std::size_t i = 0; i < reduced_basis.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < reduced_basis.size(); ++j)
      if (j != i) others.push_back(reduced_basis[j]);
    reduced_basis[i] = reduce(reduced_basis[i], others).monic();
  }
  std::erase_if(reduced_basis, [](const Polynomial& p) { return p.is_zero(); });
  std::sort(reduced_basis.begin(), reduced_basis.end(), [](const Polynomial& a, const Polynomial& b) {
    return degrevlex_greater(b.leading_monomial(), a.leading_monomial());
  });

  GroebnerBasis G;
  G.field_ = I.field;
  G.gens_ = std::move(reduced_basis);
  return G;
}

bool GroebnerBasis::operator==(const GroebnerBasis& o) const {
  if (!(field_ == o.field_) || gens_.size() != o.gens_.size()) return false;
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (!(gens_[i] == o.gens_[i])) return false;
  return true;
}

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& G) {
  if (!(p.field() == G.field()))
    throw Error(Errc::field_mismatch, "normal_form: field mismatch");
  return reduce(p, {G.gens().begin(), G.gens().end()});
}

bool contains(const GroebnerBasis& G, const Polynomial& p) {
  return normal_form(p, G).is_zero();
}

bool is_unit_ideal(const GroebnerBasis& G) {
  return G.gens().size() == 1 && G.gens()[0].degree() == 0;
}

std::vector<Monomial> quotient_basis(const GroebnerBasis& G) {
  if (is_unit_ideal(G)) return {};
  std::vector<Monomial> lts;
  for (const auto& g : G.gens()) lts.push_back(g.leading_monomial());
  unsigned bound[3];
  for (int v = 0; v < 3; ++v) {
    unsigned best = 0;
    bool found = false;
    for (const auto& m : lts) {
      bool pure = true;
      for (int w = 0; w < 3; ++w)
        if (w != v && m.e[static_cast<std::size_t>(w)] != 0) pure = false;
      if (pure && m.e[static_cast<std::size_t>(v)] > 0) {
        if (!found || m.e[static_cast<std::size_t>(v)] < best) best = m.e[static_cast<std::size_t>(v)];
        found = true;
      }
    }
    if (!found)
      throw Error(Errc::not_artinian,
                  std::string("quotient is not artinian: no power of ") + "xyz"[v] +
                      " among leading terms");
    bound[v] = best;
  }
  std::vector<Monomial> out;
  for (unsigned a = 0; a < bound[0]; ++a)
    for (unsigned b = 0; b < bound[1]; ++b)
      for (unsigned c = 0; c < bound[2]; ++c) {
        Monomial m{{a, b, c}};
        bool standard = true;
        for (const auto& lt : lts)
          if (lt.divides(m)) {
            standard = false;
            break;
          }
        if (standard) out.push_back(m);
      }
  std::sort(out.begin(), out.end(),
            [](const Monomial& a, const Monomial& b) { return degrevlex_greater(b, a); });
  return out;
}

std::vector<Scalar> nf_coords(const Polynomial& p, const GroebnerBasis& G,
                              std::span<const Monomial> basis) {
  Polynomial nf = normal_form(p, G);
  std::vector<Scalar> out(basis.size(), Scalar::zero(G.field()));
  for (const auto& [m, c] : nf.terms()) {
    bool placed = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (basis[i] == m) {
        out[i] = c;
        placed = true;
        break;
      }
    }
    if (!placed) throw Error(Errc::bad_input, "nf_coords: normal form leaves the basis");
  }
  return out;
}

ExactMatrix multiplication_matrix(const GroebnerBasis& G, std::span<const Monomial> basis,
                                  const Polynomial& g) {
  ExactMatrix M(G.field(), basis.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    Polynomial bj = Polynomial::term(G.field(), basis[j], Scalar::one(G.field()));
    auto coords = nf_coords(bj * g, G, basis);
    M.set_col(j, coords);
  }
  return M;
}

IdealSpec colon_ideal(const IdealSpec& X, const IdealSpec& I) {
  if (!(X.field == I.field)) throw Error(Errc::field_mismatch, "colon_ideal: field mismatch");
  GroebnerBasis GX = buchberger(X);
  GroebnerBasis GI = buchberger(I);
  for (const auto& g : X.gens)
    if (!contains(GI, g))
      throw Error(Errc::containment_violation, "colon_ideal: X is not contained in I");

  // (X:I) = X + lift of the common kernel of multiplication by each generator
  // of I on Q/X. Valid because Q/X is finite-dimensional.
  std::vector<Monomial> basis = quotient_basis(GX);
  std::size_t D = basis.size();
  if (D == 0) return IdealSpec{X.field, {Polynomial::constant(X.field, Scalar::one(X.field))}};

  std::vector<ExactMatrix> blocks;
  for (const auto& g : I.gens) {
    if (g.is_zero()) continue;
    blocks.push_back(multiplication_matrix(GX, basis, g));
  }
  ExactMatrix stacked(X.field, blocks.size() * D, D);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (std::size_t i = 0; i < D; ++i)
      for (std::size_t j = 0; j < D; ++j) stacked.at(b * D + i, j) = blocks[b].at(i, j);
  ExactMatrix ker = kernel_basis(stacked);

  IdealSpec out{X.field, X.gens};
  for (std::size_t c = 0; c < ker.cols(); ++c) {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < D; ++i)
      if (!ker.at(i, c).is_zero()) terms.push_back({basis[i], ker.at(i, c)});
    Polynomial f = Polynomial::from_terms(X.field, std::move(terms));
    if (f.is_zero()) continue;
    // membership of f*g in X, by construction; verify exactly
    for (const auto& g : I.gens)
      if (!contains(GX, f * g))
        throw Error(Errc::bad_input, "colon_ideal: internal verification failed");
    out.gens.push_back(f);
  }
  GroebnerBasis Gout = buchberger(out);
  if (is_unit_ideal(Gout))
    return IdealSpec{X.field, {Polynomial::constant(X.field, Scalar::one(X.field))}};
  return IdealSpec{X.field, {Gout.gens().begin(), Gout.gens().end()}};
}

bool is_regular_sequence(const Polynomial& a, const Polynomial& b, const Polynomial& c) {
  for (const auto* p : {&a, &b, &c}) {
    if (p->is_zero()) throw Error(Errc::bad_input, "is_regular_sequence: zero entry");
    if (!p->constant_term().is_zero())
      throw Error(Errc::bad_input, "is_regular_sequence: nonzero constant term");
  }
  IdealSpec I{a.field(), {a, b, c}};
  try {
    quotient_basis(buchberger(I));
    return true;
  } catch (const Error& e) {
    if (e.code() == Errc::not_artinian) return false;
    throw;
  }
}

}  // namespace torlink
