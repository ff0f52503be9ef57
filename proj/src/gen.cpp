#include "torlink/gen.hpp"

namespace torlink {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  SplitMix64 g(base ^ (0x9e3779b97f4a7c15ull * (index + 1)));
  return g.next();
}

std::string ClassLabel::str() const {
  switch (kind) {
    case Kind::B:
      return "B";
    case Kind::C3:
      return "C(3)";
    case Kind::G:
      return "G(" + std::to_string(r) + ")";
    case Kind::H:
      return "H(" + std::to_string(p) + "," + std::to_string(q) + ")";
    case Kind::T:
      return "T";
  }
  return "?";
}

TorAlgebra normal_form_table(const ClassLabel& label, std::size_t m, std::size_t n,
                             const Field& f) {
  auto need = [&](bool cond, const std::string& what) {
    if (!cond)
      throw Error(Errc::dimensionally_invalid,
                  label.str() + " on (m,n)=(" + std::to_string(m) + "," + std::to_string(n) +
                      "): " + what);
  };
  need(m >= 1 && n >= 1, "m,n >= 1 required");
  TorAlgebra A = TorAlgebra::zero(f, m, n);
  const std::size_t l = A.l();
  Scalar one = Scalar::one(f);
  auto set_ee = [&](std::size_t i, std::size_t j, std::size_t fh) {
    // e_i e_j = f_fh (1-based)
    A.e_times_e(i - 1, j - 1)[fh - 1] = one;
    A.e_times_e(j - 1, i - 1)[fh - 1] = -one;
  };
  auto set_ef = [&](std::size_t i, std::size_t fh, std::size_t g) {
    A.e_times_f(i - 1, fh - 1)[g - 1] = one;
  };
  switch (label.kind) {
    case ClassLabel::Kind::C3:
      need(m == 3 && n == 1, "C(3) requires (m,n) = (3,1)");
      set_ee(1, 2, 3);
      set_ee(2, 3, 1);
      set_ee(3, 1, 2);
      for (std::size_t i = 1; i <= 3; ++i) set_ef(i, i, 1);
      break;
    case ClassLabel::Kind::T:
      need(m >= 3 && l >= 3, "T requires m >= 3 and l >= 3");
      set_ee(1, 2, 3);
      set_ee(2, 3, 1);
      set_ee(3, 1, 2);
      break;
    case ClassLabel::Kind::B:
      need(m >= 2 && l >= 3, "B requires m >= 2 and l >= 3");
      set_ee(1, 2, 3);
      set_ef(1, 1, 1);
      set_ef(2, 2, 1);
      break;
    case ClassLabel::Kind::G:
      need(label.r >= 2, "G(r) requires r >= 2");
      need(label.r <= m && label.r <= l, "G(r) requires r <= m and r <= l");
      for (std::size_t i = 1; i <= label.r; ++i) set_ef(i, i, 1);
      break;
    case ClassLabel::Kind::H:
      need(label.p + 1 <= m, "H(p,q) requires p <= m-1");
      need(label.q <= n, "H(p,q) requires q <= n");
      need(label.p + label.q <= l, "H(p,q) requires p+q <= l");
      for (std::size_t i = 1; i <= label.p; ++i) set_ee(label.p + 1, i, i);
      for (std::size_t j = 1; j <= label.q; ++j) set_ef(label.p + 1, label.p + j, j);
      break;
  }
  return A;
}

namespace {

ExactMatrix random_invertible(const Field& f, std::size_t dim, SplitMix64& rng) {
  for (;;) {
    ExactMatrix M(f, dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        if (f.is_prime_field())
          M.at(i, j) = Scalar::of_residue(f, rng.below(f.p));
        else
          M.at(i, j) = Scalar::of_int(f, rng.int_in(-2, 2));
      }
    if (rank(M) == dim) return M;
  }
}

}  // namespace

std::pair<TorAlgebra, BasisChange> scramble(const TorAlgebra& A, std::uint64_t seed) {
  SplitMix64 rng(seed);
  BasisChange B{random_invertible(A.field, A.m, rng), random_invertible(A.field, A.l(), rng),
                random_invertible(A.field, A.n, rng)};
  return {change_basis(A, B), B};
}

IdealSpec random_artinian_ideal(std::size_t gen_count, unsigned max_degree, const Field& f,
                                std::uint64_t seed) {
  if (gen_count < 3) throw Error(Errc::bad_input, "random_artinian_ideal: gen_count >= 3");
  if (max_degree < 1) throw Error(Errc::bad_input, "random_artinian_ideal: max_degree >= 1");
  SplitMix64 rng(seed);
  IdealSpec I{f, {}};
  for (int v = 0; v < 3; ++v) {
    Monomial pw;
    pw.e[static_cast<std::size_t>(v)] = max_degree;
    I.gens.push_back(Polynomial::term(f, pw, Scalar::one(f)));
  }
  while (I.gens.size() < gen_count) {
    unsigned d = max_degree <= 2 ? 2 : static_cast<unsigned>(2 + rng.below(max_degree - 1));
    std::vector<Term> terms;
    for (const auto& mono : monomials_of_degree(d)) {
      Scalar c = f.is_prime_field() ? Scalar::of_residue(f, rng.below(f.p))
                                    : Scalar::of_int(f, rng.int_in(-2, 2));
      if (!c.is_zero()) terms.push_back({mono, c});
    }
    Polynomial g = Polynomial::from_terms(f, std::move(terms));
    if (g.is_zero()) continue;
    I.gens.push_back(g);
  }
  return I;
}

}  // namespace torlink
