#include "torlink/koszul.hpp"

#include <algorithm>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace torlink {

namespace {

// wedge slot conventions:
//   K1: ee1 ee2 ee3
//   K2: u12 = ee1^ee2, u13 = ee1^ee3, u23 = ee2^ee3
//   K3: u123
constexpr std::size_t kWedge[4] = {1, 3, 3, 1};

struct Stratum {
  int key = 0;                       // internal degree, or 0 for the whole complex
  std::vector<Monomial> mons[4];     // monomial part of the K_i basis
  ExactMatrix d[4];                  // d[i] : K_i -> K_{i-1} (d[0] unused)
  ExactMatrix reps[4];               // homology representatives as columns
  std::size_t offset[4] = {0, 0, 0, 0};  // global index of this stratum's first class
};

struct Engine {
  const IdealSpec& I;
  KoszulOptions opts;
  GroebnerBasis gb;
  std::vector<Monomial> basis;  // std monomials, degrevlex ascending
  bool graded = false;
  std::vector<Stratum> strata;
  std::size_t dims[4] = {0, 0, 0, 0};

  explicit Engine(const IdealSpec& ideal, const KoszulOptions& o)
      : I(ideal), opts(o), gb(buchberger(ideal)) {
    if (is_unit_ideal(gb)) throw Error(Errc::bad_input, "koszul: the unit ideal has no Tor algebra");
    basis = quotient_basis(gb);
    switch (opts.strategy) {
      case KoszulOptions::Strategy::stratified:
        if (!I.is_homogeneous())
          throw Error(Errc::bad_input,
                      "koszul: stratified computation requires homogeneous generators");
        graded = true;
        break;
      case KoszulOptions::Strategy::whole:
        graded = false;
        break;
      case KoszulOptions::Strategy::automatic:
        graded = I.is_homogeneous();
        break;
    }
  }

  std::vector<Monomial> mons_of_degree(unsigned d) const {
    std::vector<Monomial> out;
    for (const auto& m : basis)
      if (m.degree() == d) out.push_back(m);
    return out;
  }

  void layout_strata() {
    if (graded) {
      unsigned s = 0;
      for (const auto& m : basis) s = std::max(s, m.degree());
      for (unsigned d = 0; d <= s + 3; ++d) {
        Stratum st;
        st.key = static_cast<int>(d);
        for (int i = 0; i <= 3; ++i)
          if (d >= static_cast<unsigned>(i)) st.mons[i] = mons_of_degree(d - static_cast<unsigned>(i));
        bool empty = true;
        for (int i = 0; i <= 3; ++i) empty = empty && st.mons[i].empty();
        if (!empty) strata.push_back(std::move(st));
      }
    } else {
      Stratum st;
      st.key = 0;
      for (int i = 0; i <= 3; ++i) st.mons[i] = basis;
      strata.push_back(std::move(st));
    }
  }

  std::size_t coord_index(const Stratum& st, int i, std::size_t wedge, const Monomial& m) const {
    const auto& ms = st.mons[i];
    for (std::size_t t = 0; t < ms.size(); ++t)
      if (ms[t] == m) return wedge * ms.size() + t;
    throw Error(Errc::bad_input, "koszul: monomial outside stratum basis");
  }

  // coordinates of a wedge-indexed tuple of polynomials over the K_i basis
  std::vector<Scalar> tuple_coords(const Stratum& st, int i,
                                   std::span<const Polynomial> polys) const {
    std::vector<Scalar> out(kWedge[i] * st.mons[i].size(), Scalar::zero(I.field));
    for (std::size_t w = 0; w < kWedge[i]; ++w)
      for (const auto& [mon, c] : polys[w].terms()) out[coord_index(st, i, w, mon)] = c;
    return out;
  }

  Polynomial nf_mono_times_var(const Monomial& m, int var) const {
    Polynomial p = Polynomial::term(I.field, m * Monomial::var(var), Scalar::one(I.field));
    return normal_form(p, gb);
  }

  void build_boundaries(Stratum& st) const {
    const Field& f = I.field;
    // d1(m ee_v) = x_v m
    {
      std::size_t rows = kWedge[0] * st.mons[0].size();
      std::size_t cols = kWedge[1] * st.mons[1].size();
      ExactMatrix M(f, rows, cols);
      for (std::size_t w = 0; w < 3; ++w)
        for (std::size_t t = 0; t < st.mons[1].size(); ++t) {
          Polynomial nf = nf_mono_times_var(st.mons[1][t], static_cast<int>(w));
          for (const auto& [mon, c] : nf.terms())
            M.at(coord_index(st, 0, 0, mon), w * st.mons[1].size() + t) = c;
        }
      st.d[1] = std::move(M);
    }
    // d2(m u_ab) = x_a m ee_b - x_b m ee_a
    {
      std::size_t rows = kWedge[1] * st.mons[1].size();
      std::size_t cols = kWedge[2] * st.mons[2].size();
      ExactMatrix M(f, rows, cols);
      constexpr int pair_a[3] = {0, 0, 1};
      constexpr int pair_b[3] = {1, 2, 2};
      for (std::size_t w = 0; w < 3; ++w)
        for (std::size_t t = 0; t < st.mons[2].size(); ++t) {
          std::size_t col = w * st.mons[2].size() + t;
          Polynomial na = nf_mono_times_var(st.mons[2][t], pair_a[w]);
          Polynomial nb = nf_mono_times_var(st.mons[2][t], pair_b[w]);
          for (const auto& [mon, c] : na.terms())
            M.at(coord_index(st, 1, static_cast<std::size_t>(pair_b[w]), mon), col) += c;
          for (const auto& [mon, c] : nb.terms())
            M.at(coord_index(st, 1, static_cast<std::size_t>(pair_a[w]), mon), col) -= c;
        }
      st.d[2] = std::move(M);
    }
    // d3(m u123) = x1 m u23 - x2 m u13 + x3 m u12
    {
      std::size_t rows = kWedge[2] * st.mons[2].size();
      std::size_t cols = kWedge[3] * st.mons[3].size();
      ExactMatrix M(f, rows, cols);
      struct {
        int var;
        std::size_t wedge;
        int sign;
      } parts[3] = {{0, 2, +1}, {1, 1, -1}, {2, 0, +1}};
      for (std::size_t t = 0; t < st.mons[3].size(); ++t)
        for (const auto& pt : parts) {
          Polynomial nf = nf_mono_times_var(st.mons[3][t], pt.var);
          for (const auto& [mon, c] : nf.terms()) {
            Scalar v = pt.sign > 0 ? c : -c;
            M.at(coord_index(st, 2, pt.wedge, mon), t) += v;
          }
        }
      st.d[3] = std::move(M);
    }
    if (opts.check_invariants) {
      if (!(st.d[1] * st.d[2]).is_zero() || !(st.d[2] * st.d[3]).is_zero())
        throw Error(Errc::bad_input, "koszul: boundary^2 != 0");
    }
  }

  // homology representatives: kernel columns independent modulo boundaries
  void compute_reps(Stratum& st) const {
    const Field& f = I.field;
    for (int i = 0; i <= 3; ++i) {
      std::size_t dim = kWedge[i] * st.mons[i].size();
      ExactMatrix cycles = (i == 0) ? ExactMatrix::identity(f, dim) : kernel_basis(st.d[i]);
      ExactMatrix bnd = (i < 3) ? st.d[i + 1] : ExactMatrix(f, dim, 0);
      std::size_t bnd_rank = rank(bnd);
      std::size_t want = cycles.cols() - bnd_rank;
      std::vector<std::vector<Scalar>> kept;
      ExactMatrix cur = bnd;
      std::size_t cur_rank = bnd_rank;
      for (std::size_t c = 0; c < cycles.cols() && kept.size() < want; ++c) {
        ExactMatrix test =
            ExactMatrix::hstack(cur, ExactMatrix::from_cols(f, dim, {cycles.col(c)}));
        if (rank(test) > cur_rank) {
          kept.push_back(cycles.col(c));
          cur = test;
          ++cur_rank;
        }
      }
      if (kept.size() != want) throw Error(Errc::bad_input, "koszul: homology basis defect");
      st.reps[i] = ExactMatrix::from_cols(f, dim, kept);
    }
  }

  void run_strata() {
    layout_strata();
    std::ptrdiff_t count = static_cast<std::ptrdiff_t>(strata.size());
    bool parallel = false;
#ifdef _OPENMP
    parallel = opts.exec != Exec::serial && strata.size() > 1 && omp_get_max_threads() > 1;
#endif
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (std::ptrdiff_t s = 0; s < count; ++s) {
      build_boundaries(strata[static_cast<std::size_t>(s)]);
      compute_reps(strata[static_cast<std::size_t>(s)]);
    }
    (void)parallel;
    for (auto& st : strata)
      for (int i = 0; i <= 3; ++i) {
        st.offset[i] = dims[i];
        dims[i] += st.reps[i].cols();
      }
    if (dims[0] != 1) throw Error(Errc::bad_input, "koszul: dim H0 != 1");
    if (dims[2] + 1 != dims[1] + dims[3])
      throw Error(Errc::bad_input, "koszul: Euler characteristic violated");
  }

  const Stratum* stratum_for(int key) const {
    for (const auto& st : strata)
      if (st.key == key) return &st;
    return nullptr;
  }

  // representative column -> wedge tuple of polynomials
  std::vector<Polynomial> rep_polys(const Stratum& st, int i, std::size_t col) const {
    std::vector<Polynomial> out(kWedge[i], Polynomial::zero(I.field));
    for (std::size_t w = 0; w < kWedge[i]; ++w) {
      std::vector<Term> terms;
      for (std::size_t t = 0; t < st.mons[i].size(); ++t) {
        const Scalar& c = st.reps[i].at(w * st.mons[i].size() + t, col);
        if (!c.is_zero()) terms.push_back({st.mons[i][t], c});
      }
      out[w] = Polynomial::from_terms(I.field, std::move(terms));
    }
    return out;
  }

  // coordinates of a cycle in the homology basis of K_i at `key`, scattered
  // into a global vector of length dims[i]
  void express(int i, int key, std::span<const Polynomial> tuple,
               std::vector<Scalar>& global_out) const {
    bool zero = true;
    for (const auto& p : tuple) zero = zero && p.is_zero();
    if (zero) return;
    const Stratum* st = stratum_for(key);
    if (!st) throw Error(Errc::bad_input, "koszul: product lands outside all strata");
    auto coords = tuple_coords(*st, i, tuple);
    if (opts.check_invariants && i >= 1) {
      auto img = st->d[i].apply(coords);
      for (const auto& c : img)
        if (!c.is_zero()) throw Error(Errc::bad_input, "koszul: representative product is not a cycle");
    }
    ExactMatrix bnd = (i < 3) ? st->d[i + 1]
                              : ExactMatrix(I.field, coords.size(), 0);
    ExactMatrix sys = ExactMatrix::hstack(st->reps[i], bnd);
    auto sol = solve(sys, coords);
    if (!sol) throw Error(Errc::bad_input, "koszul: cycle not expressible in homology basis");
    for (std::size_t c = 0; c < st->reps[i].cols(); ++c)
      global_out[st->offset[i] + c] = (*sol)[c];
  }
};

struct RepRef {
  int key;
  std::vector<Polynomial> tuple;
};

}  // namespace

BettiNumbers betti_numbers(const IdealSpec& I, const KoszulOptions& opts) {
  Engine eng(I, opts);
  eng.run_strata();
  return BettiNumbers{eng.dims[0], eng.dims[1], eng.dims[2], eng.dims[3]};
}

BettiNumbers betti_numbers_reference(const IdealSpec& I) {
  KoszulOptions opts;
  opts.exec = Exec::serial;
  opts.strategy = KoszulOptions::Strategy::whole;
  return betti_numbers(I, opts);
}

KoszulHomology koszul_homology(const IdealSpec& I, const KoszulOptions& opts) {
  Engine eng(I, opts);
  eng.run_strata();
  const Field& f = I.field;
  const std::size_t m = eng.dims[1], l = eng.dims[2], n = eng.dims[3];

  std::vector<RepRef> e_reps, f_reps;
  for (const auto& st : eng.strata) {
    for (std::size_t c = 0; c < st.reps[1].cols(); ++c)
      e_reps.push_back({st.key, eng.rep_polys(st, 1, c)});
    for (std::size_t c = 0; c < st.reps[2].cols(); ++c)
      f_reps.push_back({st.key, eng.rep_polys(st, 2, c)});
  }

  TorAlgebra tor = TorAlgebra::zero(f, m, n);

  auto nf = [&](const Polynomial& p) { return normal_form(p, eng.gb); };

  std::ptrdiff_t mm = static_cast<std::ptrdiff_t>(m);
  bool parallel = false;
#ifdef _OPENMP
  parallel = opts.exec != Exec::serial && omp_get_max_threads() > 1;
#endif
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (std::ptrdiff_t ai = 0; ai < mm; ++ai) {
    std::size_t a = static_cast<std::size_t>(ai);
    const auto& u = e_reps[a].tuple;
    // e_a e_b
    for (std::size_t b = 0; b < m; ++b) {
      const auto& v = e_reps[b].tuple;
      std::vector<Polynomial> w{
          nf(u[0] * v[1] - u[1] * v[0]),   // u12
          nf(u[0] * v[2] - u[2] * v[0]),   // u13
          nf(u[1] * v[2] - u[2] * v[1]),   // u23
      };
      int key = eng.graded ? e_reps[a].key + e_reps[b].key : 0;
      std::vector<Scalar> out(l, Scalar::zero(f));
      eng.express(2, key, w, out);
      tor.e_times_e(a, b) = std::move(out);
    }
    // e_a f_h
    for (std::size_t h = 0; h < l; ++h) {
      const auto& w2 = f_reps[h].tuple;
      std::vector<Polynomial> w{nf(u[0] * w2[2] - u[1] * w2[1] + u[2] * w2[0])};
      int key = eng.graded ? e_reps[a].key + f_reps[h].key : 0;
      std::vector<Scalar> out(n, Scalar::zero(f));
      eng.express(3, key, w, out);
      tor.e_times_f(a, h) = std::move(out);
    }
  }
  (void)parallel;

  KoszulHomology out{std::move(tor), {}, eng.gb, eng.basis};
  for (const auto& r : e_reps) out.h1_reps.push_back({r.tuple[0], r.tuple[1], r.tuple[2]});
  if (opts.check_invariants) {
    ValidationReport rep = validate(out.tor);
    if (!rep.ok())
      throw Error(Errc::bad_input, "koszul: product table invalid: " + rep.violations.front());
  }
  return out;
}

KoszulHomology koszul_homology_reference(const IdealSpec& I) {
  KoszulOptions opts;
  opts.exec = Exec::serial;
  opts.strategy = KoszulOptions::Strategy::whole;
  return koszul_homology(I, opts);
}

}  // namespace torlink
