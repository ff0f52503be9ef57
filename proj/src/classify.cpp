#include "torlink/classify.hpp"

#include <algorithm>
#include <map>

namespace torlink {

// ---------------------------------------------------------------------------
// fraction-free rank of a matrix of linear forms

namespace {

// Sparse multivariate polynomial over Scalar, exponents keyed lexicographically.
class MPoly {
 public:
  MPoly() = default;
  explicit MPoly(const Field& f) : field_(f) {}

  static MPoly constant(const Field& f, const Scalar& c) {
    MPoly p(f);
    if (!c.is_zero()) p.terms_[{}] = c;
    return p;
  }
  static MPoly linear_var(const Field& f, std::size_t var, std::size_t nvars, const Scalar& c) {
    MPoly p(f);
    if (c.is_zero()) return p;
    std::vector<unsigned> e(nvars, 0);
    e[var] = 1;
    p.terms_[e] = c;
    return p;
  }

  bool is_zero() const { return terms_.empty(); }

  MPoly operator+(const MPoly& o) const {
    MPoly r = *this;
    for (const auto& [e, c] : o.terms_) {
      auto it = r.terms_.find(e);
      if (it == r.terms_.end()) {
        r.terms_[e] = c;
      } else {
        it->second += c;
        if (it->second.is_zero()) r.terms_.erase(it);
      }
    }
    return r;
  }
  MPoly operator-() const {
    MPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  MPoly operator-(const MPoly& o) const { return *this + (-o); }
  MPoly operator*(const MPoly& o) const {
    MPoly r(field_);
    for (const auto& [ea, ca] : terms_)
      for (const auto& [eb, cb] : o.terms_) {
        std::vector<unsigned> e(std::max(ea.size(), eb.size()), 0);
        for (std::size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
        for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
        Scalar c = ca * cb;
        auto it = r.terms_.find(e);
        if (it == r.terms_.end()) {
          if (!c.is_zero()) r.terms_[e] = c;
        } else {
          it->second += c;
          if (it->second.is_zero()) r.terms_.erase(it);
        }
      }
    return r;
  }

  // exact division (throws if not exact); used for the Bareiss step
  MPoly divide_exact(const MPoly& d) const {
    if (d.is_zero()) throw Error(Errc::bad_input, "MPoly division by zero");
    MPoly rem = *this;
    MPoly quo(field_);
    auto lt = [](const MPoly& p) { return --p.terms_.end(); };
    while (!rem.is_zero()) {
      auto rit = lt(rem);
      auto dit = lt(d);
      std::vector<unsigned> e = rit->first;
      const std::vector<unsigned>& de = dit->first;
      if (e.size() < de.size()) e.resize(de.size(), 0);
      for (std::size_t i = 0; i < de.size(); ++i) {
        if (e[i] < de[i]) throw Error(Errc::bad_input, "MPoly division not exact");
        e[i] -= de[i];
      }
      Scalar c = rit->second / dit->second;
      MPoly t(field_);
      t.terms_[e] = c;
      quo = quo + t;
      rem = rem - t * d;
    }
    return quo;
  }

 private:
  Field field_ = Field::Q();
  std::map<std::vector<unsigned>, Scalar> terms_;
};

std::size_t bareiss_rank(std::vector<std::vector<MPoly>> M, const Field& f) {
  const std::size_t nr = M.size();
  const std::size_t nc = nr ? M[0].size() : 0;
  MPoly prev = MPoly::constant(f, Scalar::one(f));
  std::size_t r = 0;
  for (std::size_t c = 0; c < nc && r < nr; ++c) {
    std::size_t piv = nr;
    for (std::size_t i = r; i < nr; ++i)
      if (!M[i][c].is_zero()) {
        piv = i;
        break;
      }
    if (piv == nr) continue;
    std::swap(M[piv], M[r]);
    for (std::size_t k = r + 1; k < nr; ++k) {
      for (std::size_t j = c + 1; j < nc; ++j)
        M[k][j] = (M[r][c] * M[k][j] - M[k][c] * M[r][j]).divide_exact(prev);
      M[k][c] = MPoly(f);
    }
    prev = M[r][c];
    ++r;
  }
  return r;
}

}  // namespace

std::size_t generic_left_rank(const TorAlgebra& A) {
  const std::size_t m = A.m, l = A.l();
  const Field& f = A.field;
  std::vector<std::vector<MPoly>> M(m, std::vector<MPoly>(l, MPoly(f)));
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t h = 0; h < l; ++h) {
      MPoly entry(f);
      for (std::size_t i = 0; i < m; ++i) {
        const Scalar& c = A.e_times_e(i, j)[h];
        if (!c.is_zero()) entry = entry + MPoly::linear_var(f, i, m, c);
      }
      M[j][h] = entry;
    }
  return bareiss_rank(std::move(M), f);
}

// ---------------------------------------------------------------------------
// decision tree

std::optional<ClassLabel> decide_label(const TorAlgebra& A, const Invariants& inv) {
  const auto [p, q, r] = inv;
  if (p == 3 && q == 1 && r == 3 && A.m == 3 && A.n == 1) return ClassLabel::C3();
  if (p == 1 && q == 1 && r == 2) return ClassLabel::B();
  if (p == 0 && q == 1 && r >= 2) return ClassLabel::G(r);
  if (p == 3 && q == 0 && r == 0)
    return generic_left_rank(A) <= 2 ? ClassLabel::T() : ClassLabel::H(3, 0);
  if (r == q) return ClassLabel::H(p, q);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// normalization

namespace {

std::vector<Scalar> zero_vec(const Field& f, std::size_t k) {
  return std::vector<Scalar>(k, Scalar::zero(f));
}

bool vec_zero(const std::vector<Scalar>& v) {
  for (const auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

[[noreturn]] void fail(const std::string& msg) { throw Error(Errc::normalization_failed, msg); }

// matrix whose column (i*m+j) is the product e_i e_j
ExactMatrix ee_product_matrix(const TorAlgebra& A) {
  ExactMatrix P(A.field, A.l(), A.m * A.m);
  for (std::size_t i = 0; i < A.m; ++i)
    for (std::size_t j = 0; j < A.m; ++j) P.set_col(i * A.m + j, A.e_times_e(i, j));
  return P;
}

// matrix whose column (i*l+h) is the product e_i f_h
ExactMatrix ef_product_matrix(const TorAlgebra& A) {
  ExactMatrix Q(A.field, A.n, A.m * A.l());
  for (std::size_t i = 0; i < A.m; ++i)
    for (std::size_t h = 0; h < A.l(); ++h) Q.set_col(i * A.l() + h, A.e_times_f(i, h));
  return Q;
}

// the map v -> (action of v on A2), flattened to an (l*n) x m matrix
ExactMatrix a2_action_matrix(const TorAlgebra& A) {
  ExactMatrix W(A.field, A.l() * A.n, A.m);
  for (std::size_t i = 0; i < A.m; ++i)
    for (std::size_t h = 0; h < A.l(); ++h)
      for (std::size_t g = 0; g < A.n; ++g)
        W.at(h * A.n + g, i) = A.e_times_f(i, h)[g];
  return W;
}

// the map v -> (left multiplication v. : A1 -> A2), flattened (m*l) x m
ExactMatrix a1_action_matrix(const TorAlgebra& A) {
  ExactMatrix V(A.field, A.m * A.l(), A.m);
  for (std::size_t i = 0; i < A.m; ++i)
    for (std::size_t j = 0; j < A.m; ++j)
      for (std::size_t h = 0; h < A.l(); ++h) V.at(j * A.l() + h, i) = A.e_times_e(i, j)[h];
  return V;
}

std::vector<Scalar> flatten(const ExactMatrix& M) {
  std::vector<Scalar> v;
  v.reserve(M.rows() * M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) v.push_back(M.at(i, j));
  return v;
}

// deterministic candidate sweep for the special-element search: small-support
// integer vectors with entries in -2..2 (first nonzero scaled to 1), then
// seeded pseudo-random points
class CandidateSweep {
 public:
  CandidateSweep(const Field& f, std::size_t m) : field_(f), m_(m), rng_(0x70524c4b) {}

  std::optional<std::vector<Scalar>> next() {
    ++count_;
    if (count_ > kMaxTries) return std::nullopt;
    // phase 1: single support
    if (phase_ == 0) {
      if (i_ < m_) {
        auto v = zero_vec(field_, m_);
        v[i_++] = Scalar::one(field_);
        return v;
      }
      phase_ = 1;
      i_ = 0;
      j_ = 1;
      vi_ = 0;
    }
    // phase 2: pairs e_i + c e_j, c in {-2,-1,1,2}
    if (phase_ == 1) {
      static const long vals[4] = {-2, -1, 1, 2};
      while (i_ + 1 < m_) {
        if (j_ < m_) {
          if (vi_ < 4) {
            auto v = zero_vec(field_, m_);
            v[i_] = Scalar::one(field_);
            v[j_] = Scalar::of_int(field_, vals[vi_++]);
            if (v[j_].is_zero()) continue;  // collapses in small characteristic
            return v;
          }
          vi_ = 0;
          ++j_;
        } else {
          ++i_;
          j_ = i_ + 1;
        }
      }
      phase_ = 2;
    }
    // phase 3: random, range growing with the attempt count
    auto v = zero_vec(field_, m_);
    long range = 2 + static_cast<long>(count_ / 64);
    for (std::size_t k = 0; k < m_; ++k) {
      if (field_.is_prime_field())
        v[k] = Scalar::of_residue(field_, rng_.below(field_.p));
      else
        v[k] = Scalar::of_int(field_, rng_.int_in(-range, range));
    }
    return v;
  }

 private:
  static constexpr std::size_t kMaxTries = 4096;
  Field field_;
  std::size_t m_;
  SplitMix64 rng_;
  std::size_t count_ = 0;
  int phase_ = 0;
  std::size_t i_ = 0, j_ = 1, vi_ = 0;
};

// greedy columns of `pool` that extend the span of `base`
std::vector<std::vector<Scalar>> extend_basis(const ExactMatrix& base, const ExactMatrix& pool,
                                              std::size_t want) {
  ExactMatrix cur = base;
  std::size_t have = rank(cur);
  std::vector<std::vector<Scalar>> out;
  for (std::size_t c = 0; c < pool.cols() && out.size() < want; ++c) {
    ExactMatrix test = ExactMatrix::hstack(cur, ExactMatrix::from_cols(pool.field(), pool.rows(),
                                                                       {pool.col(c)}));
    if (rank(test) > have) {
      out.push_back(pool.col(c));
      cur = test;
      ++have;
    }
  }
  if (out.size() != want) fail("could not extend basis");
  return out;
}

ExactMatrix cols_matrix(const Field& f, std::size_t rows,
                        const std::vector<std::vector<Scalar>>& cols) {
  return ExactMatrix::from_cols(f, rows, cols);
}

std::vector<Scalar> std_vec(const Field& f, std::size_t dim, std::size_t at) {
  auto v = zero_vec(f, dim);
  v[at] = Scalar::one(f);
  return v;
}

struct NormalizeContext {
  const TorAlgebra& A;
  std::size_t m, l, n;
  const Field& f;

  explicit NormalizeContext(const TorAlgebra& a)
      : A(a), m(a.m), l(a.l()), n(a.n), f(a.field) {}
};

BasisChange normalize_H(const TorAlgebra& A, std::size_t p, std::size_t q) {
  NormalizeContext cx(A);
  const auto [m, l, n] = std::tuple(cx.m, cx.l, cx.n);
  const Field& f = cx.f;
  if (p + 1 > m || q > n || p + q > l) fail("H(p,q) does not fit dimensions");

  if (p == 0 && q == 0) {
    // zero tables; any basis realizes H(0,0)
    ExactMatrix P = ee_product_matrix(A), Q = ef_product_matrix(A);
    if (!P.is_zero() || !Q.is_zero()) fail("H(0,0) requires zero products");
    return BasisChange::identity(f, m, n);
  }

  ExactMatrix P = ee_product_matrix(A);
  ExactMatrix Q = ef_product_matrix(A);

  // special element: left-mult rank p with image A1.A1, A2-action rank q with
  // image A1.A2
  CandidateSweep sweep(f, m);
  std::vector<Scalar> a;
  ExactMatrix L(f, 0, 0), M2(f, 0, 0);
  for (;;) {
    auto cand = sweep.next();
    if (!cand) {
      std::string hint = f.is_prime_field()
                             ? " (field may be too small; re-run over Q or a larger prime)"
                             : "";
      fail("no special element found" + hint);
    }
    ExactMatrix Lc = left_mult_matrix(A, *cand);
    if (rank(Lc) != p) continue;
    if (rank(ExactMatrix::hstack(Lc, P)) != p) continue;  // image == span(A1.A1)
    ExactMatrix M2c = a2_mult_matrix(A, *cand);
    if (rank(M2c) != q) continue;
    if (rank(ExactMatrix::hstack(M2c, Q)) != q) continue;  // image == span(A1.A2)
    a = *cand;
    L = Lc;
    M2 = M2c;
    break;
  }

  // partners: a complement of K = ker(a.) adjusted so all their products vanish
  ExactMatrix K = kernel_basis(L);
  std::vector<std::vector<Scalar>> partners;
  if (p > 0) {
    auto idx = complement_columns(K);
    if (idx.size() != p) fail("kernel complement has wrong dimension");
    for (std::size_t i : idx) partners.push_back(std_vec(f, m, i));
    if (q >= 1) {
      // c_i . (-) on A2 must be a multiple of a . (-); subtract that multiple of a
      auto flat_a = flatten(M2);
      ExactMatrix Ma(f, flat_a.size(), 1);
      Ma.set_col(0, flat_a);
      for (auto& c : partners) {
        auto flat_c = flatten(a2_mult_matrix(A, c));
        auto mu = solve(Ma, flat_c);
        if (!mu) fail("partner A2-action is not proportional to the special element's");
        for (std::size_t i = 0; i < m; ++i) c[i] = c[i] - (*mu)[0] * a[i];
      }
    } else if (p >= 2) {
      // read the special component off the partner products
      ExactMatrix Fpart(f, l, p);
      for (std::size_t k = 0; k < p; ++k) Fpart.set_col(k, A.mult_ee(a, partners[k]));
      std::vector<Scalar> mu(p, Scalar::zero(f));
      for (std::size_t i = 0; i < p; ++i) {
        std::size_t j = (i == 0) ? 1 : 0;
        auto sig = solve(Fpart, A.mult_ee(partners[i], partners[j]));
        if (!sig) fail("partner products leave the image of the special element");
        mu[i] = (*sig)[j];
      }
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t k = 0; k < m; ++k)
          partners[i][k] = partners[i][k] - mu[i] * a[k];
    }
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j)
        if (!vec_zero(A.mult_ee(partners[i], partners[j]))) fail("partner products persist");
  }

  // inert slots: kernel of a. with zero action on A2 (and on partners when q=0)
  ExactMatrix K0(f, 0, 0);
  if (q >= 1) {
    ExactMatrix W = a2_action_matrix(A);
    ExactMatrix stacked(f, L.rows() + W.rows(), m);
    for (std::size_t i = 0; i < L.rows(); ++i)
      for (std::size_t j = 0; j < m; ++j) stacked.at(i, j) = L.at(i, j);
    for (std::size_t i = 0; i < W.rows(); ++i)
      for (std::size_t j = 0; j < m; ++j) stacked.at(L.rows() + i, j) = W.at(i, j);
    K0 = kernel_basis(stacked);
  } else {
    std::vector<ExactMatrix> blocks{L};
    for (const auto& u : partners) blocks.push_back(left_mult_matrix(A, u));
    std::size_t rows = 0;
    for (const auto& b : blocks) rows += b.rows();
    ExactMatrix stacked(f, rows, m);
    std::size_t off = 0;
    for (const auto& b : blocks) {
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < m; ++j) stacked.at(off + i, j) = b.at(i, j);
      off += b.rows();
    }
    K0 = kernel_basis(stacked);
  }
  if (K0.cols() != m - p - 1) fail("inert subspace has unexpected dimension");

  // e-basis: partners, special element, inert slots
  std::vector<std::vector<Scalar>> e_cols = partners;
  e_cols.push_back(a);
  for (std::size_t c = 0; c < K0.cols(); ++c) e_cols.push_back(K0.col(c));
  ExactMatrix g1 = cols_matrix(f, m, e_cols);

  // f-basis: images of partners, then q vectors with independent a-images,
  // then the rest of ker(a. : A2 -> A3)
  std::vector<std::vector<Scalar>> f_cols;
  for (std::size_t k = 0; k < p; ++k) f_cols.push_back(A.mult_ee(a, partners[k]));
  std::vector<std::vector<Scalar>> g_cols;
  {
    ExactMatrix img(f, n, 0);
    for (std::size_t h = 0; h < l && g_cols.size() < q; ++h) {
      auto im = M2.col(h);
      ExactMatrix test = ExactMatrix::hstack(img, cols_matrix(f, n, {im}));
      if (rank(test) > static_cast<std::size_t>(g_cols.size())) {
        f_cols.push_back(std_vec(f, l, h));
        g_cols.push_back(im);
        img = test;
      }
    }
    if (g_cols.size() != q) fail("could not pick f-partners with independent images");
  }
  {
    ExactMatrix kerM2 = kernel_basis(M2);
    ExactMatrix base = cols_matrix(f, l, f_cols);
    for (auto& v : extend_basis(base, kerM2, l - p - q)) f_cols.push_back(v);
  }
  ExactMatrix g2 = cols_matrix(f, l, f_cols);

  std::vector<std::vector<Scalar>> g3_cols = g_cols;
  {
    ExactMatrix base = cols_matrix(f, n, g3_cols);
    for (std::size_t i : complement_columns(base)) g3_cols.push_back(std_vec(f, n, i));
  }
  ExactMatrix g3 = cols_matrix(f, n, g3_cols);
  return BasisChange{g1, g2, g3};
}

BasisChange normalize_C3(const TorAlgebra& A) {
  NormalizeContext cx(A);
  const Field& f = cx.f;
  if (cx.m != 3 || cx.n != 1) fail("C(3) requires (m,n) = (3,1)");
  auto e1 = std_vec(f, 3, 0), e2 = std_vec(f, 3, 1), e3 = std_vec(f, 3, 2);
  std::vector<std::vector<Scalar>> f_cols{A.mult_ee(e2, e3), A.mult_ee(e3, e1),
                                          A.mult_ee(e1, e2)};
  ExactMatrix g2 = cols_matrix(f, 3, f_cols);
  if (rank(g2) != 3) fail("C(3) pair products are dependent");
  auto gvec = A.mult_ef(e1, f_cols[0]);
  if (vec_zero(gvec)) fail("C(3) socle product vanishes");
  ExactMatrix g3 = cols_matrix(f, 1, {gvec});
  return BasisChange{ExactMatrix::identity(f, 3), g2, g3};
}

BasisChange normalize_T(const TorAlgebra& A) {
  NormalizeContext cx(A);
  const auto [m, l, n] = std::tuple(cx.m, cx.l, cx.n);
  const Field& f = cx.f;
  if (!ef_product_matrix(A).is_zero()) fail("T requires zero A1.A2 products");
  ExactMatrix V = a1_action_matrix(A);
  ExactMatrix rad = kernel_basis(V);
  if (rad.cols() != m - 3) fail("T radical has unexpected dimension");
  auto idx = complement_columns(rad);
  if (idx.size() != 3) fail("T support has unexpected dimension");
  auto c1 = std_vec(f, m, idx[0]), c2 = std_vec(f, m, idx[1]), c3 = std_vec(f, m, idx[2]);
  std::vector<std::vector<Scalar>> e_cols{c1, c2, c3};
  for (std::size_t c = 0; c < rad.cols(); ++c) e_cols.push_back(rad.col(c));
  ExactMatrix g1 = cols_matrix(f, m, e_cols);
  std::vector<std::vector<Scalar>> f_cols{A.mult_ee(c2, c3), A.mult_ee(c3, c1),
                                          A.mult_ee(c1, c2)};
  ExactMatrix base = cols_matrix(f, l, f_cols);
  if (rank(base) != 3) fail("T pair products are dependent");
  for (std::size_t i : complement_columns(base)) f_cols.push_back(std_vec(f, l, i));
  ExactMatrix g2 = cols_matrix(f, l, f_cols);
  return BasisChange{g1, g2, ExactMatrix::identity(f, n)};
}

BasisChange normalize_B(const TorAlgebra& A) {
  NormalizeContext cx(A);
  const auto [m, l, n] = std::tuple(cx.m, cx.l, cx.n);
  const Field& f = cx.f;
  ExactMatrix V = a1_action_matrix(A);
  ExactMatrix W = a2_action_matrix(A);
  ExactMatrix stacked(f, V.rows() + W.rows(), m);
  for (std::size_t i = 0; i < V.rows(); ++i)
    for (std::size_t j = 0; j < m; ++j) stacked.at(i, j) = V.at(i, j);
  for (std::size_t i = 0; i < W.rows(); ++i)
    for (std::size_t j = 0; j < m; ++j) stacked.at(V.rows() + i, j) = W.at(i, j);
  ExactMatrix rad = kernel_basis(stacked);
  if (rad.cols() != m - 2) fail("B radical has unexpected dimension");
  auto idx = complement_columns(rad);
  auto c1 = std_vec(f, m, idx[0]), c2 = std_vec(f, m, idx[1]);
  auto f3 = A.mult_ee(c1, c2);
  if (vec_zero(f3)) fail("B support product vanishes");

  ExactMatrix M1 = a2_mult_matrix(A, c1), M2 = a2_mult_matrix(A, c2);
  ExactMatrix ker2 = kernel_basis(M2), ker1 = kernel_basis(M1);
  std::vector<Scalar> f1, g1v;
  for (std::size_t c = 0; c < ker2.cols(); ++c) {
    auto v = ker2.col(c);
    auto img = M1.apply(v);
    if (!vec_zero(img)) {
      f1 = v;
      g1v = img;
      break;
    }
  }
  if (f1.empty()) fail("no f-partner for the first B support vector");
  std::vector<Scalar> f2;
  {
    ExactMatrix G1(f, n, 1);
    G1.set_col(0, g1v);
    for (std::size_t c = 0; c < ker1.cols(); ++c) {
      auto v = ker1.col(c);
      auto img = M2.apply(v);
      if (vec_zero(img)) continue;
      auto lam = solve(G1, img);
      if (!lam) fail("B socle images are not collinear");
      Scalar s = (*lam)[0].inverse();
      f2 = v;
      for (auto& x : f2) x *= s;
      break;
    }
    if (f2.empty()) fail("no f-partner for the second B support vector");
  }
  // remaining f-basis from the kernel of delta_2
  ExactMatrix R(f, cx.m * n, l);
  for (std::size_t h = 0; h < l; ++h)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t g = 0; g < n; ++g) R.at(i * n + g, h) = A.e_times_f(i, h)[g];
  ExactMatrix kerR = kernel_basis(R);
  std::vector<std::vector<Scalar>> f_cols{f1, f2, f3};
  ExactMatrix base = cols_matrix(f, l, f_cols);
  if (rank(base) != 3) fail("B f-frame is dependent");
  for (auto& v : extend_basis(base, kerR, l - 3)) f_cols.push_back(v);
  ExactMatrix g2 = cols_matrix(f, l, f_cols);

  std::vector<std::vector<Scalar>> e_cols{c1, c2};
  for (std::size_t c = 0; c < rad.cols(); ++c) e_cols.push_back(rad.col(c));
  ExactMatrix g1 = cols_matrix(f, m, e_cols);

  std::vector<std::vector<Scalar>> g3_cols{g1v};
  ExactMatrix gbase = cols_matrix(f, n, g3_cols);
  for (std::size_t i : complement_columns(gbase)) g3_cols.push_back(std_vec(f, n, i));
  ExactMatrix g3 = cols_matrix(f, n, g3_cols);
  return BasisChange{g1, g2, g3};
}

BasisChange normalize_G(const TorAlgebra& A, std::size_t r) {
  NormalizeContext cx(A);
  const auto [m, l, n] = std::tuple(cx.m, cx.l, cx.n);
  const Field& f = cx.f;
  if (!ee_product_matrix(A).is_zero()) fail("G requires zero A1.A1 products");
  // the one-dimensional product space
  std::vector<Scalar> gvec;
  for (std::size_t i = 0; i < m && gvec.empty(); ++i)
    for (std::size_t h = 0; h < l && gvec.empty(); ++h)
      if (!vec_zero(A.e_times_f(i, h))) gvec = A.e_times_f(i, h);
  if (gvec.empty()) fail("G requires a nonzero product");
  std::size_t pos = 0;
  while (gvec[pos].is_zero()) ++pos;

  // pairing e_i x f_h -> coefficient against gvec
  ExactMatrix Pm(f, m, l);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t h = 0; h < l; ++h) {
      const auto& v = A.e_times_f(i, h);
      Scalar c = v[pos] / gvec[pos];
      for (std::size_t g = 0; g < n; ++g)
        if (!(v[g] == c * gvec[g])) fail("A1.A2 products are not collinear");
      Pm.at(i, h) = c;
    }

  // two-sided reduction of the pairing to I_r (+) 0
  ExactMatrix E = ExactMatrix::identity(f, m);
  ExactMatrix F = ExactMatrix::identity(f, l);
  ExactMatrix Mp = Pm;
  std::size_t k = 0;
  for (;;) {
    std::size_t pi = m, pj = l;
    for (std::size_t i = k; i < m && pi == m; ++i)
      for (std::size_t j = k; j < l; ++j)
        if (!Mp.at(i, j).is_zero()) {
          pi = i;
          pj = j;
          break;
        }
    if (pi == m) break;
    for (std::size_t j = 0; j < l; ++j) std::swap(Mp.at(k, j), Mp.at(pi, j));
    for (std::size_t i = 0; i < m; ++i) std::swap(E.at(i, k), E.at(i, pi));
    for (std::size_t i = 0; i < m; ++i) std::swap(Mp.at(i, k), Mp.at(i, pj));
    for (std::size_t i = 0; i < l; ++i) std::swap(F.at(i, k), F.at(i, pj));
    Scalar inv = Mp.at(k, k).inverse();
    for (std::size_t j = 0; j < l; ++j) Mp.at(k, j) *= inv;
    for (std::size_t i = 0; i < m; ++i) E.at(i, k) *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == k || Mp.at(i, k).is_zero()) continue;
      Scalar c = Mp.at(i, k);
      for (std::size_t j = 0; j < l; ++j) Mp.at(i, j) -= c * Mp.at(k, j);
      for (std::size_t rr = 0; rr < m; ++rr) E.at(rr, i) -= c * E.at(rr, k);
    }
    for (std::size_t j = 0; j < l; ++j) {
      if (j == k || Mp.at(k, j).is_zero()) continue;
      Scalar c = Mp.at(k, j);
      for (std::size_t i = 0; i < m; ++i) Mp.at(i, j) -= c * Mp.at(i, k);
      for (std::size_t rr = 0; rr < l; ++rr) F.at(rr, j) -= c * F.at(rr, k);
    }
    ++k;
  }
  if (k != r) fail("G pairing rank mismatch");

  std::vector<std::vector<Scalar>> g3_cols{gvec};
  ExactMatrix gbase = cols_matrix(f, n, g3_cols);
  for (std::size_t i : complement_columns(gbase)) g3_cols.push_back(std_vec(f, n, i));
  return BasisChange{E, F, cols_matrix(f, n, g3_cols)};
}

}  // namespace

std::pair<TorAlgebra, BasisChange> normalize(const TorAlgebra& A) {
  Invariants inv = invariants_pqr(A);
  auto label = decide_label(A, inv);
  if (!label) fail("no (p,q,r) row matches: (" + std::to_string(inv.p) + "," +
                   std::to_string(inv.q) + "," + std::to_string(inv.r) + ")");
  BasisChange B;
  switch (label->kind) {
    case ClassLabel::Kind::C3:
      B = normalize_C3(A);
      break;
    case ClassLabel::Kind::B:
      B = normalize_B(A);
      break;
    case ClassLabel::Kind::G:
      B = normalize_G(A, label->r);
      break;
    case ClassLabel::Kind::T:
      B = normalize_T(A);
      break;
    case ClassLabel::Kind::H:
      B = normalize_H(A, label->p, label->q);
      break;
  }
  TorAlgebra N = change_basis(A, B);
  TorAlgebra expect = normal_form_table(*label, A.m, A.n, A.field);
  if (!(N == expect))
    fail("constructed bases do not realize the " + label->str() + " normal form");
  return {N, B};
}

Classification classify(const TorAlgebra& A) {
  ValidationReport rep = validate(A);
  if (!rep.ok())
    throw Error(Errc::unclassifiable, "table is not a graded-commutative algebra: " +
                                          rep.violations.front());
  Invariants inv = invariants_pqr(A);
  auto label = decide_label(A, inv);
  if (!label)
    throw Error(Errc::unclassifiable,
                "invariants (p,q,r) = (" + std::to_string(inv.p) + "," + std::to_string(inv.q) +
                    "," + std::to_string(inv.r) + ") match no class");
  std::pair<TorAlgebra, BasisChange> res{TorAlgebra{}, BasisChange{}};
  try {
    res = normalize(A);
  } catch (const Error& e) {
    if (e.code() == Errc::normalization_failed)
      throw Error(Errc::unclassifiable, std::string("normalization failed: ") + e.what());
    throw;
  }
  Classification out{*label, A.m, A.n, inv, res.second, res.first};
  return out;
}

}  // namespace torlink
