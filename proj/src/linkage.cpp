#include "torlink/linkage.hpp"

#include <json.hpp>
#include <map>

namespace torlink {

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::BGT_A: return "BGT_A";
    case Regime::BGT_B: return "BGT_B";
    case Regime::BGT_C: return "BGT_C";
    case Regime::BGT_D: return "BGT_D";
    case Regime::BGT_E: return "BGT_E";
    case Regime::H0: return "H0";
    case Regime::H1: return "H1";
    case Regime::H2: return "H2";
  }
  return "?";
}

std::optional<Regime> regime_from_name(const std::string& s) {
  for (Regime r : {Regime::BGT_A, Regime::BGT_B, Regime::BGT_C, Regime::BGT_D, Regime::BGT_E,
                   Regime::H0, Regime::H1, Regime::H2})
    if (s == regime_name(r)) return r;
  return std::nullopt;
}

bool regime_applies(const Classification& c, Regime r) {
  using K = ClassLabel::Kind;
  switch (r) {
    case Regime::BGT_A: return c.label.kind == K::B;
    case Regime::BGT_B: return c.label.kind == K::G;
    case Regime::BGT_C: return c.label.kind == K::T && c.m >= 5;
    case Regime::BGT_D: return c.label.kind == K::T && c.m >= 4;
    case Regime::BGT_E: return c.label.kind == K::T;
    case Regime::H0: return c.label.kind == K::H && c.m >= c.label.p + 3;
    case Regime::H1: return c.label.kind == K::H && c.label.p >= 1 && c.m >= c.label.p + 2;
    case Regime::H2: return c.label.kind == K::H && c.label.p >= 2 && c.m >= c.label.p + 1;
  }
  return false;
}

void require_regime(const Classification& c, Regime r) {
  if (!regime_applies(c, r))
    throw Error(Errc::regime_mismatch, std::string("regime ") + regime_name(r) +
                                           " does not apply to class " + c.label.str() + " with m=" +
                                           std::to_string(c.m));
}

namespace {

// permutations (0-based, old index -> new index) taking the normal form to the
// regime layout
struct Relabel {
  std::vector<std::size_t> e, f;
};

Relabel regime_relabel(const Classification& c, Regime r) {
  const std::size_t m = c.m, l = c.m + c.n - 1;
  Relabel out;
  out.e.resize(m);
  out.f.resize(l);
  for (std::size_t i = 0; i < m; ++i) out.e[i] = i;
  for (std::size_t i = 0; i < l; ++i) out.f[i] = i;
  auto fill_rest = [](std::vector<std::size_t>& sigma, const std::vector<bool>& src_used,
                      std::vector<bool>& dst_used) {
    std::size_t next = 0;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      if (src_used[i]) continue;
      while (dst_used[next]) ++next;
      sigma[i] = next;
      dst_used[next] = true;
    }
  };
  switch (r) {
    case Regime::BGT_A:
    case Regime::BGT_B:
    case Regime::BGT_E:
      return out;  // the normal form is already the layout
    case Regime::BGT_C: {
      // e1e2=f3 e2e3=f1 e3e1=f2  ->  e3e4=f5 e4e5=f3 e5e3=f4
      std::vector<bool> eu(m, false), ed(m, false), fu(l, false), fd(l, false);
      out.e[0] = 2; out.e[1] = 3; out.e[2] = 4;
      eu[0] = eu[1] = eu[2] = true; ed[2] = ed[3] = ed[4] = true;
      out.f[0] = 2; out.f[1] = 3; out.f[2] = 4;
      fu[0] = fu[1] = fu[2] = true; fd[2] = fd[3] = fd[4] = true;
      fill_rest(out.e, eu, ed);
      fill_rest(out.f, fu, fd);
      return out;
    }
    case Regime::BGT_D: {
      // e1e2=f3 e2e3=f1 e3e1=f2  ->  e2e3=f4 e3e4=f3 e4e2=f2
      std::vector<bool> eu(m, false), ed(m, false), fu(l, false), fd(l, false);
      out.e[0] = 1; out.e[1] = 2; out.e[2] = 3;
      eu[0] = eu[1] = eu[2] = true; ed[1] = ed[2] = ed[3] = true;
      out.f[2] = 3; out.f[0] = 2; out.f[1] = 1;
      fu[0] = fu[1] = fu[2] = true; fd[1] = fd[2] = fd[3] = true;
      fill_rest(out.e, eu, ed);
      fill_rest(out.f, fu, fd);
      return out;
    }
    case Regime::H0:
    case Regime::H1:
    case Regime::H2: {
      const std::size_t p = c.label.p, q = c.label.q;
      const std::size_t overlap = r == Regime::H0 ? 0 : r == Regime::H1 ? 1 : 2;
      // special element e_{p+1} -> slot 1; partners e_i -> slots (4-overlap)..;
      // f_i -> f_{q+i} (i <= p); f_{p+j} -> f_j (j <= q)
      std::vector<bool> eu(m, false), ed(m, false), fu(l, false), fd(l, false);
      out.e[p] = 0;
      eu[p] = true;
      ed[0] = true;
      for (std::size_t i = 0; i < p; ++i) {
        out.e[i] = (3 - overlap) + i;
        eu[i] = true;
        ed[(3 - overlap) + i] = true;
      }
      for (std::size_t i = 0; i < p; ++i) {
        out.f[i] = q + i;
        fu[i] = true;
        fd[q + i] = true;
      }
      for (std::size_t j = 0; j < q; ++j) {
        out.f[p + j] = j;
        fu[p + j] = true;
        fd[j] = true;
      }
      fill_rest(out.e, eu, ed);
      fill_rest(out.f, fu, fd);
      return out;
    }
  }
  return out;
}

BasisChange relabel_to_basis_change(const Relabel& rl, const Field& f, std::size_t m,
                                    std::size_t n) {
  const std::size_t l = m + n - 1;
  ExactMatrix g1(f, m, m), g2(f, l, l), g3 = ExactMatrix::identity(f, n);
  // column s holds the old basis vector landing in slot s
  for (std::size_t i = 0; i < m; ++i) g1.at(i, rl.e[i]) = Scalar::one(f);
  for (std::size_t i = 0; i < l; ++i) g2.at(i, rl.f[i]) = Scalar::one(f);
  return BasisChange{g1, g2, g3};
}

bool vec_zero(const std::vector<Scalar>& v) {
  for (const auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

}  // namespace

LinkedPresentation link_table(const Classification& c, Regime r) {
  require_regime(c, r);
  const std::size_t m = c.m, n = c.n, l = m + n - 1;
  const Field& fld = c.normalized.field;
  {
    TorAlgebra expect = normal_form_table(c.label, m, n, fld);
    if (!(c.normalized == expect))
      throw Error(Errc::not_normalized, "link_table consumes normalized tables only");
  }
  TorAlgebra T = change_basis(c.normalized, relabel_to_basis_change(regime_relabel(c, r), fld, m, n));

  // (rank): F_{l+1..l+3} and G_{1..3} die. (split): a nonzero product
  // e_i e_j = +-f_k with i,j <= 3 kills the pair E_{n+h}, F_k.
  std::vector<bool> koszul_live(3, true);  // E_{n+1..n+3}
  std::vector<bool> f_live(l, true);
  std::size_t splits = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      const auto& v = T.e_times_e(i, j);
      if (vec_zero(v)) continue;
      std::size_t k = l, nz = 0;
      for (std::size_t h = 0; h < l; ++h)
        if (!v[h].is_zero()) {
          k = h;
          ++nz;
        }
      if (nz != 1 || !(v[k] == Scalar::one(fld) || v[k] == -Scalar::one(fld)))
        throw Error(Errc::not_normalized, "slot product is not a signed basis vector");
      std::size_t hkill = 3 - i - j;  // the complementary index in {0,1,2}
      koszul_live[hkill] = false;
      f_live[k] = false;
      ++splits;
    }

  LinkedPresentation lp;
  lp.splits = splits;
  lp.m_linked = n + 3 - splits;
  lp.n_linked = m - 3;
  for (std::size_t j = 1; j <= n; ++j) lp.surviving_E.push_back(j);
  for (std::size_t i = 0; i < 3; ++i)
    if (koszul_live[i]) lp.surviving_E.push_back(n + i + 1);
  for (std::size_t h = 0; h < l; ++h)
    if (f_live[h]) lp.surviving_F.push_back(h + 1);
  for (std::size_t h = 4; h <= m; ++h) lp.surviving_G.push_back(h);

  // (11): E_{n+i} E_j = sum_h g_j*(e_i f_h) F_h over surviving F
  std::vector<std::vector<Scalar>> ee_vals;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!koszul_live[i]) continue;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Scalar> val(l, Scalar::zero(fld));
      bool nonzero = false;
      for (std::size_t h = 0; h < l; ++h) {
        const Scalar& cdot = T.e_times_f(i, h)[j];
        if (cdot.is_zero()) continue;
        if (!f_live[h])
          throw Error(Errc::not_normalized, "product hits a split-killed F generator");
        val[h] = cdot;
        nonzero = true;
      }
      if (nonzero) {
        ee_vals.push_back(val);
        lp.known_products.push_back({n + i + 1, 'E', j + 1, std::move(val)});
      }
    }
  }
  // (12): E_{n+i} F_j = sum_{h>=4} f_j*(e_i e_h) G_h
  std::vector<std::vector<Scalar>> ef_vals;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!koszul_live[i]) continue;
    for (std::size_t j = 0; j < l; ++j) {
      if (!f_live[j]) continue;
      std::vector<Scalar> val(m, Scalar::zero(fld));
      bool nonzero = false;
      for (std::size_t h = 3; h < m; ++h) {
        const Scalar& cdot = T.e_times_e(i, h)[j];
        if (cdot.is_zero()) continue;
        val[h] = cdot;
        nonzero = true;
      }
      if (nonzero) {
        ef_vals.push_back(val);
        lp.known_products.push_back({n + i + 1, 'F', j + 1, std::move(val)});
      }
    }
  }

  auto rank_of = [&](const std::vector<std::vector<Scalar>>& rows, std::size_t width) {
    if (rows.empty()) return std::size_t{0};
    ExactMatrix M(fld, rows.size(), width);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < width; ++j) M.at(i, j) = rows[i][j];
    return rank(M);
  };
  lp.p_lower = rank_of(ee_vals, l);
  lp.q_lower = rank_of(ef_vals, m);
  return lp;
}

LinkedBetti linked_betti_ranks(std::size_t m, std::size_t n, std::size_t rank_phi1,
                               std::size_t rank_phi2) {
  const std::size_t l = m + n - 1;
  if (rank_phi1 > 3 || rank_phi2 > 3)
    throw Error(Errc::bad_input, "linked_betti_ranks: ranks are at most 3");
  LinkedBetti b;
  b.b1 = n + 3 - rank_phi2;  // rank(phi3 (x) k) = 0
  b.b2 = l + 3 - rank_phi2 - rank_phi1;
  b.b3 = m - rank_phi1;
  return b;
}

std::pair<std::size_t, std::size_t> linked_betti(std::size_t m, std::size_t n, std::size_t splits,
                                                 bool minimal_gens) {
  if (splits > 3) throw Error(Errc::bad_input, "linked_betti: splits <= 3");
  if (!minimal_gens)
    throw Error(Errc::bad_input,
                "linked_betti: general case needs explicit ranks; use linked_betti_ranks");
  LinkedBetti b = linked_betti_ranks(m, n, 3, splits);
  return {b.b1, b.b3};
}

IdealSpec link_ideal(const IdealSpec& I, const std::array<Polynomial, 3>& x) {
  GroebnerBasis GI = buchberger(I);
  for (const auto& xi : x)
    if (!contains(GI, xi))
      throw Error(Errc::containment_violation, "link_ideal: sequence is not inside the ideal");
  if (!is_regular_sequence(x[0], x[1], x[2]))
    throw Error(Errc::bad_input, "link_ideal: sequence is not regular");
  IdealSpec X{I.field, {x[0], x[1], x[2]}};
  IdealSpec B = colon_ideal(X, I);
  GroebnerBasis GB = buchberger(B);
  if (is_unit_ideal(GB))
    throw Error(Errc::proper_link_required, "link_ideal: (x : I) is the unit ideal");
  return B;
}

// ---------------------------------------------------------------------------
// proposition clauses

namespace {

struct ClauseSink {
  std::string prefix;
  Verdict* v;

  void require(bool ok, const std::string& clause, const std::string& detail) {
    if (!ok) v->violations.push_back(prefix + clause + ": " + detail);
  }
};

std::string sz(std::size_t v) { return std::to_string(v); }

}  // namespace

Verdict check_proposition(const Classification& A, const Classification& B, Regime r) {
  require_regime(A, r);
  Verdict v;
  ClauseSink s{std::string("link") + (r == Regime::H0   ? "H0"
                                      : r == Regime::H1 ? "H1"
                                      : r == Regime::H2 ? "H2"
                                                        : "BGT") +
                   "",
               &v};
  using K = ClassLabel::Kind;
  const std::size_t m = A.m, n = A.n;
  const std::size_t p = A.inv.p, q = A.inv.q;
  const std::size_t mp = B.m, np = B.n;
  const std::size_t pp = B.inv.p, qp = B.inv.q, rp = B.inv.r;
  auto is_H = [&]() { return B.label.kind == K::H; };

  switch (r) {
    case Regime::BGT_A:
      s.require(mp == n + 2, "(a):m'", "m'=" + sz(mp) + " expected n+2=" + sz(n + 2));
      s.require(np == m - 3, "(a):n'", "n'=" + sz(np) + " expected m-3=" + sz(m - 3));
      s.require(pp >= 2, "(a):p'", "p'=" + sz(pp) + " expected >= 2");
      s.require(is_H(), "(a):class", "expected class H, got " + B.label.str());
      break;
    case Regime::BGT_B: {
      std::size_t bound = std::min<std::size_t>(A.inv.r, 3);
      s.require(mp == n + 3, "(b):m'", "m'=" + sz(mp) + " expected n+3=" + sz(n + 3));
      s.require(np == m - 3, "(b):n'", "n'=" + sz(np) + " expected m-3=" + sz(m - 3));
      s.require(pp >= bound, "(b):p'", "p'=" + sz(pp) + " expected >= min(r,3)=" + sz(bound));
      s.require(is_H(), "(b):class", "expected class H, got " + B.label.str());
      break;
    }
    case Regime::BGT_C:
      s.require(mp == n + 3, "(c):m'", "m'=" + sz(mp) + " expected n+3=" + sz(n + 3));
      s.require(np == m - 3, "(c):n'", "n'=" + sz(np) + " expected m-3=" + sz(m - 3));
      s.require(qp >= 2, "(c):q'", "q'=" + sz(qp) + " expected >= 2");
      s.require(is_H(), "(c):class", "expected class H, got " + B.label.str());
      break;
    case Regime::BGT_D:
      s.require(mp == n + 2, "(d):m'", "m'=" + sz(mp) + " expected n+2=" + sz(n + 2));
      s.require(np == m - 3, "(d):n'", "n'=" + sz(np) + " expected m-3=" + sz(m - 3));
      s.require(qp == 1, "(d):q'", "q'=" + sz(qp) + " expected 1");
      s.require(rp >= 2, "(d):r'", "r'=" + sz(rp) + " expected >= 2");
      s.require(B.label.kind == K::B || B.label.kind == K::G, "(d):class",
                "expected class B or G, got " + B.label.str());
      break;
    case Regime::BGT_E:
      s.require(mp == n, "(e):m'", "m'=" + sz(mp) + " expected n=" + sz(n));
      s.require(np == m - 3, "(e):n'", "n'=" + sz(np) + " expected m-3=" + sz(m - 3));
      break;
    case Regime::H0:
      s.require(mp == n + 3, ":m'", "m'=" + sz(mp) + " expected n+3=" + sz(n + 3));
      s.require(np == m - 3, ":n'", "n'=" + sz(np) + " expected m-3=" + sz(m - 3));
      s.require(pp >= q, ":p'>=q", "p'=" + sz(pp) + " q=" + sz(q));
      s.require(qp >= p, ":q'>=p", "q'=" + sz(qp) + " p=" + sz(p));
      if (p >= 1) s.require(pp == q, "(a)", "p'=" + sz(pp) + " expected q=" + sz(q));
      if (p >= 2)
        s.require(is_H() && B.label.p == q, "(b)",
                  "expected class H(q,.) = H(" + sz(q) + ",.), got " + B.label.str());
      if (q >= 2) s.require(qp == p, "(c)", "q'=" + sz(qp) + " expected p=" + sz(p));
      if (q >= 3)
        s.require(is_H() && B.label.q == p, "(d)",
                  "expected class H(.,p) = H(.," + sz(p) + "), got " + B.label.str());
      if (q == 1)
        s.require(B.label.kind == K::B || is_H(), "(e)",
                  "expected class B or H, got " + B.label.str());
      if (q == 1 && p == 0) s.require(is_H(), "(f)", "expected class H, got " + B.label.str());
      if (B.label.kind == K::G)
        s.require(rp <= mp - 2, "(g)", "r'=" + sz(rp) + " expected <= m'-2=" + sz(mp - 2));
      break;
    case Regime::H1:
      s.require(mp == n + 2, ":m'", "m'=" + sz(mp) + " expected n+2=" + sz(n + 2));
      s.require(np == m - 3, ":n'", "n'=" + sz(np) + " expected m-3=" + sz(m - 3));
      s.require(pp >= q, ":p'>=q", "p'=" + sz(pp) + " q=" + sz(q));
      s.require(qp + 1 >= p, ":q'>=p-1", "q'=" + sz(qp) + " p=" + sz(p));
      if (p >= 2) s.require(pp == q, "(a)", "p'=" + sz(pp) + " expected q=" + sz(q));
      if (p >= 3)
        s.require(is_H() && B.label.p == q, "(b)",
                  "expected class H(q,.), got " + B.label.str());
      if (q >= 2) s.require(qp == p - 1, "(c)", "q'=" + sz(qp) + " expected p-1=" + sz(p - 1));
      if (q >= 3)
        s.require(is_H() && B.label.q == p - 1, "(d)",
                  "expected class H(.,p-1), got " + B.label.str());
      if (q == 1)
        s.require(B.label.kind == K::B || is_H(), "(e)",
                  "expected class B or H, got " + B.label.str());
      if (q == 1 && p == 1) s.require(is_H(), "(f)", "expected class H, got " + B.label.str());
      if (n == 2 && pp == 3)
        s.require(A.label == ClassLabel::H(1, 2) && B.label.kind == K::T, "(g)",
                  "expected before H(1,2) and after T, got " + A.label.str() + " -> " +
                      B.label.str());
      break;
    case Regime::H2:
      s.require(mp == n + 1, ":m'", "m'=" + sz(mp) + " expected n+1=" + sz(n + 1));
      s.require(np == m - 3, ":n'", "n'=" + sz(np) + " expected m-3=" + sz(m - 3));
      s.require(pp >= q, ":p'>=q", "p'=" + sz(pp) + " q=" + sz(q));
      s.require(qp + 2 >= p, ":q'>=p-2", "q'=" + sz(qp) + " p=" + sz(p));
      if (n == 2) {
        s.require(q == 2, ":n2-q", "q=" + sz(q) + " expected 2 when n=2");
        s.require(B.label == ClassLabel::C3(), ":n2-ci",
                  "expected complete intersection, got " + B.label.str());
      }
      if (m >= 5 || n >= 3) {
        if (p >= 3) s.require(pp == q, "(a)", "p'=" + sz(pp) + " expected q=" + sz(q));
        if (p >= 4)
          s.require(is_H() && B.label.p == q, "(b)",
                    "expected class H(q,.), got " + B.label.str());
        if (q >= 2) s.require(qp == p - 2, "(c)", "q'=" + sz(qp) + " expected p-2=" + sz(p - 2));
        if (q >= 3)
          s.require(is_H() && B.label.q == p - 2, "(d)",
                    "expected class H(.,p-2), got " + B.label.str());
        if (q == 1)
          s.require(B.label.kind == K::B || is_H(), "(e)",
                    "expected class B or H, got " + B.label.str());
        if (q == 1 && p == 2) s.require(is_H(), "(f)", "expected class H, got " + B.label.str());
      }
      break;
  }
  return v;
}

std::optional<Regime> preferred_regime(const Classification& c) {
  using K = ClassLabel::Kind;
  switch (c.label.kind) {
    case K::C3:
      return std::nullopt;
    case K::B:
      return Regime::BGT_A;
    case K::G:
      return Regime::BGT_B;
    case K::T:
      return Regime::BGT_E;
    case K::H:
      if (c.label.p == 0 && c.label.q == 0) return std::nullopt;  // Golod: terminal
      if (c.label.p >= 2) return Regime::H2;
      if (c.label.p == 1) return Regime::H1;
      return Regime::H0;
  }
  return std::nullopt;
}

std::optional<Regime> regime_for_observed(const Classification& before, std::size_t m_after) {
  using K = ClassLabel::Kind;
  switch (before.label.kind) {
    case K::B:
      if (m_after == before.n + 2) return Regime::BGT_A;
      return std::nullopt;
    case K::G:
      if (m_after == before.n + 3) return Regime::BGT_B;
      return std::nullopt;
    case K::T:
      if (m_after == before.n + 3 && before.m >= 5) return Regime::BGT_C;
      if (m_after == before.n + 2) return Regime::BGT_D;
      if (m_after == before.n) return Regime::BGT_E;
      return std::nullopt;
    case K::H:
      if (m_after == before.n + 3) return Regime::H0;
      if (m_after == before.n + 2 && before.label.p >= 1) return Regime::H1;
      if (m_after == before.n + 1 && before.label.p >= 2) return Regime::H2;
      return std::nullopt;
    case K::C3:
      return std::nullopt;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// proof-aligned end-to-end linkage

namespace {

Polynomial class_element(const KoszulHomology& KH, std::span<const Scalar> coeffs) {
  const Field& f = KH.tor.field;
  Polynomial out = Polynomial::zero(f);
  for (std::size_t i = 0; i < KH.h1_reps.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    for (int v = 0; v < 3; ++v) {
      Polynomial part = KH.h1_reps[i][static_cast<std::size_t>(v)] * Polynomial::variable(f, v);
      out = out + part.scaled(coeffs[i]);
    }
  }
  return out;
}

}  // namespace

LinkStep link_step(const IdealSpec& I, std::uint64_t seed, std::optional<Regime> force) {
  KoszulHomology KH = koszul_homology(I);
  Classification C = classify(KH.tor);
  auto reg = force ? force : preferred_regime(C);
  if (!reg)
    throw Error(Errc::bad_input,
                "link_step: class " + C.label.str() + " is terminal (C(3) or H(0,0))");
  Regime r = *reg;
  require_regime(C, r);

  // slots 1..3 of the regime layout, expressed in the Koszul homology basis
  ExactMatrix layout = C.witness.g1 * relabel_to_basis_change(regime_relabel(C, r), I.field, C.m,
                                                              C.n)
                                          .g1;
  std::array<Polynomial, 3> base;
  for (std::size_t t = 0; t < 3; ++t) base[t] = class_element(KH, layout.col(t));

  GroebnerBasis GI = KH.gb;
  for (const auto& b : base)
    if (!contains(GI, b))
      throw Error(Errc::bad_input, "link_step: slot element escaped the ideal");

  SplitMix64 rng(seed);
  for (int attempt = 0; attempt < 256; ++attempt) {
    std::array<Polynomial, 3> x = base;
    if (attempt > 0) {
      // perturb within M*I; homology classes are unchanged
      for (auto& xi : x) {
        std::size_t terms = 1 + rng.below(2);
        for (std::size_t t = 0; t < terms; ++t) {
          const Polynomial& g = I.gens[rng.below(I.gens.size())];
          Polynomial var = Polynomial::variable(I.field, static_cast<int>(rng.below(3)));
          Scalar c = I.field.is_prime_field() ? Scalar::of_residue(I.field, 1 + rng.below(I.field.p - 1))
                                              : Scalar::of_int(I.field, rng.int_in(1, 2));
          xi = xi + (var * g).scaled(c);
        }
      }
    }
    bool nonzero = true;
    for (const auto& xi : x) nonzero = nonzero && !xi.is_zero();
    if (!nonzero || !is_regular_sequence(x[0], x[1], x[2])) continue;

    IdealSpec linked = link_ideal(I, x);
    Classification after = classify(koszul_homology(linked).tor);
    Verdict v = check_proposition(C, after, r);
    return LinkStep{I, x, r, C, after, linked, v};
  }
  throw Error(Errc::bad_input, "link_step: no regular sequence found in 256 attempts");
}

std::vector<LinkStep> link_chain(const IdealSpec& I, std::size_t max_links, std::uint64_t seed) {
  std::vector<LinkStep> steps;
  IdealSpec cur = I;
  for (std::size_t k = 0; k < max_links; ++k) {
    Classification c = classify(koszul_homology(cur).tor);
    if (c.label == ClassLabel::C3() || c.label == ClassLabel::H(0, 0)) return steps;
    LinkStep st = link_step(cur, derive_seed(seed, k));
    cur = st.linked;
    steps.push_back(std::move(st));
  }
  Classification c = classify(koszul_homology(cur).tor);
  if (c.label == ClassLabel::C3() || c.label == ClassLabel::H(0, 0)) return steps;
  throw Error(Errc::bad_input,
              "link_chain: did not reach C(3) or H(0,0) within " + std::to_string(max_links) +
                  " links");
}

std::string linked_presentation_json(const Classification& before, Regime r,
                                     const LinkedPresentation& lp) {
  nlohmann::json j;
  j["input_class"] = before.label.str();
  j["input"] = {{"m", before.m}, {"n", before.n}, {"p", before.inv.p}, {"q", before.inv.q},
                {"r", before.inv.r}};
  j["regime"] = regime_name(r);
  j["m_linked"] = lp.m_linked;
  j["n_linked"] = lp.n_linked;
  j["splits"] = lp.splits;
  j["surviving"] = {{"E", lp.surviving_E}, {"F", lp.surviving_F}, {"G", lp.surviving_G}};
  j["p_lower"] = lp.p_lower;
  j["q_lower"] = lp.q_lower;
  nlohmann::json prods = nlohmann::json::array();
  for (const auto& kp : lp.known_products) {
    nlohmann::json rec;
    rec["e"] = kp.e_index;
    rec["with"] = std::string(1, kp.partner_kind);
    rec["index"] = kp.partner_index;
    nlohmann::json val = nlohmann::json::array();
    for (const auto& s : kp.value) val.push_back(s.str());
    rec["value"] = val;
    prods.push_back(rec);
  }
  j["known_products"] = prods;
  return j.dump(2);
}

}  // namespace torlink
