#include "torlink/toralg.hpp"

#include <json.hpp>

namespace torlink {

TorAlgebra TorAlgebra::zero(const Field& f, std::size_t m, std::size_t n) {
  if (m < 1 || n < 1) throw Error(Errc::dimensionally_invalid, "need m >= 1 and n >= 1");
  TorAlgebra A;
  A.field = f;
  A.m = m;
  A.n = n;
  A.mu11.assign(m * m, std::vector<Scalar>(A.l(), Scalar::zero(f)));
  A.mu12.assign(m * A.l(), std::vector<Scalar>(n, Scalar::zero(f)));
  return A;
}

namespace {

bool vec_zero(const std::vector<Scalar>& v) {
  for (const auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

std::vector<Scalar> vec_neg(const std::vector<Scalar>& v) {
  std::vector<Scalar> r = v;
  for (auto& s : r) s = -s;
  return r;
}

void vec_axpy(std::vector<Scalar>& acc, const Scalar& c, const std::vector<Scalar>& v) {
  for (std::size_t i = 0; i < acc.size(); ++i)
    if (!c.is_zero() && !v[i].is_zero()) acc[i] += c * v[i];
}

}  // namespace

std::vector<Scalar> TorAlgebra::mult_ee(std::span<const Scalar> a, std::span<const Scalar> b) const {
  std::vector<Scalar> out(l(), Scalar::zero(field));
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < m; ++j) {
      if (b[j].is_zero()) continue;
      vec_axpy(out, a[i] * b[j], e_times_e(i, j));
    }
  }
  return out;
}

std::vector<Scalar> TorAlgebra::mult_ef(std::span<const Scalar> a, std::span<const Scalar> f) const {
  std::vector<Scalar> out(n, Scalar::zero(field));
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t h = 0; h < l(); ++h) {
      if (f[h].is_zero()) continue;
      vec_axpy(out, a[i] * f[h], e_times_f(i, h));
    }
  }
  return out;
}

bool TorAlgebra::operator==(const TorAlgebra& o) const {
  return field == o.field && m == o.m && n == o.n && mu11 == o.mu11 && mu12 == o.mu12;
}

ValidationReport validate(const TorAlgebra& A) {
  ValidationReport rep;
  const std::size_t m = A.m, l = A.l(), n = A.n;
  if (A.mu11.size() != m * m || A.mu12.size() != m * l) {
    rep.violations.push_back("tensor shape mismatch");
    return rep;
  }
  for (const auto& v : A.mu11)
    if (v.size() != l) {
      rep.violations.push_back("mu11 coefficient length != l");
      return rep;
    }
  for (const auto& v : A.mu12)
    if (v.size() != n) {
      rep.violations.push_back("mu12 coefficient length != n");
      return rep;
    }
  for (std::size_t i = 0; i < m; ++i) {
    if (!vec_zero(A.e_times_e(i, i)))
      rep.violations.push_back("e" + std::to_string(i + 1) + "*e" + std::to_string(i + 1) +
                               " != 0");
    for (std::size_t j = i + 1; j < m; ++j)
      if (!(A.e_times_e(i, j) == vec_neg(A.e_times_e(j, i))))
        rep.violations.push_back("antisymmetry fails at (e" + std::to_string(i + 1) + ",e" +
                                 std::to_string(j + 1) + ")");
  }
  // triple products (i,j,k) -> e_i (e_j e_k) must be alternating
  auto triple = [&](std::size_t i, std::size_t j, std::size_t k) {
    std::vector<Scalar> out(n, Scalar::zero(A.field));
    const auto& jk = A.e_times_e(j, k);
    for (std::size_t h = 0; h < l; ++h) vec_axpy(out, jk[h], A.e_times_f(i, h));
    return out;
  };
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      if (!vec_zero(triple(i, i, k)))
        rep.violations.push_back("e_i(e_i e_k) != 0 at i=" + std::to_string(i + 1) +
                                 ", k=" + std::to_string(k + 1));
      for (std::size_t j = i + 1; j < m; ++j) {
        auto lhs = triple(i, j, k);
        auto rhs = vec_neg(triple(j, i, k));
        if (!(lhs == rhs))
          rep.violations.push_back("triple product not alternating at (" + std::to_string(i + 1) +
                                   "," + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")");
      }
    }
  }
  return rep;
}

Invariants invariants_pqr(const TorAlgebra& A) {
  const std::size_t m = A.m, l = A.l(), n = A.n;
  const Field& f = A.field;
  Invariants inv;
  {
    ExactMatrix P(f, m * m, l);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t h = 0; h < l; ++h) P.at(i * m + j, h) = A.e_times_e(i, j)[h];
    inv.p = rank(P);
  }
  {
    ExactMatrix Q(f, m * l, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t h = 0; h < l; ++h)
        for (std::size_t g = 0; g < n; ++g) Q.at(i * l + h, g) = A.e_times_f(i, h)[g];
    inv.q = rank(Q);
  }
  {
    // row h of the flattened map: f_h -> (e_i -> f_h e_i), columns (i,g) row-major
    ExactMatrix R(f, l, m * n);
    for (std::size_t h = 0; h < l; ++h)
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t g = 0; g < n; ++g) R.at(h, i * n + g) = A.e_times_f(i, h)[g];
    inv.r = rank(R);
  }
  return inv;
}

BasisChange BasisChange::identity(const Field& f, std::size_t m, std::size_t n) {
  return BasisChange{ExactMatrix::identity(f, m), ExactMatrix::identity(f, m + n - 1),
                     ExactMatrix::identity(f, n)};
}

BasisChange BasisChange::inverse() const {
  return BasisChange{torlink::inverse(g1), torlink::inverse(g2), torlink::inverse(g3)};
}

BasisChange BasisChange::compose(const BasisChange& then) const {
  return BasisChange{g1 * then.g1, g2 * then.g2, g3 * then.g3};
}

bool BasisChange::is_identity() const {
  return g1 == ExactMatrix::identity(g1.field(), g1.rows()) &&
         g2 == ExactMatrix::identity(g2.field(), g2.rows()) &&
         g3 == ExactMatrix::identity(g3.field(), g3.rows());
}

TorAlgebra change_basis(const TorAlgebra& A, const BasisChange& B) {
  const std::size_t m = A.m, l = A.l(), n = A.n;
  if (B.g1.rows() != m || B.g1.cols() != m || B.g2.rows() != l || B.g2.cols() != l ||
      B.g3.rows() != n || B.g3.cols() != n)
    throw Error(Errc::bad_input, "change_basis: dimension mismatch");
  ExactMatrix g2inv = inverse(B.g2);
  ExactMatrix g3inv = inverse(B.g3);
  TorAlgebra R = TorAlgebra::zero(A.field, m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      auto prod = A.mult_ee(B.g1.col(i), B.g1.col(j));
      R.e_times_e(i, j) = g2inv.apply(prod);
    }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t h = 0; h < l; ++h) {
      auto prod = A.mult_ef(B.g1.col(i), B.g2.col(h));
      R.e_times_f(i, h) = g3inv.apply(prod);
    }
  return R;
}

ExactMatrix left_mult_matrix(const TorAlgebra& A, std::span<const Scalar> coeffs) {
  const std::size_t m = A.m, l = A.l();
  ExactMatrix M(A.field, l, m);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<Scalar> img(l, Scalar::zero(A.field));
    for (std::size_t i = 0; i < m; ++i) vec_axpy(img, coeffs[i], A.e_times_e(i, j));
    M.set_col(j, img);
  }
  return M;
}

std::size_t left_mult_rank(const TorAlgebra& A, std::span<const Scalar> coeffs) {
  return rank(left_mult_matrix(A, coeffs));
}

ExactMatrix a2_mult_matrix(const TorAlgebra& A, std::span<const Scalar> coeffs) {
  const std::size_t l = A.l(), n = A.n;
  ExactMatrix M(A.field, n, l);
  for (std::size_t h = 0; h < l; ++h) {
    std::vector<Scalar> img(n, Scalar::zero(A.field));
    for (std::size_t i = 0; i < A.m; ++i) vec_axpy(img, coeffs[i], A.e_times_f(i, h));
    M.set_col(h, img);
  }
  return M;
}

// ---------------------------------------------------------------------------
// tor-table JSON

namespace {

using nlohmann::json;

Scalar scalar_from_json(const Field& f, const json& j) {
  if (j.is_number_integer()) return Scalar::of_int(f, j.get<long>());
  if (j.is_string()) return Scalar::from_string(f, j.get<std::string>());
  throw Error(Errc::parse, "tor-table: coefficient must be an integer or a string");
}

json scalar_to_json(const Scalar& s) {
  if (s.field().is_prime_field()) return json(s.residue());
  const mpq_class& q = s.rat();
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return json(q.get_num().get_si());
  return json(s.str());
}

}  // namespace

TorAlgebra load_tor_table(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse, std::string("tor-table: ") + e.what());
  }
  if (!j.is_object() || !j.contains("field") || !j.contains("m") || !j.contains("n"))
    throw Error(Errc::parse, "tor-table: need field, m, n");
  Field f;
  const json& jf = j["field"];
  std::string type = jf.value("type", "");
  if (type == "Q") {
    f = Field::Q();
  } else if (type == "Fp") {
    if (!jf.contains("p")) throw Error(Errc::parse, "tor-table: Fp needs p");
    f = Field::Fp(jf["p"].get<std::uint64_t>());
  } else {
    throw Error(Errc::parse, "tor-table: field type must be Q or Fp");
  }
  std::size_t m = j["m"].get<std::size_t>();
  std::size_t n = j["n"].get<std::size_t>();
  TorAlgebra A = TorAlgebra::zero(f, m, n);
  const std::size_t l = A.l();

  std::vector<bool> seen11(m * m, false);
  for (const json& t : j.value("mu11", json::array())) {
    if (!t.is_array() || t.size() != 3) throw Error(Errc::parse, "tor-table: bad mu11 triplet");
    std::size_t i = t[0].get<std::size_t>(), jj = t[1].get<std::size_t>();
    if (i < 1 || i > m || jj < 1 || jj > m)
      throw Error(Errc::parse, "tor-table: mu11 index out of range");
    const json& cv = t[2];
    if (!cv.is_array() || cv.size() != l)
      throw Error(Errc::parse, "tor-table: mu11 coefficient vector must have length l = m+n-1");
    std::vector<Scalar> v;
    for (const auto& c : cv) v.push_back(scalar_from_json(f, c));
    if (i == jj && !vec_zero(v))
      throw Error(Errc::parse, "tor-table: e_i e_i must be zero");
    auto put = [&](std::size_t a, std::size_t b, const std::vector<Scalar>& val) {
      if (seen11[a * m + b] && !(A.e_times_e(a, b) == val))
        throw Error(Errc::parse, "tor-table: conflicting mu11 entries");
      A.e_times_e(a, b) = val;
      seen11[a * m + b] = true;
    };
    put(i - 1, jj - 1, v);
    if (i != jj) put(jj - 1, i - 1, vec_neg(v));
  }
  for (const json& t : j.value("mu12", json::array())) {
    if (!t.is_array() || t.size() != 3) throw Error(Errc::parse, "tor-table: bad mu12 triplet");
    std::size_t i = t[0].get<std::size_t>(), h = t[1].get<std::size_t>();
    if (i < 1 || i > m || h < 1 || h > l)
      throw Error(Errc::parse, "tor-table: mu12 index out of range");
    const json& cv = t[2];
    if (!cv.is_array() || cv.size() != n)
      throw Error(Errc::parse, "tor-table: mu12 coefficient vector must have length n");
    std::vector<Scalar> v;
    for (const auto& c : cv) v.push_back(scalar_from_json(f, c));
    A.e_times_f(i - 1, h - 1) = v;
  }
  return A;
}

std::string dump_tor_table(const TorAlgebra& A) {
  json j;
  if (A.field.is_prime_field())
    j["field"] = {{"type", "Fp"}, {"p", A.field.p}};
  else
    j["field"] = {{"type", "Q"}};
  j["m"] = A.m;
  j["n"] = A.n;
  json m11 = json::array();
  for (std::size_t i = 0; i < A.m; ++i)
    for (std::size_t jj = i + 1; jj < A.m; ++jj) {
      if (vec_zero(A.e_times_e(i, jj))) continue;
      json cv = json::array();
      for (const auto& c : A.e_times_e(i, jj)) cv.push_back(scalar_to_json(c));
      m11.push_back(json::array({i + 1, jj + 1, cv}));
    }
  json m12 = json::array();
  for (std::size_t i = 0; i < A.m; ++i)
    for (std::size_t h = 0; h < A.l(); ++h) {
      if (vec_zero(A.e_times_f(i, h))) continue;
      json cv = json::array();
      for (const auto& c : A.e_times_f(i, h)) cv.push_back(scalar_to_json(c));
      m12.push_back(json::array({i + 1, h + 1, cv}));
    }
  j["mu11"] = m11;
  j["mu12"] = m12;
  return j.dump(2);
}

}  // namespace torlink
