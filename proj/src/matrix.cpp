#include "torlink/matrix.hpp"

#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace torlink {

namespace {
// Below this many entries the OpenMP kernel is pure overhead.
constexpr std::size_t kParallelThreshold = 64 * 64;
}  // namespace

ExactMatrix::ExactMatrix(const Field& f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(f)) {}

ExactMatrix ExactMatrix::identity(const Field& f, std::size_t n) {
  ExactMatrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
  return m;
}

ExactMatrix ExactMatrix::from_ints(const Field& f,
                                   std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r ? rows.begin()->size() : 0;
  ExactMatrix m(f, r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw Error(Errc::bad_input, "ragged matrix literal");
    std::size_t j = 0;
    for (long v : row) m.at(i, j++) = Scalar::of_int(f, v);
    ++i;
  }
  return m;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
  if (cols_ != o.rows_ || !(field_ == o.field_))
    throw Error(Errc::bad_input, "matrix product shape/field mismatch");
  ExactMatrix r(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        if (o.at(k, j).is_zero()) continue;
        r.at(i, j) += a * o.at(k, j);
      }
    }
  return r;
}

std::vector<Scalar> ExactMatrix::apply(std::span<const Scalar> v) const {
  if (v.size() != cols_) throw Error(Errc::bad_input, "apply: length mismatch");
  std::vector<Scalar> r(rows_, Scalar::zero(field_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] += at(i, j) * v[j];
  return r;
}

bool ExactMatrix::operator==(const ExactMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || !(field_ == o.field_)) return false;
  for (std::size_t k = 0; k < data_.size(); ++k)
    if (!(data_[k] == o.data_[k])) return false;
  return true;
}

bool ExactMatrix::is_zero() const {
  for (const auto& s : data_)
    if (!s.is_zero()) return false;
  return true;
}

std::vector<Scalar> ExactMatrix::col(std::size_t j) const {
  std::vector<Scalar> v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back(at(i, j));
  return v;
}

void ExactMatrix::set_col(std::size_t j, std::span<const Scalar> v) {
  for (std::size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
}

ExactMatrix ExactMatrix::hstack(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows() != b.rows()) throw Error(Errc::bad_input, "hstack row mismatch");
  ExactMatrix m(a.field(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m.at(i, a.cols() + j) = b.at(i, j);
  }
  return m;
}

ExactMatrix ExactMatrix::from_cols(const Field& f, std::size_t rows,
                                   const std::vector<std::vector<Scalar>>& cols) {
  ExactMatrix m(f, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw Error(Errc::bad_input, "from_cols length mismatch");
    m.set_col(j, cols[j]);
  }
  return m;
}

std::string ExactMatrix::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    os << '[';
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).str();
    os << "]\n";
  }
  return os.str();
}

namespace {

template <bool Parallel>
RrefResult rref_impl(const ExactMatrix& M) {
  RrefResult res{M, {}};
  ExactMatrix& a = res.mat;
  const std::size_t nr = a.rows(), nc = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < nc && r < nr; ++c) {
    std::size_t piv = nr;
    for (std::size_t i = r; i < nr; ++i) {
      if (!a.at(i, c).is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv == nr) continue;
    if (piv != r)
      for (std::size_t j = 0; j < nc; ++j) std::swap(a.at(r, j), a.at(piv, j));
    Scalar inv = a.at(r, c).inverse();
    for (std::size_t j = c; j < nc; ++j)
      if (!a.at(r, j).is_zero()) a.at(r, j) *= inv;
    // Row updates are independent of each other; only the pivot row is read.
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (Parallel)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(nr); ++i) {
      auto k = static_cast<std::size_t>(i);
      if (k == r || a.at(k, c).is_zero()) continue;
      Scalar factor = a.at(k, c);
      for (std::size_t j = c; j < nc; ++j)
        if (!a.at(r, j).is_zero()) a.at(k, j) -= factor * a.at(r, j);
    }
    res.pivots.push_back(c);
    ++r;
  }
  return res;
}

}  // namespace

RrefResult rref_serial(const ExactMatrix& M) { return rref_impl<false>(M); }
RrefResult rref_parallel(const ExactMatrix& M) { return rref_impl<true>(M); }

RrefResult rref(const ExactMatrix& M, Exec exec) {
  switch (exec) {
    case Exec::serial:
      return rref_serial(M);
    case Exec::parallel:
      return rref_parallel(M);
    case Exec::automatic:
    default:
      break;
  }
#ifdef _OPENMP
  if (M.rows() * M.cols() >= kParallelThreshold && omp_get_max_threads() > 1)
    return rref_parallel(M);
#endif
  return rref_serial(M);
}

std::size_t rank(const ExactMatrix& M, Exec exec) { return rref(M, exec).pivots.size(); }

ExactMatrix kernel_basis(const ExactMatrix& M, Exec exec) {
  RrefResult r = rref(M, exec);
  const std::size_t nc = M.cols();
  std::vector<bool> is_pivot(nc, false);
  for (std::size_t c : r.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < nc; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  ExactMatrix k(M.field(), nc, free_cols.size());
  for (std::size_t idx = 0; idx < free_cols.size(); ++idx) {
    std::size_t f = free_cols[idx];
    k.at(f, idx) = Scalar::one(M.field());
    for (std::size_t pr = 0; pr < r.pivots.size(); ++pr)
      k.at(r.pivots[pr], idx) = -r.mat.at(pr, f);
  }
  return k;
}

std::optional<std::vector<Scalar>> solve(const ExactMatrix& M, std::span<const Scalar> v,
                                         Exec exec) {
  if (v.size() != M.rows()) throw Error(Errc::bad_input, "solve: length mismatch");
  ExactMatrix aug(M.field(), M.rows(), M.cols() + 1);
  for (std::size_t i = 0; i < M.rows(); ++i) {
    for (std::size_t j = 0; j < M.cols(); ++j) aug.at(i, j) = M.at(i, j);
    aug.at(i, M.cols()) = v[i];
  }
  RrefResult r = rref(aug, exec);
  for (std::size_t c : r.pivots)
    if (c == M.cols()) return std::nullopt;
  std::vector<Scalar> x(M.cols(), Scalar::zero(M.field()));
  for (std::size_t pr = 0; pr < r.pivots.size(); ++pr) x[r.pivots[pr]] = r.mat.at(pr, M.cols());
  return x;
}

ExactMatrix inverse(const ExactMatrix& M) {
  if (M.rows() != M.cols()) throw Error(Errc::singular_matrix, "inverse of non-square matrix");
  ExactMatrix aug = ExactMatrix::hstack(M, ExactMatrix::identity(M.field(), M.rows()));
  RrefResult r = rref(aug);
  if (r.pivots.size() != M.rows() || (M.rows() && r.pivots.back() >= M.rows()))
    throw Error(Errc::singular_matrix, "matrix is singular");
  ExactMatrix inv(M.field(), M.rows(), M.rows());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.rows(); ++j) inv.at(i, j) = r.mat.at(i, M.rows() + j);
  return inv;
}

std::vector<std::size_t> complement_columns(const ExactMatrix& M) {
  const Field& f = M.field();
  std::size_t dim = M.rows();
  ExactMatrix cur = M;
  std::size_t have = rank(cur);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dim && have + out.size() < dim; ++i) {
    ExactMatrix test(f, dim, cur.cols() + 1);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < cur.cols(); ++c) test.at(r, c) = cur.at(r, c);
    test.at(i, cur.cols()) = Scalar::one(f);
    if (rank(test) > have + out.size()) {
      out.push_back(i);
      cur = test;
    }
  }
  if (have + out.size() != dim) throw Error(Errc::bad_input, "complement_columns: span defect");
  return out;
}

bool in_column_span(const ExactMatrix& A, std::span<const Scalar> v) {
  return solve(A, v).has_value();
}

bool columns_span_equal(const ExactMatrix& A, const ExactMatrix& B) {
  if (A.rows() != B.rows()) return false;
  std::size_t ra = rank(A), rb = rank(B);
  if (ra != rb) return false;
  return rank(ExactMatrix::hstack(A, B)) == ra;
}

}  // namespace torlink
