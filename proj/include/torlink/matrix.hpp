#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "torlink/field.hpp"

namespace torlink {

// Execution policy for the elimination kernels. `automatic` switches to the
// OpenMP kernel above a size threshold; `serial` is the reference path.
enum class Exec { automatic, serial, parallel };

// Dense exact matrix, row-major.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(const Field& f, std::size_t rows, std::size_t cols);

  static ExactMatrix identity(const Field& f, std::size_t n);
  static ExactMatrix from_ints(const Field& f,
                               std::initializer_list<std::initializer_list<long>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return field_; }

  Scalar& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  ExactMatrix transpose() const;
  ExactMatrix operator*(const ExactMatrix& o) const;
  std::vector<Scalar> apply(std::span<const Scalar> v) const;  // M * v
  bool operator==(const ExactMatrix& o) const;
  bool is_zero() const;

  std::vector<Scalar> col(std::size_t j) const;
  void set_col(std::size_t j, std::span<const Scalar> v);
  static ExactMatrix hstack(const ExactMatrix& a, const ExactMatrix& b);
  static ExactMatrix from_cols(const Field& f, std::size_t rows,
                               const std::vector<std::vector<Scalar>>& cols);

  std::string str() const;

 private:
  Field field_ = Field::Q();
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

struct RrefResult {
  ExactMatrix mat;
  std::vector<std::size_t> pivots;  // pivot column per pivot row, ascending
};

// Reduced row-echelon form by exact Gauss-Jordan elimination with the fixed
// pivot rule: leftmost column, first nonzero row at or below the pivot row.
RrefResult rref(const ExactMatrix& M, Exec exec = Exec::automatic);
RrefResult rref_serial(const ExactMatrix& M);    // reference implementation
RrefResult rref_parallel(const ExactMatrix& M);  // OpenMP row-update kernel

std::size_t rank(const ExactMatrix& M, Exec exec = Exec::automatic);

// Columns form a basis of the null space { x : Mx = 0 }; for each non-pivot
// column of rref(M) there is one basis vector, in ascending column order.
ExactMatrix kernel_basis(const ExactMatrix& M, Exec exec = Exec::automatic);

// Some x with Mx = v, free variables set to zero; nullopt when inconsistent.
std::optional<std::vector<Scalar>> solve(const ExactMatrix& M, std::span<const Scalar> v,
                                         Exec exec = Exec::automatic);

ExactMatrix inverse(const ExactMatrix& M);  // throws singular_matrix

// Indices of standard basis vectors extending the column span of M to the
// whole space, chosen greedily in index order.
std::vector<std::size_t> complement_columns(const ExactMatrix& M);

bool columns_span_equal(const ExactMatrix& A, const ExactMatrix& B);
bool in_column_span(const ExactMatrix& A, std::span<const Scalar> v);

}  // namespace torlink
