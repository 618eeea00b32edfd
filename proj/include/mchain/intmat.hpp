#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "mchain/numeric.hpp"

namespace mchain {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows);
  static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Integer> row(std::size_t i) const;
  void set_row(std::size_t i, std::span<const Integer> values);
  void set_row(std::size_t i, std::span<const std::int64_t> values);
  /// Appends a row; the matrix must be empty or have matching width.
  void push_row(std::span<const Integer> values);

  /// Largest absolute entry (the sup-norm of the matrix).
  Integer max_abs() const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix transpose(const IntMatrix& a);

/// Fraction-free (Bareiss) determinant.
Integer det(const IntMatrix& a);
std::size_t rank(const IntMatrix& a);
/// Classical adjoint: adj(A) A = A adj(A) = det(A) I.
IntMatrix adjugate(const IntMatrix& a);
/// Exact inverse of a matrix with determinant +-1.
IntMatrix inverse_unimodular(const IntMatrix& a);

/// Nonzero invariant factors d_1 | d_2 | ... of the Smith normal form.
std::vector<Integer> smith_invariants(const IntMatrix& a);

/// Column Hermite form: a * v = [h | 0] with v unimodular, h lower
/// triangular with positive diagonal on the pivot columns. Also returns v^-1.
IntMatrix column_hermite(const IntMatrix& a, IntMatrix& v, IntMatrix& v_inv);

/// True if the rows of `a` can be completed to a basis of Z^cols, i.e. all
/// invariant factors are 1 and the rows are independent.
bool is_extendable(const IntMatrix& a);

/// Square unimodular matrix whose leading rows are the rows of `a`.
/// Throws InconsistencyError if `a` is not extendable.
IntMatrix complete_to_unimodular(const IntMatrix& a);

std::string to_string(const IntMatrix& a);

}  // namespace mchain
