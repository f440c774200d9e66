#ifndef ORBISYM_LINALG_HPP
#define ORBISYM_LINALG_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "orbisym/rational.hpp"

namespace orbisym {

/// Sparse rational vector keyed by coordinate; zero entries are never stored.
using SparseVec = std::map<std::size_t, Rational>;

void axpy(SparseVec& y, const Rational& a, const SparseVec& x);

/// Incremental row echelon form over Q. Pivot rows are normalized to a
/// leading coefficient of one; pivot columns are the least stored coordinates.
class RowEchelon {
public:
  /// Reduces v against the stored rows. Returns true and keeps the remainder
  /// when v is independent of them.
  bool insert(SparseVec v);
  /// The remainder of v after reduction (empty when v is in the span).
  [[nodiscard]] SparseVec reduce(SparseVec v) const;
  [[nodiscard]] std::size_t rank() const noexcept { return rows_.size(); }

private:
  std::unordered_map<std::size_t, std::size_t> pivot_row_;
  std::vector<SparseVec> rows_;
};

/// Dense row-major rational matrix.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] std::size_t rank() const;
  [[nodiscard]] Rational determinant() const;
  /// Leading principal minors det(A[0..k, 0..k]) for k = 1..n.
  [[nodiscard]] std::vector<Rational> leading_minors() const;
  /// Exact inverse, or nullopt when singular.
  [[nodiscard]] std::optional<Matrix> inverse() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b);

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Solves A x = b for a square sparse system given by rows. Returns nullopt
/// when A is singular.
std::optional<std::vector<Rational>> solve_sparse(const std::vector<SparseVec>& rows, const std::vector<Rational>& rhs);

} // namespace orbisym

#endif // ORBISYM_LINALG_HPP
