#include "orbisym/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace orbisym {

void axpy(SparseVec& y, const Rational& a, const SparseVec& x) {
  if (a.is_zero()) return;
  for (const auto& [k, v] : x) {
    auto [it, inserted] = y.try_emplace(k, a * v);
    if (!inserted) {
      it->second += a * v;
      if (it->second.is_zero()) y.erase(it);
    }
  }
}

SparseVec RowEchelon::reduce(SparseVec v) const {
  // Eliminate every coordinate that has a pivot, lowest first; pivot rows only
  // touch coordinates >= their pivot, so one ascending sweep suffices.
  auto it = v.begin();
  while (it != v.end()) {
    const auto p = pivot_row_.find(it->first);
    if (p == pivot_row_.end()) {
      ++it;
      continue;
    }
    const std::size_t key = it->first;
    const Rational factor = -it->second;
    axpy(v, factor, rows_[p->second]);
    it = v.upper_bound(key);
  }
  return v;
}

bool RowEchelon::insert(SparseVec v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  // Lowest coordinate without a pivot becomes the new pivot.
  const Rational lead = v.begin()->second;
  if (!(lead == Rational(1)))
    for (auto& [k, c] : v) c /= lead;
  pivot_row_.emplace(v.begin()->first, rows_.size());
  rows_.push_back(std::move(v));
  return true;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(1);
  return m;
}

namespace {

// In-place Gaussian elimination to row echelon form; returns (rank, determinant sign/product).
std::pair<std::size_t, Rational> eliminate(Matrix& m) {
  std::size_t rank = 0;
  Rational det(1);
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && m(pivot, c).is_zero()) ++pivot;
    if (pivot == m.rows()) {
      det = Rational(0);
      continue;
    }
    if (pivot != rank) {
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(pivot, k), m(rank, k));
      det = -det;
    }
    det *= m(rank, c);
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      if (m(r, c).is_zero()) continue;
      const Rational f = m(r, c) / m(rank, c);
      for (std::size_t k = c; k < m.cols(); ++k) m(r, k) -= f * m(rank, k);
    }
    ++rank;
  }
  if (rank < m.rows()) det = Rational(0);
  return {rank, det};
}

} // namespace

std::size_t Matrix::rank() const {
  Matrix copy = *this;
  return eliminate(copy).first;
}

Rational Matrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant of a non-square matrix");
  if (rows_ == 0) return Rational(1);
  Matrix copy = *this;
  return eliminate(copy).second;
}

std::vector<Rational> Matrix::leading_minors() const {
  if (rows_ != cols_) throw std::invalid_argument("minors of a non-square matrix");
  std::vector<Rational> out;
  for (std::size_t k = 1; k <= rows_; ++k) {
    Matrix sub(k, k);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) sub(r, c) = (*this)(r, c);
    out.push_back(sub.determinant());
  }
  return out;
}

std::optional<Matrix> Matrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = rows_;
  Matrix a = *this;
  Matrix inv = identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a(pivot, c).is_zero()) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != c)
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(a(pivot, k), a(c, k));
        std::swap(inv(pivot, k), inv(c, k));
      }
    const Rational p = a(c, c);
    for (std::size_t k = 0; k < n; ++k) {
      a(c, k) /= p;
      inv(c, k) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c).is_zero()) continue;
      const Rational f = a(r, c);
      for (std::size_t k = 0; k < n; ++k) {
        a(r, k) -= f * a(c, k);
        inv(r, k) -= f * inv(c, k);
      }
    }
  }
  return inv;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
  Matrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

std::optional<std::vector<Rational>> solve_sparse(const std::vector<SparseVec>& rows, const std::vector<Rational>& rhs) {
  const std::size_t n = rows.size();
  if (rhs.size() != n) throw std::invalid_argument("rhs size mismatch");
  // Augmented column n carries the right-hand side.
  std::vector<SparseVec> work;
  work.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    SparseVec row = rows[r];
    if (!rhs[r].is_zero()) row[n] = rhs[r];
    work.push_back(std::move(row));
  }
  std::vector<std::size_t> pivot_of_col(n, n);
  std::vector<bool> used(n, false);
  for (std::size_t c = 0; c < n; ++c) {
    // Sparsest unused row with a nonzero in column c keeps fill-in low.
    std::size_t best = n;
    for (std::size_t r = 0; r < n; ++r) {
      if (used[r]) continue;
      const auto it = work[r].find(c);
      if (it == work[r].end()) continue;
      if (best == n || work[r].size() < work[best].size()) best = r;
    }
    if (best == n) return std::nullopt;
    used[best] = true;
    pivot_of_col[c] = best;
    const Rational p = work[best].at(c);
    for (auto& [k, v] : work[best]) v /= p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == best) continue;
      const auto it = work[r].find(c);
      if (it == work[r].end()) continue;
      const Rational f = -it->second;
      axpy(work[r], f, work[best]);
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t c = 0; c < n; ++c) {
    const auto& row = work[pivot_of_col[c]];
    const auto it = row.find(n);
    if (it != row.end()) x[c] = it->second;
  }
  return x;
}

} // namespace orbisym
