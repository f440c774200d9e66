#ifndef ORBISYM_TENSOR_HPP
#define ORBISYM_TENSOR_HPP

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <span>
#include <vector>

#include "orbisym/frobenius.hpp"
#include "orbisym/permutation.hpp"

namespace orbisym {

/// A tuple of basis indices, one per tensor factor (at most kMaxDegree factors).
class Tuple {
public:
  Tuple() = default;
  explicit Tuple(std::size_t size) : size_(static_cast<std::uint8_t>(size)) {}
  Tuple(std::initializer_list<std::size_t> entries);

  [[nodiscard]] std::size_t size() const noexcept { return size_; }
  [[nodiscard]] std::size_t operator[](std::size_t i) const noexcept { return v_[i]; }
  void set(std::size_t i, std::size_t value) noexcept { v_[i] = static_cast<std::uint8_t>(value); }
  void push_back(std::size_t value) noexcept { v_[size_++] = static_cast<std::uint8_t>(value); }

  friend bool operator==(const Tuple& a, const Tuple& b) noexcept { return a.size_ == b.size_ && a.v_ == b.v_; }
  friend bool operator<(const Tuple& a, const Tuple& b) noexcept {
    if (a.size_ != b.size_) return a.size_ < b.size_;
    return a.v_ < b.v_;
  }
  [[nodiscard]] std::size_t hash() const noexcept;

private:
  std::array<std::uint8_t, kMaxDegree> v_{};
  std::uint8_t size_ = 0;
};

/// Element of A^{(x)I} for an ordered index set I of size arity(): sparse
/// rational coefficients on basis tuples, zero coefficients never stored.
class TensorClass {
public:
  using Terms = std::map<Tuple, Rational>;

  TensorClass() = default;
  explicit TensorClass(std::size_t arity) : arity_(arity) {}
  /// Unit tensor 1 (x) ... (x) 1.
  static TensorClass unit(const FrobeniusAlgebra& alg, std::size_t arity);
  static TensorClass basis(const Tuple& t, Rational c = Rational(1));

  [[nodiscard]] std::size_t arity() const noexcept { return arity_; }
  [[nodiscard]] const Terms& terms() const noexcept { return terms_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
  [[nodiscard]] Rational coeff(const Tuple& t) const;

  void add(const Tuple& t, const Rational& c);
  TensorClass& operator+=(const TensorClass& o);
  TensorClass& operator-=(const TensorClass& o);
  TensorClass& operator*=(const Rational& c);
  friend TensorClass operator+(TensorClass a, const TensorClass& b) { return a += b; }
  friend TensorClass operator-(TensorClass a, const TensorClass& b) { return a -= b; }
  friend TensorClass operator*(TensorClass a, const Rational& c) { return a *= c; }
  friend bool operator==(const TensorClass& a, const TensorClass& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

private:
  std::size_t arity_ = 0;
  Terms terms_;
};

/// Sum of basis degrees of a tuple.
int tuple_degree(const FrobeniusAlgebra& alg, const Tuple& t);
bool tuple_odd(const FrobeniusAlgebra& alg, const Tuple& t);

/// Sign (+1/-1) from moving factor i of the tuple to position target[i], counting
/// transpositions of odd-degree entries.
int koszul_sign(const FrobeniusAlgebra& alg, const Tuple& t, std::span<const int> target);

/// Factor-wise cup product with Koszul signs. Throws std::invalid_argument on arity mismatch.
TensorClass tensor_mul(const FrobeniusAlgebra& alg, const TensorClass& a, const TensorClass& b);

/// A surjection phi: I -> J given as phi[i] in [0, target_size).
void check_surjection(std::span<const int> phi, std::size_t target_size);

/// Restriction to the multidiagonal S^J in S^I: each factor moves to its fiber
/// (Koszul-signed, stable in I order) and fibers multiply out in A.
TensorClass pullback(const FrobeniusAlgebra& alg, std::span<const int> phi, std::size_t target_size,
                     const TensorClass& x);

/// Adjoint of pullback for the product pairing: the unique x over I with
/// <x, t>_I = <y, pullback(phi, t)>_J. Solved degree by degree against the
/// tensor-power Gram matrix, whose inverse factors through that of A.
/// Here |I| = phi.size() and |J| = y.arity().
TensorClass pushforward(const FrobeniusAlgebra& alg, std::span<const int> phi, const TensorClass& y);

/// Moves factor i to position sigma[i] (sigma a bijection), with Koszul sign.
TensorClass relabel(const FrobeniusAlgebra& alg, std::span<const int> sigma, const TensorClass& x);

/// The Kunneth degree map on A^{(x)I}: product of the factor integrals.
Rational integrate(const FrobeniusAlgebra& alg, const TensorClass& x);
/// <x, y>_I = integral of x * y.
Rational pairing(const FrobeniusAlgebra& alg, const TensorClass& x, const TensorClass& y);
/// <s, t> for two basis tuples (Koszul sign times product of A-pairings).
Rational pair_tuples(const FrobeniusAlgebra& alg, const Tuple& s, const Tuple& t);

/// Pure tensor of Euler powers e^{k_0} (x) e^{k_1} (x) ...
TensorClass euler_tensor(const FrobeniusAlgebra& alg, std::span<const int> exponents);

/// Restriction of the diagonal class to the diagonal, sum of +-b_i b_i^v.
/// For cohomology of a compact manifold this is the Euler class; the orbifold
/// product is associative only when it agrees with the declared one.
SparseVec diagonal_euler(const FrobeniusAlgebra& alg);

/// Calls f(t) for every basis tuple of the given arity and total degree.
void for_each_tuple_of_degree(const FrobeniusAlgebra& alg, std::size_t arity, int degree,
                              const std::function<void(const Tuple&)>& f);
/// Calls f(t) for every basis tuple of the given arity.
void for_each_tuple(const FrobeniusAlgebra& alg, std::size_t arity, const std::function<void(const Tuple&)>& f);

} // namespace orbisym

template <>
struct std::hash<orbisym::Tuple> {
  std::size_t operator()(const orbisym::Tuple& t) const noexcept { return t.hash(); }
};

#endif // ORBISYM_TENSOR_HPP
