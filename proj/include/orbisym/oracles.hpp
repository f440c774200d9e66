#ifndef ORBISYM_ORACLES_HPP
#define ORBISYM_ORACLES_HPP

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "orbisym/frobenius.hpp"
#include "orbisym/group.hpp"
#include "orbisym/orbifold.hpp"
#include "orbisym/tensor.hpp"

namespace orbisym {

/// Betti polynomials of the Hilbert schemes of points of a surface with Betti
/// numbers b_0..b_4, for n = 0..n_max (n_max <= 10). Keys are doubled degrees
/// like everywhere else, so t^k is stored at key 2k. Throws
/// std::overflow_error if a coefficient leaves int64.
std::vector<PoincarePolynomial> goettsche_series(std::span<const std::int64_t> betti, int n_max);

/// Dimension of the G-invariants of A^{(x)n} in one cohomological degree:
/// (rank of the symmetrized basis tuples, average of the signed traces).
std::pair<std::int64_t, std::int64_t> invariant_dim_two_ways(const GroupTable& group, const FrobeniusAlgebra& alg,
                                                             int degree);

/// The same two counts on the whole ring H*(S^n, G), per doubled degree.
std::map<int, std::pair<std::int64_t, std::int64_t>> ring_invariant_dims_two_ways(const OrbifoldRing& ring);

/// Comultiplication A -> A (x) A, the adjoint of multiplication, found by an
/// explicit sparse solve against the Gram matrix of A (x) A.
class Comultiplication {
public:
  explicit Comultiplication(const FrobeniusAlgebra& alg);

  [[nodiscard]] const TensorClass& delta(std::size_t b) const { return delta_[b]; }
  /// (delta (x) id ... ) applied k - 1 times to b_b: a class over k factors.
  [[nodiscard]] TensorClass iterated(std::size_t b, std::size_t k) const;
  /// Pushforward along the multidiagonal of phi, fiber by fiber.
  [[nodiscard]] TensorClass pushforward(std::span<const int> phi, const TensorClass& y) const;

private:
  const FrobeniusAlgebra& alg_;
  std::vector<TensorClass> delta_;
};

TensorClass pushforward_bruteforce(const FrobeniusAlgebra& alg, std::span<const int> phi, const TensorClass& y);

} // namespace orbisym

#endif // ORBISYM_ORACLES_HPP
