#ifndef ORBISYM_ORBIFOLD_HPP
#define ORBISYM_ORBIFOLD_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "orbisym/assoc.hpp"
#include "orbisym/frobenius.hpp"
#include "orbisym/group.hpp"
#include "orbisym/permutation.hpp"
#include "orbisym/tensor.hpp"

namespace orbisym {

/// Element of H*(S^n, G): group element index g -> class over O(g).
class OrbifoldClass {
public:
  using Components = std::map<std::size_t, TensorClass>;

  OrbifoldClass() = default;
  static OrbifoldClass single(std::size_t g, TensorClass x);

  [[nodiscard]] const Components& components() const noexcept { return comps_; }
  [[nodiscard]] bool is_zero() const noexcept { return comps_.empty(); }
  /// Component at g, or nullptr.
  [[nodiscard]] const TensorClass* component(std::size_t g) const;

  void add(std::size_t g, const TensorClass& x);
  void add(std::size_t g, const Tuple& t, const Rational& c);
  OrbifoldClass& operator+=(const OrbifoldClass& o);
  OrbifoldClass& operator-=(const OrbifoldClass& o);
  OrbifoldClass& operator*=(const Rational& c);
  friend OrbifoldClass operator+(OrbifoldClass a, const OrbifoldClass& b) { return a += b; }
  friend OrbifoldClass operator-(OrbifoldClass a, const OrbifoldClass& b) { return a -= b; }
  friend OrbifoldClass operator*(OrbifoldClass a, const Rational& c) { return a *= c; }
  friend bool operator==(const OrbifoldClass&, const OrbifoldClass&) = default;

private:
  Components comps_;
};

/// Chen-Ruan presentation: conjugacy class index -> class over O(rep), where
/// rep is the first element of the class.
struct CRClass {
  std::map<std::size_t, TensorClass> components;
  friend bool operator==(const CRClass&, const CRClass&) = default;
};

/// Doubled degree -> dimension.
using PoincarePolynomial = std::map<int, std::int64_t>;

/// Everything needed to multiply a g-component by an h-component.
struct PairData {
  std::size_t gh = 0;
  OrbitPartition joint;          // O(<g,h>)
  std::vector<int> from_g;       // O(g) -> O(<g,h>)
  std::vector<int> from_h;
  std::vector<int> from_gh;
  std::vector<int> defects;      // per block of joint
  bool vanishes = false;         // some e^defect is zero
  bool negative = false;         // epsilon(g,h) odd
  int defect_degree = 0;         // 2d * sum of defects
  TensorClass obstruction;
};

class OrbifoldRing {
public:
  /// The group acts on {0..n-1} with n = group.degree().
  OrbifoldRing(AlgebraPtr algebra, GroupTable group);
  static std::shared_ptr<OrbifoldRing> symmetric(AlgebraPtr algebra, int n, std::size_t bound = kDefaultGroupBound);

  [[nodiscard]] const FrobeniusAlgebra& algebra() const noexcept { return *alg_; }
  [[nodiscard]] const AlgebraPtr& algebra_ptr() const noexcept { return alg_; }
  [[nodiscard]] const GroupTable& group() const noexcept { return group_; }
  [[nodiscard]] int n() const noexcept { return group_.degree(); }
  [[nodiscard]] const OrbitPartition& orbits(std::size_t g) const { return orbits_[g]; }
  [[nodiscard]] int length(std::size_t g) const { return n() - static_cast<int>(orbits_[g].size()); }

  // Global basis: sectors in element order, tuples in lexicographic order.
  [[nodiscard]] std::size_t dim() const noexcept { return offsets_.back(); }
  [[nodiscard]] std::size_t sector_dim(std::size_t g) const { return offsets_[g + 1] - offsets_[g]; }
  [[nodiscard]] std::size_t offset(std::size_t g) const { return offsets_[g]; }
  [[nodiscard]] std::size_t sector_of(std::size_t index) const;
  [[nodiscard]] std::pair<std::size_t, Tuple> basis_element(std::size_t index) const;
  [[nodiscard]] std::size_t basis_index(std::size_t g, const Tuple& t) const;
  [[nodiscard]] OrbifoldClass basis_class(std::size_t index) const;
  /// 2 (cohomological degree + d l(g)).
  [[nodiscard]] int doubled_degree(std::size_t g, const Tuple& t) const;

  /// Throws std::invalid_argument unless x lives in this ring.
  void check(const OrbifoldClass& x) const;

  [[nodiscard]] const PairData& pair(std::size_t g, std::size_t h) const;
  /// c(g,h) over O(<g,h>).
  [[nodiscard]] TensorClass obstruction_class(std::size_t g, std::size_t h) const;

  /// Product of a g-component and an h-component; lands at gh.
  [[nodiscard]] TensorClass multiply_components(std::size_t g, const TensorClass& a, std::size_t h,
                                                const TensorClass& b, bool signed_product = false) const;
  [[nodiscard]] OrbifoldClass multiply(const OrbifoldClass& a, const OrbifoldClass& b,
                                       bool signed_product = false) const;
  /// Product of two basis elements as (global index, coefficient) pairs.
  [[nodiscard]] std::vector<std::pair<std::size_t, Rational>> multiply_basis(std::size_t a, std::size_t b,
                                                                             bool signed_product = false) const;

  [[nodiscard]] OrbifoldClass group_act(std::size_t h, const OrbifoldClass& x) const;
  [[nodiscard]] OrbifoldClass group_act(const Permutation& h, const OrbifoldClass& x) const;
  [[nodiscard]] OrbifoldClass symmetrize(const OrbifoldClass& x) const;
  [[nodiscard]] bool is_invariant(const OrbifoldClass& x) const;

  [[nodiscard]] Rational integral(const OrbifoldClass& x, bool quotient = false) const;
  [[nodiscard]] Rational pairing(const OrbifoldClass& a, const OrbifoldClass& b, bool quotient = false) const;
  /// Split by cohomological parity: (even, odd).
  [[nodiscard]] std::pair<OrbifoldClass, OrbifoldClass> even_odd_split(const OrbifoldClass& x) const;

  [[nodiscard]] std::size_t class_rep(std::size_t conj_class) const;
  [[nodiscard]] bool is_centralizer_invariant(std::size_t g, const TensorClass& x) const;
  [[nodiscard]] OrbifoldClass to_CR(const CRClass& x) const;
  [[nodiscard]] CRClass from_CR(const OrbifoldClass& x) const;
  [[nodiscard]] Rational cr_triple_pairing(const CRClass& a, const CRClass& b, const CRClass& c) const;

  /// Pushforward along phi: O(big) -> O(small) of a class over the smaller
  /// index set, assembled from cached single-fiber diagonals.
  [[nodiscard]] TensorClass push(std::span<const int> phi, const TensorClass& y) const;

private:
  // Relabel of a g-component by group element v, landing at v g v^-1.
  TensorClass transport(std::size_t v, std::size_t g, const TensorClass& x) const;
  const std::vector<std::pair<Tuple, Rational>>& diagonal(std::size_t k, std::size_t b) const;
  void multiply_tuples(const PairData& p, const Tuple& s, const Tuple& t, const Rational& coeff,
                       std::map<Tuple, Rational>& out) const;

  AlgebraPtr alg_;
  GroupTable group_;
  std::vector<OrbitPartition> orbits_;
  std::vector<std::size_t> offsets_;

  mutable std::mutex mu_;
  mutable std::unordered_map<std::uint64_t, std::unique_ptr<PairData>> pairs_;
  mutable std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<Tuple, Rational>>> diagonals_;
};

using RingPtr = std::shared_ptr<OrbifoldRing>;

/// Dimension of the G-invariant subspace in each doubled degree. With a
/// shift s, every key is lowered by 2s (the [s] shift of graded spaces).
/// Centralizer-invariant part of the g-sector, by doubled degree.
PoincarePolynomial sector_poincare(const OrbifoldRing& ring, std::size_t g);

PoincarePolynomial orbifold_poincare(const OrbifoldRing& ring, std::optional<int> shift = std::nullopt);

/// (ab)c = a(bc) over all basis triples or over seeded random ones.
AssocCertificate check_associativity(const OrbifoldRing& ring, const CheckOptions& opts);

struct SkewCertificate {
  bool signed_product = false;
  std::uint64_t seed = 0;
  std::uint64_t count = 0;  // pairs verified
  bool passed = true;
  std::optional<std::pair<OrbifoldClass, OrbifoldClass>> witness;  // (alpha, beta)
};

/// alpha . beta = (-1)^{|alpha||beta|} beta . alpha for seeded random pairs:
/// alpha a nonzero invariant class, beta homogeneous in one sector.
SkewCertificate check_skew_commutativity(const OrbifoldRing& ring, std::uint64_t seed, std::size_t samples,
                                         bool signed_product = false);

struct PairingReport {
  bool block_antidiagonal = true;
  bool nondegenerate = true;
  std::size_t rank = 0;
  std::size_t dim = 0;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

/// Gram matrix of the pairing on the full ring basis.
PairingReport check_pairing(const OrbifoldRing& ring);

} // namespace orbisym

#endif // ORBISYM_ORBIFOLD_HPP
