#ifndef ORBISYM_KUMMER_HPP
#define ORBISYM_KUMMER_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "orbisym/assoc.hpp"
#include "orbisym/orbifold.hpp"

namespace orbisym {

/// gcd of the orbit sizes of <gens> on {0..n-1}.
int m_of(std::span<const Permutation> gens, int n);
int m_of(const Permutation& g);

/// Division point of S[m], one residue in [0, m) per coordinate.
using Torsion = std::vector<int>;

/// n_{g,h}(x, y, z): number of w in (Z/M)^r with M = m(<g,h>) reducing to x
/// mod m(g), to y mod m(h) and to z mod m(gh), counted per coordinate.
std::int64_t division_count(const Permutation& g, const Permutation& h, const Torsion& x, const Torsion& y,
                            const Torsion& z);

/// One coordinate of division_count.
std::int64_t division_count_1(int M, int mg, int mh, int mgh, int x, int y, int z);

struct KummerKey {
  std::size_t g = 0;
  Torsion y;
  friend auto operator<=>(const KummerKey&, const KummerKey&) = default;
  friend bool operator==(const KummerKey&, const KummerKey&) = default;
};

/// Element of H*(S) x H*(S_0^n, S_n): (g, y in S[m(g)]) -> class over O(g).
class KummerClass {
public:
  using Components = std::map<KummerKey, TensorClass>;

  KummerClass() = default;
  static KummerClass single(std::size_t g, Torsion y, TensorClass x);

  [[nodiscard]] const Components& components() const noexcept { return comps_; }
  [[nodiscard]] bool is_zero() const noexcept { return comps_.empty(); }
  [[nodiscard]] const TensorClass* component(const KummerKey& k) const;

  void add(const KummerKey& k, const TensorClass& x);
  KummerClass& operator+=(const KummerClass& o);
  KummerClass& operator*=(const Rational& c);
  friend KummerClass operator+(KummerClass a, const KummerClass& b) { return a += b; }
  friend KummerClass operator*(KummerClass a, const Rational& c) { return a *= c; }
  friend bool operator==(const KummerClass&, const KummerClass&) = default;

private:
  Components comps_;
};

/// The ring over the abelian built-in (e = 0) with torsion rank r.
class KummerRing {
public:
  explicit KummerRing(int n, int r = 4, std::size_t bound = kDefaultGroupBound);

  [[nodiscard]] int n() const noexcept { return base_->n(); }
  [[nodiscard]] int rank() const noexcept { return r_; }
  /// The e = 0 orbifold ring carrying the tensor parts.
  [[nodiscard]] const OrbifoldRing& base() const noexcept { return *base_; }
  [[nodiscard]] int m(std::size_t g) const { return m_[g]; }
  /// |S[m(g)]| = m(g)^r.
  [[nodiscard]] std::size_t points(std::size_t g) const { return points_[g]; }

  // Global basis: sectors in element order, then torsion points in
  // little-endian residue order, then the sector basis of the base ring.
  [[nodiscard]] std::size_t dim() const noexcept { return offsets_.back(); }
  [[nodiscard]] std::size_t basis_index(const KummerKey& k, const Tuple& t) const;
  [[nodiscard]] std::pair<KummerKey, Tuple> basis_element(std::size_t index) const;
  [[nodiscard]] KummerClass basis_class(std::size_t index) const;
  [[nodiscard]] Torsion point(std::size_t g, std::size_t code) const;
  [[nodiscard]] std::size_t point_code(std::size_t g, const Torsion& y) const;

  /// Throws std::invalid_argument unless x lives in this ring.
  void check(const KummerClass& x) const;

  [[nodiscard]] KummerClass multiply(const KummerClass& a, const KummerClass& b) const;
  [[nodiscard]] std::vector<std::pair<std::size_t, Rational>> multiply_basis(std::size_t a, std::size_t b) const;
  [[nodiscard]] KummerClass group_act(std::size_t h, const KummerClass& x) const;

  /// n_{g,h} indexed by (code x * points(h) + code y) * points(gh) + code z.
  [[nodiscard]] const std::vector<std::int64_t>& division_table(std::size_t g, std::size_t h) const;

private:

  int r_;
  RingPtr base_;
  std::vector<int> m_;
  std::vector<std::size_t> points_;
  std::vector<std::size_t> offsets_;  // per sector, then dim
  mutable std::mutex mu_;
  mutable std::unordered_map<std::uint64_t, std::vector<std::int64_t>> counts_;
};

struct KummerPoincare {
  PoincarePolynomial raw;      // H*(S) x H*(S_0^n, S_n)
  PoincarePolynomial reduced;  // raw / (1+t)^4 with t in ordinary degree
};

/// Invariant Poincare polynomial in doubled degrees.
KummerPoincare kummer_poincare(int n, int r = 4);
KummerPoincare kummer_poincare(const KummerRing& ring);

AssocCertificate check_associativity(const KummerRing& ring, const CheckOptions& opts);

} // namespace orbisym

#endif // ORBISYM_KUMMER_HPP
