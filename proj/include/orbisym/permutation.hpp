#ifndef ORBISYM_PERMUTATION_HPP
#define ORBISYM_PERMUTATION_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "orbisym/rational.hpp"

namespace orbisym {

inline constexpr int kMaxDegree = 12;

/// A permutation of {0, ..., n-1}. Points are zero-based in the C++ API and
/// one-based in cycle notation text.
class Permutation {
public:
  Permutation() = default;

  static Permutation identity(int n);
  /// Builds from zero-based images; throws std::invalid_argument unless a bijection.
  static Permutation from_images(std::span<const int> images);
  /// Parses cycle notation such as "(1 2)(3 4)" or "()" on n points.
  static Permutation parse(std::string_view text, int n);

  [[nodiscard]] int degree() const noexcept { return n_; }
  [[nodiscard]] int operator()(int i) const noexcept { return img_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] bool is_identity() const noexcept;
  [[nodiscard]] Permutation inverse() const;
  /// Canonical cycle notation: cycles start at their least point, ordered by it.
  [[nodiscard]] std::string str() const;
  [[nodiscard]] std::vector<int> images() const;

  friend bool operator==(const Permutation& a, const Permutation& b) noexcept {
    return a.n_ == b.n_ && a.img_ == b.img_;
  }
  friend bool operator<(const Permutation& a, const Permutation& b) noexcept {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.img_ < b.img_;
  }

  [[nodiscard]] std::size_t hash() const noexcept;

private:
  std::array<std::uint8_t, kMaxDegree> img_{};
  std::uint8_t n_ = 0;
};

/// (gh)(i) = g(h(i)). Throws std::invalid_argument("degree mismatch").
Permutation compose(const Permutation& g, const Permutation& h);
inline Permutation operator*(const Permutation& g, const Permutation& h) { return compose(g, h); }

/// Set partition of {0..n-1}; blocks sorted internally and ordered by least element.
class OrbitPartition {
public:
  OrbitPartition() = default;
  explicit OrbitPartition(std::vector<std::vector<int>> blocks, int n);

  [[nodiscard]] int degree() const noexcept { return n_; }
  [[nodiscard]] std::size_t size() const noexcept { return blocks_.size(); }
  [[nodiscard]] const std::vector<std::vector<int>>& blocks() const noexcept { return blocks_; }
  [[nodiscard]] const std::vector<int>& block(std::size_t i) const { return blocks_[i]; }
  /// Index of the block containing point i.
  [[nodiscard]] int block_of(int i) const { return block_of_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] std::vector<std::size_t> block_sizes() const;
  /// True when every block of this partition lies inside a block of `coarser`.
  [[nodiscard]] bool refines(const OrbitPartition& coarser) const;
  /// The map (block index here) -> (block index in `coarser`). Requires refines().
  [[nodiscard]] std::vector<int> map_into(const OrbitPartition& coarser) const;

  friend bool operator==(const OrbitPartition& a, const OrbitPartition& b) noexcept {
    return a.n_ == b.n_ && a.blocks_ == b.blocks_;
  }

private:
  std::vector<std::vector<int>> blocks_;
  std::vector<int> block_of_;
  int n_ = 0;
};

/// Orbits of the subgroup generated by `gens` on n points (union-find over all i ~ s(i)).
OrbitPartition orbit_partition(std::span<const Permutation> gens, int n);
OrbitPartition orbit_partition(const Permutation& g);
OrbitPartition orbit_partition(const Permutation& g, const Permutation& h);

/// l(g) = n - |O(g)|.
int min_transpositions(const Permutation& g);

/// Age d * l(g) / 2 of a permutation acting on S^n with dim S = d.
Rational age(const Permutation& g, int d);

/// Per-orbit graph defect (|o| + 2 - k_g - k_h - k_gh) / 2, where k_s counts the
/// <s>-orbits inside o. Throws std::invalid_argument when o is not a <g,h>-orbit.
int graph_defect(const Permutation& g, const Permutation& h, std::span<const int> orbit);

} // namespace orbisym

template <>
struct std::hash<orbisym::Permutation> {
  std::size_t operator()(const orbisym::Permutation& p) const noexcept { return p.hash(); }
};

#endif // ORBISYM_PERMUTATION_HPP
