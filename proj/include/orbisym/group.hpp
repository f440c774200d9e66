#ifndef ORBISYM_GROUP_HPP
#define ORBISYM_GROUP_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "orbisym/permutation.hpp"

namespace orbisym {

inline constexpr std::size_t kDefaultGroupBound = 50000;

/// An explicitly enumerated subgroup of S_n. Element 0 is the identity; the
/// remaining elements appear in breadth-first order from the generators.
class GroupTable {
public:
  [[nodiscard]] int degree() const noexcept { return n_; }
  [[nodiscard]] std::size_t order() const noexcept { return elements_.size(); }
  [[nodiscard]] const std::vector<Permutation>& elements() const noexcept { return elements_; }
  [[nodiscard]] const Permutation& element(std::size_t i) const { return elements_[i]; }
  [[nodiscard]] const std::vector<Permutation>& generators() const noexcept { return generators_; }

  [[nodiscard]] std::optional<std::size_t> find(const Permutation& p) const;
  /// Like find() but throws std::invalid_argument("element not in group").
  [[nodiscard]] std::size_t index_of(const Permutation& p) const;

  [[nodiscard]] std::size_t multiply(std::size_t a, std::size_t b) const;
  [[nodiscard]] std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  /// Index of v g v^-1.
  [[nodiscard]] std::size_t conjugate(std::size_t v, std::size_t g) const;

  [[nodiscard]] const std::vector<std::vector<std::size_t>>& conjugacy_classes() const noexcept { return classes_; }
  [[nodiscard]] std::size_t class_of(std::size_t g) const { return class_of_[g]; }
  [[nodiscard]] std::size_t centralizer_order(std::size_t g) const { return centralizer_order_[g]; }
  /// First element v (in element order) with v g v^-1 = h.
  [[nodiscard]] std::optional<std::size_t> conjugator(std::size_t g, std::size_t h) const;
  [[nodiscard]] bool is_abelian() const noexcept { return classes_.size() == elements_.size(); }

private:
  friend GroupTable close_subgroup(std::span<const Permutation>, int, std::size_t);

  int n_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, std::size_t> index_;
  std::vector<std::size_t> inverse_;
  std::vector<std::uint32_t> table_; // dense product table when small enough
  std::vector<std::vector<std::size_t>> classes_;
  std::vector<std::size_t> class_of_;
  std::vector<std::size_t> centralizer_order_;
};

/// Breadth-first closure of <gens> in S_n. Throws std::length_error("group too large")
/// once more than `bound` elements appear.
GroupTable close_subgroup(std::span<const Permutation> gens, int n, std::size_t bound = kDefaultGroupBound);

/// S_n generated by (1 2) and (1 2 ... n).
GroupTable symmetric_group(int n, std::size_t bound = kDefaultGroupBound);

} // namespace orbisym

#endif // ORBISYM_GROUP_HPP
