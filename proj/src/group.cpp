#include "orbisym/group.hpp"

#include <deque>
#include <stdexcept>

namespace orbisym {

std::optional<std::size_t> GroupTable::find(const Permutation& p) const {
  const auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t GroupTable::index_of(const Permutation& p) const {
  if (auto i = find(p)) return *i;
  throw std::invalid_argument("element not in group");
}

std::size_t GroupTable::multiply(std::size_t a, std::size_t b) const {
  if (!table_.empty()) return table_[a * elements_.size() + b];
  return index_.at(compose(elements_[a], elements_[b]));
}

std::size_t GroupTable::conjugate(std::size_t v, std::size_t g) const {
  return multiply(multiply(v, g), inverse_[v]);
}

std::optional<std::size_t> GroupTable::conjugator(std::size_t g, std::size_t h) const {
  if (class_of_[g] != class_of_[h]) return std::nullopt;
  for (std::size_t v = 0; v < elements_.size(); ++v)
    if (conjugate(v, g) == h) return v;
  return std::nullopt;
}

GroupTable close_subgroup(std::span<const Permutation> gens, int n, std::size_t bound) {
  GroupTable t;
  t.n_ = n;
  for (const auto& g : gens) {
    if (g.degree() != n) throw std::invalid_argument("degree mismatch");
    if (!g.is_identity()) t.generators_.push_back(g);
  }
  const auto add = [&](const Permutation& p) {
    if (t.index_.contains(p)) return false;
    if (t.elements_.size() >= bound) throw std::length_error("group too large");
    t.index_.emplace(p, t.elements_.size());
    t.elements_.push_back(p);
    return true;
  };
  add(Permutation::identity(n));
  for (std::size_t head = 0; head < t.elements_.size(); ++head) {
    for (const auto& s : t.generators_) {
      add(compose(s, t.elements_[head]));
    }
  }

  const std::size_t order = t.elements_.size();
  if (order <= 1024) {
    t.table_.resize(order * order);
    for (std::size_t a = 0; a < order; ++a)
      for (std::size_t b = 0; b < order; ++b)
        t.table_[a * order + b] = static_cast<std::uint32_t>(t.index_.at(compose(t.elements_[a], t.elements_[b])));
  }
  t.inverse_.resize(order);
  for (std::size_t a = 0; a < order; ++a) t.inverse_[a] = t.index_.at(t.elements_[a].inverse());

  // Conjugacy classes as orbits of conjugation by the generators.
  std::vector<std::size_t> gen_idx;
  for (const auto& s : t.generators_) gen_idx.push_back(t.index_.at(s));
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  t.class_of_.assign(order, unset);
  for (std::size_t start = 0; start < order; ++start) {
    if (t.class_of_[start] != unset) continue;
    const std::size_t cls = t.classes_.size();
    t.classes_.push_back({start});
    t.class_of_[start] = cls;
    for (std::size_t head = 0; head < t.classes_[cls].size(); ++head) {
      const std::size_t x = t.classes_[cls][head];
      for (std::size_t s : gen_idx) {
        const std::size_t y = t.conjugate(s, x);
        if (t.class_of_[y] == unset) {
          t.class_of_[y] = cls;
          t.classes_[cls].push_back(y);
        }
      }
    }
  }
  t.centralizer_order_.resize(order);
  for (std::size_t a = 0; a < order; ++a) t.centralizer_order_[a] = order / t.classes_[t.class_of_[a]].size();
  return t;
}

GroupTable symmetric_group(int n, std::size_t bound) {
  std::vector<Permutation> gens;
  if (n >= 2) {
    std::vector<int> swap(static_cast<std::size_t>(n)), cycle(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      swap[static_cast<std::size_t>(i)] = i;
      cycle[static_cast<std::size_t>(i)] = (i + 1) % n;
    }
    std::swap(swap[0], swap[1]);
    gens.push_back(Permutation::from_images(swap));
    gens.push_back(Permutation::from_images(cycle));
  }
  return close_subgroup(gens, n, bound);
}

} // namespace orbisym
