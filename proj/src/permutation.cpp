#include "orbisym/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace orbisym {

namespace {

class DisjointSet {
public:
  explicit DisjointSet(int n) : parent_(static_cast<std::size_t>(n)), rank_(static_cast<std::size_t>(n), 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int i) {
    while (parent_[static_cast<std::size_t>(i)] != i) {
      auto& p = parent_[static_cast<std::size_t>(i)];
      p = parent_[static_cast<std::size_t>(p)];
      i = p;
    }
    return i;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[static_cast<std::size_t>(a)] < rank_[static_cast<std::size_t>(b)]) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    if (rank_[static_cast<std::size_t>(a)] == rank_[static_cast<std::size_t>(b)]) ++rank_[static_cast<std::size_t>(a)];
  }

private:
  std::vector<int> parent_;
  std::vector<int> rank_;
};

void check_degree(int n) {
  if (n < 1 || n > kMaxDegree)
    throw std::invalid_argument("permutation degree must be in 1.." + std::to_string(kMaxDegree));
}

int count_orbits_inside(const Permutation& s, std::span<const int> orbit) {
  // Orbit is a union of <s>-cycles; count cycles by their least point.
  int count = 0;
  for (int start : orbit) {
    int x = s(start);
    bool least = true;
    while (x != start) {
      if (x < start) {
        least = false;
        break;
      }
      x = s(x);
    }
    if (least) ++count;
  }
  return count;
}

} // namespace

Permutation Permutation::identity(int n) {
  check_degree(n);
  Permutation p;
  p.n_ = static_cast<std::uint8_t>(n);
  for (int i = 0; i < n; ++i) p.img_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
  return p;
}

Permutation Permutation::from_images(std::span<const int> images) {
  const int n = static_cast<int>(images.size());
  check_degree(n);
  Permutation p;
  p.n_ = static_cast<std::uint8_t>(n);
  std::array<bool, kMaxDegree> seen{};
  for (int i = 0; i < n; ++i) {
    const int v = images[static_cast<std::size_t>(i)];
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("images do not form a bijection");
    seen[static_cast<std::size_t>(v)] = true;
    p.img_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
  }
  return p;
}

Permutation Permutation::parse(std::string_view text, int n) {
  check_degree(n);
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 0);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  const auto fail = [&](const std::string& why) {
    throw std::invalid_argument("bad cycle notation '" + std::string(text) + "': " + why);
  };
  std::size_t pos = 0;
  const auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  if (pos == text.size()) fail("empty");
  while (pos < text.size()) {
    if (text[pos] != '(') fail("expected '('");
    ++pos;
    std::vector<int> cycle;
    for (;;) {
      skip_ws();
      if (pos >= text.size()) fail("unterminated cycle");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (text[pos] == ',') {
        ++pos;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[pos]))) fail("expected a point");
      int v = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        v = v * 10 + (text[pos] - '0');
        if (v > n) fail("point out of range");
        ++pos;
      }
      if (v < 1) fail("points are one-based");
      if (used[static_cast<std::size_t>(v - 1)]) fail("point repeated");
      used[static_cast<std::size_t>(v - 1)] = true;
      cycle.push_back(v - 1);
    }
    for (std::size_t i = 0; i < cycle.size(); ++i)
      images[static_cast<std::size_t>(cycle[i])] = cycle[(i + 1) % cycle.size()];
    skip_ws();
  }
  return from_images(images);
}

bool Permutation::is_identity() const noexcept {
  for (int i = 0; i < n_; ++i)
    if (img_[static_cast<std::size_t>(i)] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.n_ = n_;
  for (int i = 0; i < n_; ++i) {
    const std::size_t j = img_[static_cast<std::size_t>(i)];
    if (j < kMaxDegree) p.img_[j] = static_cast<std::uint8_t>(i);
  }
  return p;
}

std::string Permutation::str() const {
  std::string out;
  std::array<bool, kMaxDegree> seen{};
  for (int i = 0; i < n_; ++i) {
    if (seen[static_cast<std::size_t>(i)] || (*this)(i) == i) continue;
    out += '(';
    int x = i;
    bool first = true;
    while (!seen[static_cast<std::size_t>(x)]) {
      seen[static_cast<std::size_t>(x)] = true;
      if (!first) out += ' ';
      out += std::to_string(x + 1);
      first = false;
      x = (*this)(x);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

std::vector<int> Permutation::images() const {
  return {img_.begin(), img_.begin() + n_};
}

std::size_t Permutation::hash() const noexcept {
  std::size_t h = n_;
  for (int i = 0; i < n_; ++i) h = h * 13u + img_[static_cast<std::size_t>(i)];
  return h;
}

Permutation compose(const Permutation& g, const Permutation& h) {
  if (g.degree() != h.degree()) throw std::invalid_argument("degree mismatch");
  std::vector<int> images(static_cast<std::size_t>(g.degree()));
  for (int i = 0; i < g.degree(); ++i) images[static_cast<std::size_t>(i)] = g(h(i));
  return Permutation::from_images(images);
}

OrbitPartition::OrbitPartition(std::vector<std::vector<int>> blocks, int n) : blocks_(std::move(blocks)), n_(n) {
  block_of_.assign(static_cast<std::size_t>(n), -1);
  for (auto& b : blocks_) {
    if (b.empty()) throw std::invalid_argument("empty block in partition");
    std::sort(b.begin(), b.end());
  }
  std::sort(blocks_.begin(), blocks_.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    for (int i : blocks_[k]) {
      if (i < 0 || i >= n || block_of_[static_cast<std::size_t>(i)] != -1)
        throw std::invalid_argument("blocks do not partition the point set");
      block_of_[static_cast<std::size_t>(i)] = static_cast<int>(k);
    }
  }
  for (int b : block_of_)
    if (b < 0) throw std::invalid_argument("blocks do not cover the point set");
}

std::vector<std::size_t> OrbitPartition::block_sizes() const {
  std::vector<std::size_t> sizes;
  sizes.reserve(blocks_.size());
  for (const auto& b : blocks_) sizes.push_back(b.size());
  return sizes;
}

bool OrbitPartition::refines(const OrbitPartition& coarser) const {
  if (coarser.n_ != n_) return false;
  for (const auto& b : blocks_)
    for (int i : b)
      if (coarser.block_of(i) != coarser.block_of(b.front())) return false;
  return true;
}

std::vector<int> OrbitPartition::map_into(const OrbitPartition& coarser) const {
  if (!refines(coarser)) throw std::invalid_argument("partition does not refine the target");
  std::vector<int> phi;
  phi.reserve(blocks_.size());
  for (const auto& b : blocks_) phi.push_back(coarser.block_of(b.front()));
  return phi;
}

OrbitPartition orbit_partition(std::span<const Permutation> gens, int n) {
  check_degree(n);
  DisjointSet ds(n);
  for (const auto& s : gens) {
    if (s.degree() != n) throw std::invalid_argument("degree mismatch");
    for (int i = 0; i < n; ++i) ds.unite(i, s(i));
  }
  std::vector<std::vector<int>> blocks;
  std::vector<int> slot(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    const int r = ds.find(i);
    if (slot[static_cast<std::size_t>(r)] < 0) {
      slot[static_cast<std::size_t>(r)] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[static_cast<std::size_t>(slot[static_cast<std::size_t>(r)])].push_back(i);
  }
  return OrbitPartition(std::move(blocks), n);
}

OrbitPartition orbit_partition(const Permutation& g) {
  return orbit_partition(std::span<const Permutation>(&g, 1), g.degree());
}

OrbitPartition orbit_partition(const Permutation& g, const Permutation& h) {
  const std::array<Permutation, 2> gens{g, h};
  return orbit_partition(gens, g.degree());
}

int min_transpositions(const Permutation& g) {
  return g.degree() - static_cast<int>(orbit_partition(g).size());
}

Rational age(const Permutation& g, int d) { return Rational(d * min_transpositions(g), 2); }

int graph_defect(const Permutation& g, const Permutation& h, std::span<const int> orbit) {
  if (orbit.empty()) throw std::invalid_argument("empty orbit");
  const auto joint = orbit_partition(g, h);
  const int b = joint.block_of(orbit.front());
  const auto& block = joint.block(static_cast<std::size_t>(b));
  std::vector<int> sorted(orbit.begin(), orbit.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted != block) throw std::invalid_argument("not an orbit of <g,h>");
  const Permutation gh = compose(g, h);
  const int twice = static_cast<int>(block.size()) + 2 - count_orbits_inside(g, block) -
                    count_orbits_inside(h, block) - count_orbits_inside(gh, block);
  if (twice < 0 || twice % 2 != 0) throw std::logic_error("graph defect is not a nonnegative integer");
  return twice / 2;
}

} // namespace orbisym
