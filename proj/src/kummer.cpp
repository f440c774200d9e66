#include "orbisym/kummer.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

namespace orbisym {

int m_of(std::span<const Permutation> gens, int n) {
  int m = 0;
  for (const auto sz : orbit_partition(gens, n).block_sizes()) m = std::gcd(m, static_cast<int>(sz));
  return m;
}

int m_of(const Permutation& g) {
  const Permutation gens[] = {g};
  return m_of(gens, g.degree());
}

std::int64_t division_count_1(int M, int mg, int mh, int mgh, int x, int y, int z) {
  if (M <= 0 || M % mg != 0 || M % mh != 0 || M % mgh != 0) throw std::logic_error("modulus does not divide m(<g,h>)");
  if (x < 0 || x >= mg || y < 0 || y >= mh || z < 0 || z >= mgh) throw std::logic_error("residue not reduced");
  std::int64_t count = 0;
  for (int a = 0; a < M; ++a)
    if (a % mg == x && a % mh == y && a % mgh == z) ++count;
  return count;
}

std::int64_t division_count(const Permutation& g, const Permutation& h, const Torsion& x, const Torsion& y,
                            const Torsion& z) {
  if (x.size() != y.size() || x.size() != z.size()) throw std::invalid_argument("torsion ranks differ");
  const Permutation gens[] = {g, h};
  const int M = m_of(gens, g.degree());
  const int mg = m_of(g), mh = m_of(h), mgh = m_of(compose(g, h));
  std::int64_t out = 1;
  for (std::size_t i = 0; i < x.size() && out != 0; ++i) out *= division_count_1(M, mg, mh, mgh, x[i], y[i], z[i]);
  return out;
}

// ---- KummerClass ----

KummerClass KummerClass::single(std::size_t g, Torsion y, TensorClass x) {
  KummerClass out;
  out.add(KummerKey{g, std::move(y)}, x);
  return out;
}

const TensorClass* KummerClass::component(const KummerKey& k) const {
  const auto it = comps_.find(k);
  return it == comps_.end() ? nullptr : &it->second;
}

void KummerClass::add(const KummerKey& k, const TensorClass& x) {
  if (x.is_zero()) return;
  auto it = comps_.find(k);
  if (it == comps_.end()) {
    comps_.emplace(k, x);
    return;
  }
  it->second += x;
  if (it->second.is_zero()) comps_.erase(it);
}

KummerClass& KummerClass::operator+=(const KummerClass& o) {
  for (const auto& [k, x] : o.comps_) add(k, x);
  return *this;
}

KummerClass& KummerClass::operator*=(const Rational& c) {
  if (c.is_zero()) {
    comps_.clear();
    return *this;
  }
  for (auto& [k, x] : comps_) x *= c;
  return *this;
}

// ---- KummerRing ----

KummerRing::KummerRing(int n, int r, std::size_t bound)
    : r_(r), base_(OrbifoldRing::symmetric(builtin_algebra("abelian"), n, bound)) {
  if (r < 0 || r > 8) throw std::invalid_argument("torsion rank must be in [0, 8]");
  const auto& group = base_->group();
  offsets_.push_back(0);
  for (std::size_t g = 0; g < group.order(); ++g) {
    m_.push_back(m_of(group.element(g)));
    std::size_t p = 1;
    for (int i = 0; i < r; ++i) p *= static_cast<std::size_t>(m_.back());
    points_.push_back(p);
    offsets_.push_back(offsets_.back() + p * base_->sector_dim(g));
  }
}

Torsion KummerRing::point(std::size_t g, std::size_t code) const {
  Torsion y(static_cast<std::size_t>(r_));
  const auto m = static_cast<std::size_t>(m_[g]);
  for (auto& v : y) {
    v = static_cast<int>(code % m);
    code /= m;
  }
  return y;
}

std::size_t KummerRing::point_code(std::size_t g, const Torsion& y) const {
  if (y.size() != static_cast<std::size_t>(r_)) throw std::invalid_argument("torsion rank mismatch");
  std::size_t code = 0;
  for (std::size_t i = y.size(); i-- > 0;) {
    if (y[i] < 0 || y[i] >= m_[g]) throw std::invalid_argument("torsion residue not reduced mod m(g)");
    code = code * static_cast<std::size_t>(m_[g]) + static_cast<std::size_t>(y[i]);
  }
  return code;
}

std::size_t KummerRing::basis_index(const KummerKey& k, const Tuple& t) const {
  const std::size_t local = base_->basis_index(k.g, t) - base_->offset(k.g);
  return offsets_[k.g] + point_code(k.g, k.y) * base_->sector_dim(k.g) + local;
}

std::pair<KummerKey, Tuple> KummerRing::basis_element(std::size_t index) const {
  if (index >= dim()) throw std::out_of_range("basis index out of range");
  const std::size_t g =
      static_cast<std::size_t>(std::upper_bound(offsets_.begin(), offsets_.end(), index) - offsets_.begin()) - 1;
  const std::size_t local = index - offsets_[g], sd = base_->sector_dim(g);
  auto [sector, t] = base_->basis_element(base_->offset(g) + local % sd);
  return {KummerKey{g, point(g, local / sd)}, t};
}

KummerClass KummerRing::basis_class(std::size_t index) const {
  const auto [k, t] = basis_element(index);
  return KummerClass::single(k.g, k.y, TensorClass::basis(t));
}

void KummerRing::check(const KummerClass& x) const {
  for (const auto& [k, comp] : x.components()) {
    if (k.g >= base_->group().order()) throw std::invalid_argument("class does not belong to this ring");
    (void)point_code(k.g, k.y);
    base_->check(OrbifoldClass::single(k.g, comp));
  }
}

const std::vector<std::int64_t>& KummerRing::division_table(std::size_t g, std::size_t h) const {
  const std::lock_guard lock(mu_);
  auto [it, fresh] = counts_.try_emplace((static_cast<std::uint64_t>(g) << 32) | h);
  if (!fresh) return it->second;
  const auto& group = base_->group();
  const std::size_t gh = group.multiply(g, h);
  const Permutation gens[] = {group.element(g), group.element(h)};
  const int M = m_of(gens, n());
  const int mg = m_[g], mh = m_[h], mgh = m_[gh];
  // per-coordinate table, then products over the r coordinates
  std::vector<std::int64_t> one(static_cast<std::size_t>(mg * mh * mgh));
  for (int x = 0; x < mg; ++x)
    for (int y = 0; y < mh; ++y)
      for (int z = 0; z < mgh; ++z)
        one[static_cast<std::size_t>((x * mh + y) * mgh + z)] = division_count_1(M, mg, mh, mgh, x, y, z);
  auto& table = it->second;
  table.assign(points_[g] * points_[h] * points_[gh], 1);
  for (std::size_t cx = 0; cx < points_[g]; ++cx)
    for (std::size_t cy = 0; cy < points_[h]; ++cy)
      for (std::size_t cz = 0; cz < points_[gh]; ++cz) {
        const auto x = point(g, cx), y = point(h, cy), z = point(gh, cz);
        std::int64_t v = 1;
        for (int i = 0; i < r_ && v != 0; ++i) {
          const auto j = static_cast<std::size_t>(i);
          v *= one[static_cast<std::size_t>((x[j] * mh + y[j]) * mgh + z[j])];
        }
        table[(cx * points_[h] + cy) * points_[gh] + cz] = v;
      }
  return table;
}

KummerClass KummerRing::multiply(const KummerClass& a, const KummerClass& b) const {
  check(a);
  check(b);
  const auto& group = base_->group();
  KummerClass out;
  for (const auto& [ka, xa] : a.components())
    for (const auto& [kb, xb] : b.components()) {
      const TensorClass prod = base_->multiply_components(ka.g, xa, kb.g, xb, false);
      if (prod.is_zero()) continue;
      const std::size_t gh = group.multiply(ka.g, kb.g);
      const auto& table = division_table(ka.g, kb.g);
      const std::size_t cx = point_code(ka.g, ka.y), cy = point_code(kb.g, kb.y);
      for (std::size_t cz = 0; cz < points_[gh]; ++cz) {
        const std::int64_t c = table[(cx * points_[kb.g] + cy) * points_[gh] + cz];
        if (c != 0) out.add(KummerKey{gh, point(gh, cz)}, prod * Rational(c));
      }
    }
  return out;
}

std::vector<std::pair<std::size_t, Rational>> KummerRing::multiply_basis(std::size_t a, std::size_t b) const {
  const auto sector_point = [&](std::size_t index) {
    const std::size_t g =
        static_cast<std::size_t>(std::upper_bound(offsets_.begin(), offsets_.end(), index) - offsets_.begin()) - 1;
    const std::size_t local = index - offsets_[g], sd = base_->sector_dim(g);
    return std::array<std::size_t, 3>{g, local / sd, base_->offset(g) + local % sd};
  };
  const auto [g, cx, ia] = sector_point(a);
  const auto [h, cy, ib] = sector_point(b);
  const auto prod = base_->multiply_basis(ia, ib, false);
  std::vector<std::pair<std::size_t, Rational>> out;
  if (prod.empty()) return out;
  const std::size_t gh = base_->group().multiply(g, h);
  const auto& table = division_table(g, h);
  const std::size_t sd = base_->sector_dim(gh);
  for (std::size_t cz = 0; cz < points_[gh]; ++cz) {
    const std::int64_t c = table[(cx * points_[h] + cy) * points_[gh] + cz];
    if (c == 0) continue;
    for (const auto& [idx, v] : prod) out.emplace_back(offsets_[gh] + cz * sd + (idx - base_->offset(gh)), v * Rational(c));
  }
  return out;
}

KummerClass KummerRing::group_act(std::size_t h, const KummerClass& x) const {
  check(x);
  KummerClass out;
  for (const auto& [k, comp] : x.components()) {
    const auto moved = base_->group_act(h, OrbifoldClass::single(k.g, comp));
    for (const auto& [g2, c2] : moved.components()) out.add(KummerKey{g2, k.y}, c2);
  }
  return out;
}

// ---- Poincare ----

KummerPoincare kummer_poincare(const KummerRing& ring) {
  const auto& base = ring.base();
  KummerPoincare out;
  for (std::size_t cls = 0; cls < base.group().conjugacy_classes().size(); ++cls) {
    const std::size_t g = base.class_rep(cls);
    for (const auto& [deg, dim] : sector_poincare(base, g))
      out.raw[deg] += dim * static_cast<std::int64_t>(ring.points(g));
  }
  // divide by (1+t)^4 = 1 + 4t + 6t^2 + 4t^3 + t^4, t = doubled key 2
  if (out.raw.empty()) return out;
  const int top = out.raw.rbegin()->first / 2;
  std::vector<std::int64_t> rem(static_cast<std::size_t>(top + 1));
  for (const auto& [deg, dim] : out.raw) {
    if (deg % 2 != 0 || deg < 0) throw std::logic_error("unexpected Poincare key");
    rem[static_cast<std::size_t>(deg / 2)] = dim;
  }
  constexpr std::int64_t binom[] = {1, 4, 6, 4, 1};
  for (int k = 0; k + 4 <= top; ++k) {
    const std::int64_t q = rem[static_cast<std::size_t>(k)];
    if (q == 0) continue;
    for (int j = 0; j <= 4; ++j) rem[static_cast<std::size_t>(k + j)] -= q * binom[j];
    out.reduced[2 * k] = q;
  }
  if (std::any_of(rem.begin(), rem.end(), [](std::int64_t v) { return v != 0; }))
    throw std::logic_error("Poincare polynomial not divisible by (1+t)^4");
  return out;
}

KummerPoincare kummer_poincare(int n, int r) { return kummer_poincare(KummerRing(n, r)); }

AssocCertificate check_associativity(const KummerRing& ring, const CheckOptions& opts) {
  if (opts.signed_product) throw std::invalid_argument("the Kummer ring has no signed variant");
  if (opts.exhaustive) {
    if (ring.dim() > opts.max_dim) throw std::invalid_argument("ring dimension exceeds exhaustive bound");
    const auto order = ring.base().group().order();
    for (std::size_t g = 0; g < order; ++g)
      for (std::size_t h = 0; h < order; ++h) {
        (void)ring.base().pair(g, h);
        (void)ring.division_table(g, h);
      }
  }
  return check_associativity(ring.dim(), [&](std::size_t a, std::size_t b) { return ring.multiply_basis(a, b); }, opts);
}

} // namespace orbisym
