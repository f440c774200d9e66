#include "orbisym/orbifold.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace orbisym {

// ---- OrbifoldClass ----

OrbifoldClass OrbifoldClass::single(std::size_t g, TensorClass x) {
  OrbifoldClass out;
  out.add(g, x);
  return out;
}

const TensorClass* OrbifoldClass::component(std::size_t g) const {
  const auto it = comps_.find(g);
  return it == comps_.end() ? nullptr : &it->second;
}

void OrbifoldClass::add(std::size_t g, const TensorClass& x) {
  if (x.is_zero()) return;
  auto [it, inserted] = comps_.try_emplace(g, x);
  if (!inserted) {
    it->second += x;
    if (it->second.is_zero()) comps_.erase(it);
  }
}

void OrbifoldClass::add(std::size_t g, const Tuple& t, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = comps_.try_emplace(g, TensorClass(t.size()));
  it->second.add(t, c);
  if (it->second.is_zero()) comps_.erase(it);
}

OrbifoldClass& OrbifoldClass::operator+=(const OrbifoldClass& o) {
  for (const auto& [g, x] : o.comps_) add(g, x);
  return *this;
}

OrbifoldClass& OrbifoldClass::operator-=(const OrbifoldClass& o) {
  for (const auto& [g, x] : o.comps_) add(g, x * Rational(-1));
  return *this;
}

OrbifoldClass& OrbifoldClass::operator*=(const Rational& c) {
  if (c.is_zero()) {
    comps_.clear();
    return *this;
  }
  for (auto& [g, x] : comps_) x *= c;
  return *this;
}

// ---- term-level helpers ----

namespace {

using Terms = std::vector<std::pair<Tuple, Rational>>;
using Slot = std::vector<std::pair<std::size_t, Rational>>;

bool is_identity_map(std::span<const int> phi, std::size_t target) {
  if (phi.size() != target) return false;
  for (std::size_t i = 0; i < phi.size(); ++i)
    if (phi[i] != static_cast<int>(i)) return false;
  return true;
}

Slot to_slot(const SparseVec& v) { return Slot(v.begin(), v.end()); }

Slot slot_mul(const FrobeniusAlgebra& alg, const Slot& a, std::size_t b) {
  SparseVec acc;
  for (const auto& [i, c] : a) axpy(acc, c, alg.product(i, b));
  return to_slot(acc);
}

// Calls f(tuple, coeff) for every term of c * (slot_0 (x) slot_1 (x) ...).
template <class F>
void expand(const std::vector<const Slot*>& slots, const Rational& c, F&& f) {
  const std::size_t k = slots.size();
  Tuple t(k);
  if (k == 0) {
    f(t, c);
    return;
  }
  for (const auto* s : slots)
    if (s->empty()) return;
  std::vector<std::size_t> pos(k, 0);
  std::vector<Rational> prefix(k + 1);
  prefix[0] = c;
  std::size_t level = 0;
  for (;;) {
    if (pos[level] == slots[level]->size()) {
      if (level == 0) return;
      pos[level] = 0;
      --level;
      ++pos[level];
      continue;
    }
    const auto& [idx, v] = (*slots[level])[pos[level]];
    t.set(level, idx);
    prefix[level + 1] = prefix[level] * v;
    if (level + 1 == k) {
      f(t, prefix[k]);
      ++pos[level];
    } else {
      ++level;
    }
  }
}

// Restriction of one basis tuple along phi: I -> J.
Terms pull_tuple(const FrobeniusAlgebra& alg, std::span<const int> phi, std::size_t target, const Tuple& s) {
  if (is_identity_map(phi, target)) return {{s, Rational(1)}};
  int parity = 0;
  if (alg.has_odd())
    for (std::size_t i = 0; i < s.size(); ++i)
      if (alg.odd(s[i]))
        for (std::size_t j = i + 1; j < s.size(); ++j)
          if (alg.odd(s[j]) && phi[i] > phi[j]) parity ^= 1;
  std::vector<Slot> fibers(target);
  std::vector<bool> started(target, false);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto j = static_cast<std::size_t>(phi[i]);
    if (!started[j]) {
      fibers[j] = {{s[i], Rational(1)}};
      started[j] = true;
    } else {
      fibers[j] = slot_mul(alg, fibers[j], s[i]);
      if (fibers[j].empty()) return {};
    }
  }
  std::vector<const Slot*> ptrs;
  for (const auto& f : fibers) ptrs.push_back(&f);
  Terms out;
  expand(ptrs, Rational(parity ? -1 : 1), [&](const Tuple& t, const Rational& c) { out.emplace_back(t, c); });
  return out;
}

int mul_sign(const FrobeniusAlgebra& alg, const Tuple& a, const Tuple& b) {
  if (!alg.has_odd()) return 1;
  int parity = 0, odd_after = 0;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (alg.odd(b[i])) parity ^= odd_after & 1;
    if (alg.odd(a[i])) ++odd_after;
  }
  return parity ? -1 : 1;
}

std::uint64_t pair_key(std::size_t g, std::size_t h) { return (static_cast<std::uint64_t>(g) << 32) | h; }

} // namespace

// ---- OrbifoldRing ----

OrbifoldRing::OrbifoldRing(AlgebraPtr algebra, GroupTable group) : alg_(std::move(algebra)), group_(std::move(group)) {
  if (!alg_) throw std::invalid_argument("null algebra");
  const std::size_t order = group_.order();
  orbits_.reserve(order);
  offsets_.assign(1, 0);
  for (std::size_t g = 0; g < order; ++g) {
    orbits_.push_back(orbit_partition(group_.element(g)));
    std::size_t size = 1;
    for (std::size_t k = 0; k < orbits_.back().size(); ++k) size *= alg_->dim();
    offsets_.push_back(offsets_.back() + size);
  }
}

std::shared_ptr<OrbifoldRing> OrbifoldRing::symmetric(AlgebraPtr algebra, int n, std::size_t bound) {
  return std::make_shared<OrbifoldRing>(std::move(algebra), symmetric_group(n, bound));
}

std::size_t OrbifoldRing::sector_of(std::size_t index) const {
  if (index >= dim()) throw std::out_of_range("basis index out of range");
  return static_cast<std::size_t>(std::upper_bound(offsets_.begin(), offsets_.end(), index) - offsets_.begin()) - 1;
}

std::pair<std::size_t, Tuple> OrbifoldRing::basis_element(std::size_t index) const {
  const std::size_t g = sector_of(index);
  std::size_t local = index - offsets_[g];
  const std::size_t k = orbits_[g].size();
  Tuple t(k);
  for (std::size_t i = k; i-- > 0;) {
    t.set(i, local % alg_->dim());
    local /= alg_->dim();
  }
  return {g, t};
}

std::size_t OrbifoldRing::basis_index(std::size_t g, const Tuple& t) const {
  if (t.size() != orbits_[g].size()) throw std::invalid_argument("tuple does not match the sector");
  std::size_t local = 0;
  for (std::size_t i = 0; i < t.size(); ++i) local = local * alg_->dim() + t[i];
  return offsets_[g] + local;
}

OrbifoldClass OrbifoldRing::basis_class(std::size_t index) const {
  auto [g, t] = basis_element(index);
  return OrbifoldClass::single(g, TensorClass::basis(t));
}

int OrbifoldRing::doubled_degree(std::size_t g, const Tuple& t) const {
  return 2 * (tuple_degree(*alg_, t) + alg_->d() * length(g));
}

void OrbifoldRing::check(const OrbifoldClass& x) const {
  for (const auto& [g, comp] : x.components()) {
    if (g >= group_.order()) throw std::invalid_argument("class does not belong to this ring");
    if (comp.arity() != orbits_[g].size()) throw std::invalid_argument("class does not belong to this ring");
    for (const auto& [t, c] : comp.terms())
      for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i] >= alg_->dim()) throw std::invalid_argument("class does not belong to this ring");
  }
}

const PairData& OrbifoldRing::pair(std::size_t g, std::size_t h) const {
  const std::lock_guard lock(mu_);
  auto& slot = pairs_[pair_key(g, h)];
  if (slot) return *slot;
  auto p = std::make_unique<PairData>();
  const auto& pg = group_.element(g);
  const auto& ph = group_.element(h);
  p->gh = group_.multiply(g, h);
  p->joint = orbit_partition(pg, ph);
  p->from_g = orbits_[g].map_into(p->joint);
  p->from_h = orbits_[h].map_into(p->joint);
  p->from_gh = orbits_[p->gh].map_into(p->joint);
  const int eps2 = length(g) + length(h) - length(p->gh);
  if (eps2 % 2 != 0) throw std::logic_error("non-integral sign exponent");
  p->negative = (eps2 / 2) % 2 != 0;
  std::vector<int> defects;
  for (const auto& o : p->joint.blocks()) defects.push_back(graph_defect(pg, ph, o));
  p->defects = defects;
  int total = 0;
  for (int k : defects) {
    total += k;
    if (alg_->euler_power(k).empty()) p->vanishes = true;
  }
  p->defect_degree = alg_->top_degree() * total;
  p->obstruction = euler_tensor(*alg_, defects);
  slot = std::move(p);
  return *slot;
}

TensorClass OrbifoldRing::obstruction_class(std::size_t g, std::size_t h) const { return pair(g, h).obstruction; }

const std::vector<std::pair<Tuple, Rational>>& OrbifoldRing::diagonal(std::size_t k, std::size_t b) const {
  const std::lock_guard lock(mu_);
  const auto key = std::make_pair(k, b);
  auto it = diagonals_.find(key);
  if (it != diagonals_.end()) return it->second;
  const std::vector<int> phi(k, 0);
  const auto x = pushforward(*alg_, phi, TensorClass::basis(Tuple{b}));
  Terms terms(x.terms().begin(), x.terms().end());
  return diagonals_.emplace(key, std::move(terms)).first->second;
}

TensorClass OrbifoldRing::push(std::span<const int> phi, const TensorClass& y) const {
  const std::size_t target = y.arity();
  check_surjection(phi, target);
  TensorClass out(phi.size());
  if (is_identity_map(phi, target)) return y;
  // grouped position -> index in the big set
  std::vector<std::vector<int>> fibers(target);
  for (std::size_t i = 0; i < phi.size(); ++i) fibers[static_cast<std::size_t>(phi[i])].push_back(static_cast<int>(i));
  std::vector<int> where;
  for (const auto& f : fibers) where.insert(where.end(), f.begin(), f.end());
  const auto& alg = *alg_;
  for (const auto& [u, c] : y.terms()) {
    std::vector<const Terms*> parts(target);
    for (std::size_t j = 0; j < target; ++j) parts[j] = &diagonal(fibers[j].size(), u[j]);
    // odometer over one diagonal term per fiber
    std::vector<std::size_t> pos(target, 0);
    bool empty = false;
    for (const auto* p : parts) empty |= p->empty();
    if (empty) continue;
    for (;;) {
      Tuple t(phi.size());
      Rational coeff = c;
      std::size_t p = 0;
      for (std::size_t j = 0; j < target; ++j) {
        const auto& [dt, dc] = (*parts[j])[pos[j]];
        coeff *= dc;
        for (std::size_t q = 0; q < dt.size(); ++q) t.set(static_cast<std::size_t>(where[p + q]), dt[q]);
        p += dt.size();
      }
      if (alg.has_odd()) {
        int parity = 0;
        for (std::size_t a = 0; a < where.size(); ++a)
          if (alg.odd(t[static_cast<std::size_t>(where[a])]))
            for (std::size_t b = a + 1; b < where.size(); ++b)
              if (alg.odd(t[static_cast<std::size_t>(where[b])]) && where[a] > where[b]) parity ^= 1;
        if (parity) coeff = -coeff;
      }
      out.add(t, coeff);
      bool done = true;
      for (std::size_t j = target; j-- > 0;) {
        if (++pos[j] < parts[j]->size()) {
          done = false;
          break;
        }
        pos[j] = 0;
      }
      if (done) break;
    }
  }
  return out;
}

void OrbifoldRing::multiply_tuples(const PairData& p, const Tuple& s, const Tuple& t, const Rational& coeff,
                                   std::map<Tuple, Rational>& out) const {
  const auto& alg = *alg_;
  const std::size_t J = p.joint.size();
  if (p.vanishes) return;
  if (tuple_degree(alg, s) + tuple_degree(alg, t) + p.defect_degree > alg.top_degree() * static_cast<int>(J)) return;
  const Terms A = pull_tuple(alg, p.from_g, J, s);
  if (A.empty()) return;
  const Terms B = pull_tuple(alg, p.from_h, J, t);
  if (B.empty()) return;
  std::vector<Slot> factors(J);
  std::vector<const Slot*> ptrs(J);
  TensorClass mid(J);
  for (const auto& [ua, ca] : A)
    for (const auto& [ub, cb] : B) {
      bool zero = false;
      for (std::size_t j = 0; j < J && !zero; ++j) {
        const SparseVec& prod = alg.product(ua[j], ub[j]);
        if (prod.empty()) {
          zero = true;
          break;
        }
        if (p.defects[j] == 0) {
          factors[j] = to_slot(prod);
        } else {
          factors[j] = to_slot(alg.multiply(prod, alg.euler_power(p.defects[j])));
          zero = factors[j].empty();
        }
        ptrs[j] = &factors[j];
      }
      if (zero) continue;
      const Rational c = ca * cb * Rational(mul_sign(alg, ua, ub));
      expand(ptrs, c, [&](const Tuple& w, const Rational& v) { mid.add(w, v); });
    }
  if (mid.is_zero()) return;
  const TensorClass pushed = push(p.from_gh, mid);
  const Rational scale = p.negative ? -coeff : coeff;
  for (const auto& [w, v] : pushed.terms()) {
    auto [it, inserted] = out.try_emplace(w, v * scale);
    if (!inserted) {
      it->second += v * scale;
      if (it->second.is_zero()) out.erase(it);
    }
  }
}

TensorClass OrbifoldRing::multiply_components(std::size_t g, const TensorClass& a, std::size_t h, const TensorClass& b,
                                              bool signed_product) const {
  const PairData& p = pair(g, h);
  // multiply_tuples always applies the sign; cancel it for the plain product
  const Rational unsign = (p.negative && !signed_product) ? Rational(-1) : Rational(1);
  std::map<Tuple, Rational> acc;
  for (const auto& [s, cs] : a.terms())
    for (const auto& [t, ct] : b.terms()) multiply_tuples(p, s, t, unsign * cs * ct, acc);
  TensorClass out(orbits_[p.gh].size());
  for (const auto& [w, v] : acc) out.add(w, v);
  return out;
}

OrbifoldClass OrbifoldRing::multiply(const OrbifoldClass& a, const OrbifoldClass& b, bool signed_product) const {
  check(a);
  check(b);
  OrbifoldClass out;
  for (const auto& [g, x] : a.components())
    for (const auto& [h, y] : b.components()) out.add(group_.multiply(g, h), multiply_components(g, x, h, y, signed_product));
  return out;
}

std::vector<std::pair<std::size_t, Rational>> OrbifoldRing::multiply_basis(std::size_t a, std::size_t b,
                                                                           bool signed_product) const {
  const auto [g, s] = basis_element(a);
  const auto [h, t] = basis_element(b);
  const PairData& p = pair(g, h);
  std::map<Tuple, Rational> acc;
  const Rational sign = (p.negative && !signed_product) ? Rational(-1) : Rational(1);
  multiply_tuples(p, s, t, sign, acc);
  std::vector<std::pair<std::size_t, Rational>> out;
  out.reserve(acc.size());
  for (const auto& [w, v] : acc) out.emplace_back(basis_index(p.gh, w), v);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

TensorClass OrbifoldRing::transport(std::size_t v, std::size_t g, const TensorClass& x) const {
  const std::size_t target = group_.conjugate(v, g);
  const auto& from = orbits_[g];
  const auto& to = orbits_[target];
  const auto& pv = group_.element(v);
  std::vector<int> sigma(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) sigma[i] = to.block_of(pv(from.block(i).front()));
  return relabel(*alg_, sigma, x);
}

OrbifoldClass OrbifoldRing::group_act(std::size_t h, const OrbifoldClass& x) const {
  if (h >= group_.order()) throw std::invalid_argument("element not in group");
  check(x);
  OrbifoldClass out;
  for (const auto& [g, comp] : x.components()) out.add(group_.conjugate(h, g), transport(h, g, comp));
  return out;
}

OrbifoldClass OrbifoldRing::group_act(const Permutation& h, const OrbifoldClass& x) const {
  return group_act(group_.index_of(h), x);
}

OrbifoldClass OrbifoldRing::symmetrize(const OrbifoldClass& x) const {
  OrbifoldClass out;
  for (std::size_t h = 0; h < group_.order(); ++h) out += group_act(h, x);
  out *= Rational(1, static_cast<std::int64_t>(group_.order()));
  return out;
}

bool OrbifoldRing::is_invariant(const OrbifoldClass& x) const {
  for (const auto& gen : group_.generators())
    if (!(group_act(gen, x) == x)) return false;
  return true;
}

Rational OrbifoldRing::integral(const OrbifoldClass& x, bool quotient) const {
  check(x);
  const TensorClass* id = x.component(0);
  if (id == nullptr) return Rational(0);
  Rational v = integrate(*alg_, *id);
  if (quotient) v /= Rational(static_cast<std::int64_t>(group_.order()));
  return v;
}

Rational OrbifoldRing::pairing(const OrbifoldClass& a, const OrbifoldClass& b, bool quotient) const {
  check(a);
  check(b);
  Rational total(0);
  for (const auto& [g, x] : a.components()) {
    const TensorClass* y = b.component(group_.inverse(g));
    if (y == nullptr) continue;
    total += integrate(*alg_, multiply_components(g, x, group_.inverse(g), *y));
  }
  if (quotient) total /= Rational(static_cast<std::int64_t>(group_.order()));
  return total;
}

std::pair<OrbifoldClass, OrbifoldClass> OrbifoldRing::even_odd_split(const OrbifoldClass& x) const {
  OrbifoldClass even, odd;
  for (const auto& [g, comp] : x.components())
    for (const auto& [t, c] : comp.terms()) (tuple_odd(*alg_, t) ? odd : even).add(g, t, c);
  return {even, odd};
}

std::size_t OrbifoldRing::class_rep(std::size_t conj_class) const {
  return group_.conjugacy_classes().at(conj_class).front();
}

bool OrbifoldRing::is_centralizer_invariant(std::size_t g, const TensorClass& x) const {
  for (std::size_t v = 0; v < group_.order(); ++v)
    if (group_.conjugate(v, g) == g && !(transport(v, g, x) == x)) return false;
  return true;
}

OrbifoldClass OrbifoldRing::to_CR(const CRClass& x) const {
  OrbifoldClass out;
  for (const auto& [cls, comp] : x.components) {
    const std::size_t g = class_rep(cls);
    if (comp.arity() != orbits_[g].size()) throw std::invalid_argument("class does not belong to this ring");
    if (!is_centralizer_invariant(g, comp)) throw std::invalid_argument("class is not centralizer-invariant");
    for (std::size_t h : group_.conjugacy_classes()[cls]) out.add(h, transport(*group_.conjugator(g, h), g, comp));
  }
  return out;
}

CRClass OrbifoldRing::from_CR(const OrbifoldClass& x) const {
  check(x);
  if (!is_invariant(x)) throw std::invalid_argument("class is not G-invariant");
  CRClass out;
  for (std::size_t cls = 0; cls < group_.conjugacy_classes().size(); ++cls)
    if (const TensorClass* comp = x.component(class_rep(cls))) out.components.emplace(cls, *comp);
  return out;
}

Rational OrbifoldRing::cr_triple_pairing(const CRClass& a, const CRClass& b, const CRClass& c) const {
  const auto& classes = group_.conjugacy_classes();
  const std::size_t order = group_.order();
  Rational total(0);
  for (const auto& [c1, x1] : a.components) {
    const std::size_t g1 = class_rep(c1);
    if (!is_centralizer_invariant(g1, x1)) throw std::invalid_argument("class is not centralizer-invariant");
    for (const auto& [c2, x2] : b.components) {
      const std::size_t g2 = class_rep(c2);
      if (!is_centralizer_invariant(g2, x2)) throw std::invalid_argument("class is not centralizer-invariant");
      for (const auto& [c3, x3] : c.components) {
        const std::size_t g3 = class_rep(c3);
        if (!is_centralizer_invariant(g3, x3)) throw std::invalid_argument("class is not centralizer-invariant");
        // pairs (h1, h2) with (h1 h2)^-1 in [g3], one per simultaneous-conjugation orbit
        std::unordered_set<std::uint64_t> seen;
        for (std::size_t h1 : classes[c1])
          for (std::size_t h2 : classes[c2]) {
            const std::size_t h3 = group_.inverse(group_.multiply(h1, h2));
            if (group_.class_of(h3) != c3) continue;
            if (seen.count(pair_key(h1, h2))) continue;
            std::size_t orbit = 0;
            for (std::size_t v = 0; v < order; ++v)
              if (seen.insert(pair_key(group_.conjugate(v, h1), group_.conjugate(v, h2))).second) ++orbit;
            const Rational weight(static_cast<std::int64_t>(orbit), static_cast<std::int64_t>(order));
            const PairData& p = pair(h1, h2);
            const std::size_t J = p.joint.size();
            const auto from3 = orbits_[h3].map_into(p.joint);
            const auto y1 = pullback(*alg_, p.from_g, J, transport(*group_.conjugator(g1, h1), g1, x1));
            const auto y2 = pullback(*alg_, p.from_h, J, transport(*group_.conjugator(g2, h2), g2, x2));
            const auto y3 = pullback(*alg_, from3, J, transport(*group_.conjugator(g3, h3), g3, x3));
            const auto prod = tensor_mul(*alg_, tensor_mul(*alg_, tensor_mul(*alg_, y1, y2), y3), p.obstruction);
            total += weight * integrate(*alg_, prod);
          }
      }
    }
  }
  return total;
}

// ---- Poincare polynomial ----

PoincarePolynomial sector_poincare(const OrbifoldRing& ring, std::size_t g) {
  const auto& group = ring.group();
  std::vector<std::size_t> centralizer;
  for (std::size_t v = 0; v < group.order(); ++v)
    if (group.conjugate(v, g) == g) centralizer.push_back(v);
  std::map<int, RowEchelon> by_degree;
  const std::size_t base = ring.offset(g);
  for (std::size_t idx = base; idx < base + ring.sector_dim(g); ++idx) {
    const auto [sector, t] = ring.basis_element(idx);
    const auto x = OrbifoldClass::single(g, TensorClass::basis(t));
    SparseVec sym;
    for (std::size_t v : centralizer) {
      const auto moved = ring.group_act(v, x);
      const TensorClass* comp = moved.component(g);
      for (const auto& [u, c] : comp->terms()) axpy(sym, c, SparseVec{{ring.basis_index(g, u) - base, Rational(1)}});
    }
    by_degree[ring.doubled_degree(g, t)].insert(std::move(sym));
  }
  PoincarePolynomial out;
  for (const auto& [deg, ech] : by_degree)
    if (ech.rank() > 0) out[deg] = static_cast<std::int64_t>(ech.rank());
  return out;
}

PoincarePolynomial orbifold_poincare(const OrbifoldRing& ring, std::optional<int> shift) {
  PoincarePolynomial out;
  for (std::size_t cls = 0; cls < ring.group().conjugacy_classes().size(); ++cls)
    for (const auto& [deg, dim] : sector_poincare(ring, ring.class_rep(cls))) out[deg] += dim;
  if (shift) {
    PoincarePolynomial shifted;
    for (const auto& [deg, dim] : out) shifted[deg - 2 * *shift] = dim;
    return shifted;
  }
  return out;
}

// ---- skew commutativity ----

namespace {

// One sector, tuples of a single degree, small nonzero coefficients.
OrbifoldClass random_homogeneous(const OrbifoldRing& ring, std::mt19937_64& rng) {
  const auto [g, t] = ring.basis_element(rng() % ring.dim());
  OrbifoldClass x = OrbifoldClass::single(g, TensorClass::basis(t));
  const int deg = tuple_degree(ring.algebra(), t);
  for (int k = 0; k < 2; ++k) {
    const auto [g2, t2] = ring.basis_element(ring.offset(g) + rng() % ring.sector_dim(g));
    if (tuple_degree(ring.algebra(), t2) == deg) x.add(g, t2, Rational(static_cast<std::int64_t>(rng() % 3) + 1));
  }
  return x;
}

bool is_odd(const OrbifoldRing& ring, const OrbifoldClass& x) {
  const auto [even, odd] = ring.even_odd_split(x);
  if (!even.is_zero() && !odd.is_zero()) throw std::logic_error("class is not homogeneous");
  return !odd.is_zero();
}

}  // namespace

SkewCertificate check_skew_commutativity(const OrbifoldRing& ring, std::uint64_t seed, std::size_t samples,
                                         bool signed_product) {
  SkewCertificate cert;
  cert.signed_product = signed_product;
  cert.seed = seed;
  std::mt19937_64 rng(seed);
  constexpr int kMaxDraws = 64;
  for (std::size_t k = 0; k < samples; ++k) {
    OrbifoldClass alpha;
    for (int draw = 0; draw < kMaxDraws && alpha.is_zero(); ++draw) alpha = ring.symmetrize(random_homogeneous(ring, rng));
    if (alpha.is_zero()) throw std::logic_error("no nonzero invariant class found");
    const auto beta = random_homogeneous(ring, rng);
    const Rational sign = is_odd(ring, alpha) && is_odd(ring, beta) ? Rational(-1) : Rational(1);
    ++cert.count;
    if (!(ring.multiply(alpha, beta, signed_product) == ring.multiply(beta, alpha, signed_product) * sign)) {
      cert.passed = false;
      cert.witness = std::make_pair(alpha, beta);
      break;
    }
  }
  return cert;
}

// ---- associativity ----

AssocCertificate check_associativity(const OrbifoldRing& ring, const CheckOptions& opts) {
  const bool sgn = opts.signed_product;
  if (opts.exhaustive) {
    if (ring.dim() > opts.max_dim) throw std::invalid_argument("ring dimension exceeds exhaustive bound");
    // warm the pair cache so workers mostly read
    for (std::size_t g = 0; g < ring.group().order(); ++g)
      for (std::size_t h = 0; h < ring.group().order(); ++h) (void)ring.pair(g, h);
  }
  auto cert = check_associativity(
      ring.dim(), [&](std::size_t a, std::size_t b) { return ring.multiply_basis(a, b, sgn); }, opts);
  cert.signed_product = sgn;
  return cert;
}

// ---- pairing ----

PairingReport check_pairing(const OrbifoldRing& ring) {
  PairingReport rep;
  rep.dim = ring.dim();
  const auto& group = ring.group();
  const auto& alg = ring.algebra();
  for (std::size_t g = 0; g < group.order(); ++g)
    for (std::size_t h = 0; h < group.order(); ++h) {
      const bool diagonal_block = group.multiply(g, h) == 0;
      RowEchelon ech;
      for (std::size_t a = ring.offset(g); a < ring.offset(g) + ring.sector_dim(g); ++a) {
        SparseVec row;
        for (std::size_t b = ring.offset(h); b < ring.offset(h) + ring.sector_dim(h); ++b) {
          Rational v(0);
          for (const auto& [k, c] : ring.multiply_basis(a, b)) {
            const auto [sector, t] = ring.basis_element(k);
            if (sector == 0) v += c * integrate(alg, TensorClass::basis(t));
          }
          if (!v.is_zero()) row.emplace(b - ring.offset(h), v);
        }
        if (!diagonal_block && !row.empty()) {
          rep.block_antidiagonal = false;
          if (!rep.witness) rep.witness = std::make_pair(a, ring.offset(h) + row.begin()->first);
        }
        if (diagonal_block) ech.insert(std::move(row));
      }
      rep.rank += ech.rank();
    }
  rep.nondegenerate = rep.rank == rep.dim;
  return rep;
}

} // namespace orbisym
