#include "orbisym/tensor.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace orbisym {

Tuple::Tuple(std::initializer_list<std::size_t> entries) {
  if (entries.size() > kMaxDegree) throw std::invalid_argument("tuple too long");
  for (std::size_t e : entries) push_back(e);
}

std::size_t Tuple::hash() const noexcept {
  std::size_t h = size_;
  for (std::size_t i = 0; i < size_; ++i) h = h * 257u + v_[i];
  return h;
}

TensorClass TensorClass::unit(const FrobeniusAlgebra& alg, std::size_t arity) {
  TensorClass out(arity);
  std::vector<SparseVec> slots(arity, alg.unit());
  // the unit may be a combination in a user basis; expand the pure tensor
  std::function<void(std::size_t, Tuple&, Rational)> rec = [&](std::size_t i, Tuple& t, Rational c) {
    if (i == arity) {
      out.add(t, c);
      return;
    }
    for (const auto& [k, v] : slots[i]) {
      t.set(i, k);
      rec(i + 1, t, c * v);
    }
  };
  Tuple t(arity);
  rec(0, t, Rational(1));
  return out;
}

TensorClass TensorClass::basis(const Tuple& t, Rational c) {
  TensorClass out(t.size());
  out.add(t, c);
  return out;
}

Rational TensorClass::coeff(const Tuple& t) const {
  const auto it = terms_.find(t);
  return it == terms_.end() ? Rational(0) : it->second;
}

void TensorClass::add(const Tuple& t, const Rational& c) {
  if (c.is_zero()) return;
  if (t.size() != arity_) throw std::invalid_argument("tuple length does not match tensor arity");
  auto [it, inserted] = terms_.try_emplace(t, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TensorClass& TensorClass::operator+=(const TensorClass& o) {
  if (o.arity_ != arity_) throw std::invalid_argument("index-set mismatch");
  for (const auto& [t, c] : o.terms_) add(t, c);
  return *this;
}

TensorClass& TensorClass::operator-=(const TensorClass& o) {
  if (o.arity_ != arity_) throw std::invalid_argument("index-set mismatch");
  for (const auto& [t, c] : o.terms_) add(t, -c);
  return *this;
}

TensorClass& TensorClass::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [t, v] : terms_) v *= c;
  return *this;
}

int tuple_degree(const FrobeniusAlgebra& alg, const Tuple& t) {
  int s = 0;
  for (std::size_t i = 0; i < t.size(); ++i) s += alg.degree(t[i]);
  return s;
}

bool tuple_odd(const FrobeniusAlgebra& alg, const Tuple& t) { return (tuple_degree(alg, t) & 1) != 0; }

int koszul_sign(const FrobeniusAlgebra& alg, const Tuple& t, std::span<const int> target) {
  if (!alg.has_odd()) return 1;
  int parity = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!alg.odd(t[i])) continue;
    for (std::size_t j = i + 1; j < t.size(); ++j)
      if (alg.odd(t[j]) && target[i] > target[j]) parity ^= 1;
  }
  return parity ? -1 : 1;
}

namespace {

// Accumulates c * (slot_0 (x) slot_1 (x) ...) into out.
void expand_outer(std::span<const SparseVec* const> slots, const Rational& c, TensorClass& out) {
  const std::size_t k = slots.size();
  if (k == 0) {
    out.add(Tuple(0), c);
    return;
  }
  for (const auto* s : slots)
    if (s->empty()) return;
  Tuple t(k);
  std::vector<SparseVec::const_iterator> it(k);
  std::vector<Rational> prefix(k + 1);
  prefix[0] = c;
  std::size_t level = 0;
  it[0] = slots[0]->begin();
  // iterative odometer over the slot supports
  for (;;) {
    if (it[level] == slots[level]->end()) {
      if (level == 0) return;
      --level;
      ++it[level];
      continue;
    }
    t.set(level, it[level]->first);
    prefix[level + 1] = prefix[level] * it[level]->second;
    if (level + 1 == k) {
      out.add(t, prefix[k]);
      ++it[level];
    } else {
      ++level;
      it[level] = slots[level]->begin();
    }
  }
}

int pairing_sign(const FrobeniusAlgebra& alg, const Tuple& s, const Tuple& t) {
  if (!alg.has_odd()) return 1;
  int parity = 0;
  int odd_after = 0; // odd entries of s strictly after position i
  for (std::size_t i = s.size(); i-- > 0;) {
    if (alg.odd(t[i])) parity ^= (odd_after & 1);
    if (alg.odd(s[i])) ++odd_after;
  }
  return parity ? -1 : 1;
}

int self_pairing_sign(const FrobeniusAlgebra& alg, const Tuple& s) {
  if (!alg.has_odd()) return 1;
  int e = 0;
  for (std::size_t i = 0; i < s.size(); ++i) e += alg.odd(s[i]) ? 1 : 0;
  return ((e * (e - 1) / 2) % 2 == 0) ? 1 : -1;
}

} // namespace

TensorClass tensor_mul(const FrobeniusAlgebra& alg, const TensorClass& a, const TensorClass& b) {
  if (a.arity() != b.arity()) throw std::invalid_argument("index-set mismatch");
  const std::size_t k = a.arity();
  TensorClass out(k);
  std::vector<const SparseVec*> slots(k);
  for (const auto& [ta, ca] : a.terms()) {
    for (const auto& [tb, cb] : b.terms()) {
      bool zero = false;
      for (std::size_t i = 0; i < k && !zero; ++i) {
        slots[i] = &alg.product(ta[i], tb[i]);
        zero = slots[i]->empty();
      }
      if (zero) continue;
      int parity = 0;
      if (alg.has_odd()) {
        int odd_a_after = 0;
        for (std::size_t i = k; i-- > 0;) {
          if (alg.odd(tb[i])) parity ^= (odd_a_after & 1);
          if (alg.odd(ta[i])) ++odd_a_after;
        }
      }
      expand_outer(slots, parity ? -(ca * cb) : ca * cb, out);
    }
  }
  return out;
}

void check_surjection(std::span<const int> phi, std::size_t target_size) {
  std::vector<bool> hit(target_size, false);
  for (int j : phi) {
    if (j < 0 || static_cast<std::size_t>(j) >= target_size) throw std::invalid_argument("map leaves the target set");
    hit[static_cast<std::size_t>(j)] = true;
  }
  if (std::find(hit.begin(), hit.end(), false) != hit.end()) throw std::invalid_argument("map is not surjective");
}

TensorClass pullback(const FrobeniusAlgebra& alg, std::span<const int> phi, std::size_t target_size,
                     const TensorClass& x) {
  if (phi.size() != x.arity()) throw std::invalid_argument("map does not match tensor arity");
  check_surjection(phi, target_size);
  const std::size_t k = phi.size();
  // position of factor i once the factors are grouped by fiber, stable in i
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return phi[static_cast<std::size_t>(a)] < phi[static_cast<std::size_t>(b)]; });
  std::vector<int> grouped(k);
  for (std::size_t p = 0; p < k; ++p) grouped[static_cast<std::size_t>(order[p])] = static_cast<int>(p);

  TensorClass out(target_size);
  std::vector<SparseVec> fiber(target_size);
  std::vector<bool> started(target_size);
  std::vector<const SparseVec*> slots(target_size);
  for (const auto& [t, c] : x.terms()) {
    std::fill(started.begin(), started.end(), false);
    bool zero = false;
    for (std::size_t i = 0; i < k && !zero; ++i) {
      const auto j = static_cast<std::size_t>(phi[i]);
      if (!started[j]) {
        fiber[j] = SparseVec{{t[i], Rational(1)}};
        started[j] = true;
      } else {
        fiber[j] = alg.multiply(fiber[j], SparseVec{{t[i], Rational(1)}});
        zero = fiber[j].empty();
      }
    }
    if (zero) continue;
    for (std::size_t j = 0; j < target_size; ++j) slots[j] = &fiber[j];
    const int s = koszul_sign(alg, t, grouped);
    expand_outer(slots, s < 0 ? -c : c, out);
  }
  return out;
}

TensorClass pushforward(const FrobeniusAlgebra& alg, std::span<const int> phi, const TensorClass& y) {
  const std::size_t m = y.arity();
  check_surjection(phi, m);
  const std::size_t k = phi.size();
  TensorClass out(k);
  std::vector<const std::vector<std::pair<std::size_t, Rational>>*> rows(k);
  for (const auto& [u, cu] : y.terms()) {
    const int test_degree = alg.top_degree() * static_cast<int>(m) - tuple_degree(alg, u);
    if (test_degree < 0) continue;
    for_each_tuple_of_degree(alg, k, test_degree, [&](const Tuple& t) {
      // r_t = <u, phi^* t>_J
      const TensorClass pulled = pullback(alg, phi, m, TensorClass::basis(t));
      Rational r;
      for (const auto& [v, cv] : pulled.terms()) r += cv * pair_tuples(alg, u, v);
      if (r.is_zero()) return;
      r *= cu;
      // x_s += eps(s) * r_t * prod_i Ginv[t_i][s_i]
      for (std::size_t i = 0; i < k; ++i) {
        rows[i] = &alg.gram_inverse_row(t[i]);
        if (rows[i]->empty()) return;
      }
      Tuple s(k);
      std::vector<std::size_t> pos(k, 0);
      std::vector<Rational> prefix(k + 1);
      prefix[0] = r;
      std::size_t level = 0;
      for (;;) {
        if (pos[level] == rows[level]->size()) {
          if (level == 0) break;
          pos[level] = 0;
          --level;
          ++pos[level];
          continue;
        }
        const auto& [col, val] = (*rows[level])[pos[level]];
        s.set(level, col);
        prefix[level + 1] = prefix[level] * val;
        if (level + 1 == k) {
          const int eps = self_pairing_sign(alg, s);
          out.add(s, eps < 0 ? -prefix[k] : prefix[k]);
          ++pos[level];
        } else {
          ++level;
        }
      }
    });
  }
  return out;
}

TensorClass relabel(const FrobeniusAlgebra& alg, std::span<const int> sigma, const TensorClass& x) {
  const std::size_t k = sigma.size();
  if (k != x.arity()) throw std::invalid_argument("bijection does not match tensor arity");
  std::vector<bool> hit(k, false);
  for (int s : sigma) {
    if (s < 0 || static_cast<std::size_t>(s) >= k || hit[static_cast<std::size_t>(s)])
      throw std::invalid_argument("relabel map is not a bijection");
    hit[static_cast<std::size_t>(s)] = true;
  }
  TensorClass out(k);
  for (const auto& [t, c] : x.terms()) {
    Tuple moved(k);
    for (std::size_t i = 0; i < k; ++i) moved.set(static_cast<std::size_t>(sigma[i]), t[i]);
    out.add(moved, koszul_sign(alg, t, sigma) < 0 ? -c : c);
  }
  return out;
}

Rational integrate(const FrobeniusAlgebra& alg, const TensorClass& x) {
  Rational total;
  for (const auto& [t, c] : x.terms()) {
    Rational v = c;
    for (std::size_t i = 0; i < t.size() && !v.is_zero(); ++i) v *= alg.integral(t[i]);
    total += v;
  }
  return total;
}

Rational pair_tuples(const FrobeniusAlgebra& alg, const Tuple& s, const Tuple& t) {
  if (s.size() != t.size()) throw std::invalid_argument("index-set mismatch");
  Rational v(1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    v *= alg.gram(s[i], t[i]);
    if (v.is_zero()) return v;
  }
  return pairing_sign(alg, s, t) < 0 ? -v : v;
}

Rational pairing(const FrobeniusAlgebra& alg, const TensorClass& x, const TensorClass& y) {
  if (x.arity() != y.arity()) throw std::invalid_argument("index-set mismatch");
  Rational total;
  for (const auto& [s, cs] : x.terms())
    for (const auto& [t, ct] : y.terms()) total += cs * ct * pair_tuples(alg, s, t);
  return total;
}

TensorClass euler_tensor(const FrobeniusAlgebra& alg, std::span<const int> exponents) {
  std::vector<SparseVec> powers;
  powers.reserve(exponents.size());
  for (int k : exponents) powers.push_back(alg.euler_power(k));
  std::vector<const SparseVec*> slots;
  for (const auto& p : powers) slots.push_back(&p);
  TensorClass out(exponents.size());
  expand_outer(slots, Rational(1), out);
  return out;
}

void for_each_tuple_of_degree(const FrobeniusAlgebra& alg, std::size_t arity, int degree,
                              const std::function<void(const Tuple&)>& f) {
  const int top = alg.top_degree();
  if (degree < 0 || degree > top * static_cast<int>(arity)) return;
  Tuple t(arity);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int remaining) {
    if (i == arity) {
      if (remaining == 0) f(t);
      return;
    }
    const int slots_left = static_cast<int>(arity - i - 1);
    for (int deg = 0; deg <= std::min(top, remaining); ++deg) {
      if (remaining - deg > top * slots_left) continue;
      for (std::size_t b : alg.basis_of_degree(deg)) {
        t.set(i, b);
        rec(i + 1, remaining - deg);
      }
    }
  };
  rec(0, degree);
}

void for_each_tuple(const FrobeniusAlgebra& alg, std::size_t arity, const std::function<void(const Tuple&)>& f) {
  Tuple t(arity);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == arity) {
      f(t);
      return;
    }
    for (std::size_t b = 0; b < alg.dim(); ++b) {
      t.set(i, b);
      rec(i + 1);
    }
  };
  rec(0);
}

SparseVec diagonal_euler(const FrobeniusAlgebra& alg) {
  const std::vector<int> diag{0, 0};
  const auto back = pullback(alg, diag, 1, pushforward(alg, diag, TensorClass::unit(alg, 1)));
  SparseVec out;
  for (const auto& [t, c] : back.terms()) axpy(out, c, SparseVec{{t[0], Rational(1)}});
  return out;
}

} // namespace orbisym
