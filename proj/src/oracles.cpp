#include "orbisym/oracles.hpp"

#include <algorithm>
#include <stdexcept>

#include "orbisym/linalg.hpp"

namespace orbisym {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Betti series coefficient overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Betti series coefficient overflow");
  return r;
}

// C(top, k), exact at every step since C(top, j) (top - j) / (j + 1) = C(top, j + 1).
std::int64_t binomial(std::int64_t top, std::int64_t k) {
  if (k < 0 || k > top) return 0;
  std::int64_t c = 1;
  for (std::int64_t j = 0; j < k; ++j) c = checked_mul(c, top - j) / (j + 1);
  return c;
}

using Poly = std::map<int, std::int64_t>;  // t exponent -> coefficient

// Koszul sign of moving factor i of t to position sigma[i].
int permutation_sign(const FrobeniusAlgebra& alg, const Tuple& t, const std::vector<int>& sigma) {
  int sign = 1;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!alg.odd(t[i])) continue;
    for (std::size_t j = i + 1; j < t.size(); ++j)
      if (alg.odd(t[j]) && sigma[i] > sigma[j]) sign = -sign;
  }
  return sign;
}

Tuple permuted(const Tuple& t, const std::vector<int>& sigma) {
  Tuple s(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) s.set(static_cast<std::size_t>(sigma[i]), t[i]);
  return s;
}

}  // namespace

std::vector<PoincarePolynomial> goettsche_series(std::span<const std::int64_t> betti, int n_max) {
  if (betti.size() != 5) throw std::invalid_argument("expected five Betti numbers b_0..b_4");
  if (n_max < 0 || n_max > 10) throw std::invalid_argument("n_max must be in [0, 10]");
  for (const auto b : betti)
    if (b < 0) throw std::invalid_argument("Betti numbers must be nonnegative");
  const auto N = static_cast<std::size_t>(n_max);
  std::vector<Poly> series(N + 1);
  series[0][0] = 1;
  for (int m = 1; m <= n_max; ++m)
    for (int i = 0; i <= 4; ++i) {
      const std::int64_t b = betti[static_cast<std::size_t>(i)];
      if (b == 0) continue;
      const int e = 2 * m - 2 + i;
      // (1 - t^e q^m)^(-b) for even i, (1 + t^e q^m)^b for odd i
      std::vector<Poly> next(N + 1);
      for (std::size_t q = 0; q <= N; ++q)
        for (std::int64_t k = 0; q + static_cast<std::size_t>(k * m) <= N; ++k) {
          const std::int64_t c = i % 2 == 0 ? binomial(b + k - 1, k) : binomial(b, k);
          if (c == 0) break;
          auto& dst = next[q + static_cast<std::size_t>(k * m)];
          for (const auto& [deg, v] : series[q]) {
            auto& slot = dst[deg + static_cast<int>(k) * e];
            slot = checked_add(slot, checked_mul(c, v));
          }
        }
      series = std::move(next);
    }
  std::vector<PoincarePolynomial> out(N + 1);
  for (std::size_t q = 0; q <= N; ++q)
    for (const auto& [deg, v] : series[q])
      if (v != 0) out[q][2 * deg] = v;
  return out;
}

std::pair<std::int64_t, std::int64_t> invariant_dim_two_ways(const GroupTable& group, const FrobeniusAlgebra& alg,
                                                             int degree) {
  const auto n = static_cast<std::size_t>(group.degree());
  std::vector<Tuple> tuples;
  for_each_tuple_of_degree(alg, n, degree, [&](const Tuple& t) { tuples.push_back(t); });
  std::map<Tuple, std::size_t> index;
  for (std::size_t k = 0; k < tuples.size(); ++k) index.emplace(tuples[k], k);
  std::vector<std::vector<int>> sigmas;
  for (const auto& v : group.elements()) sigmas.push_back(v.images());

  // symmetrization rank; each orbit contributes one vector up to sign
  RowEchelon ech;
  std::vector<bool> seen(tuples.size(), false);
  for (std::size_t k = 0; k < tuples.size(); ++k) {
    if (seen[k]) continue;
    SparseVec sym;
    for (const auto& sigma : sigmas) {
      const std::size_t j = index.at(permuted(tuples[k], sigma));
      seen[j] = true;
      axpy(sym, Rational(permutation_sign(alg, tuples[k], sigma)), SparseVec{{j, Rational(1)}});
    }
    ech.insert(std::move(sym));
  }

  // character average
  std::int64_t trace = 0;
  for (const auto& sigma : sigmas)
    for (const auto& t : tuples)
      if (permuted(t, sigma) == t) trace += permutation_sign(alg, t, sigma);
  const auto order = static_cast<std::int64_t>(group.order());
  if (trace % order != 0) throw std::logic_error("character average is not an integer");
  return {static_cast<std::int64_t>(ech.rank()), trace / order};
}

std::map<int, std::pair<std::int64_t, std::int64_t>> ring_invariant_dims_two_ways(const OrbifoldRing& ring) {
  const auto& group = ring.group();
  std::map<int, RowEchelon> ech;
  std::map<int, std::int64_t> trace;
  std::vector<bool> seen(ring.dim(), false);
  for (std::size_t i = 0; i < ring.dim(); ++i) {
    const auto [g, t] = ring.basis_element(i);
    const int deg = ring.doubled_degree(g, t);
    const auto x = ring.basis_class(i);
    for (std::size_t v = 0; v < group.order(); ++v) {
      if (group.conjugate(v, g) != g) continue;
      const auto moved = ring.group_act(v, x);
      if (const TensorClass* comp = moved.component(g)) trace[deg] += comp->coeff(t).num();
    }
    if (seen[i]) continue;
    SparseVec sym;
    const auto symmetrized = ring.symmetrize(x);
    for (const auto& [h, comp] : symmetrized.components())
      for (const auto& [u, c] : comp.terms()) {
        const std::size_t j = ring.basis_index(h, u);
        seen[j] = true;
        axpy(sym, c, SparseVec{{j, Rational(1)}});
      }
    ech[deg].insert(std::move(sym));
  }
  std::map<int, std::pair<std::int64_t, std::int64_t>> out;
  const auto order = static_cast<std::int64_t>(group.order());
  for (const auto& [deg, tr] : trace) {
    if (tr % order != 0) throw std::logic_error("character average is not an integer");
    const auto rank = static_cast<std::int64_t>(ech[deg].rank());
    if (rank != 0 || tr != 0) out[deg] = {rank, tr / order};
  }
  return out;
}

// ---- comultiplication ----

Comultiplication::Comultiplication(const FrobeniusAlgebra& alg) : alg_(alg) {
  const int top = alg.top_degree();
  std::map<int, std::vector<Tuple>> pairs_of_degree;
  for (int D = 0; D <= 2 * top; ++D)
    for_each_tuple_of_degree(alg, 2, D, [&](const Tuple& t) { pairs_of_degree[D].push_back(t); });
  for (std::size_t a = 0; a < alg.dim(); ++a) {
    const int D = alg.degree(a) + top;
    TensorClass out(2);
    const auto& vars = pairs_of_degree[D];
    const auto& tests = pairs_of_degree[2 * top - D];
    if (vars.size() != tests.size()) throw std::logic_error("A (x) A pairing is not square in complementary degrees");
    std::vector<SparseVec> rows;
    std::vector<Rational> rhs;
    for (const auto& bc : tests) {
      SparseVec row;
      for (std::size_t k = 0; k < vars.size(); ++k) {
        const Rational p = pair_tuples(alg, vars[k], bc);
        if (!p.is_zero()) row[k] = p;
      }
      rows.push_back(std::move(row));
      rhs.push_back(alg.integrate(alg.multiply(SparseVec{{a, Rational(1)}}, alg.product(bc[0], bc[1]))));
    }
    const auto x = solve_sparse(rows, rhs);
    if (!x) throw std::logic_error("A (x) A Gram matrix is singular");
    for (std::size_t k = 0; k < vars.size(); ++k)
      if (!(*x)[k].is_zero()) out.add(vars[k], (*x)[k]);
    delta_.push_back(std::move(out));
  }
}

TensorClass Comultiplication::iterated(std::size_t b, std::size_t k) const {
  if (k == 0) throw std::invalid_argument("empty fiber");
  TensorClass cur = TensorClass::basis(Tuple{b});
  for (std::size_t level = 1; level < k; ++level) {
    TensorClass next(level + 1);
    for (const auto& [t, c] : cur.terms())
      for (const auto& [u, cu] : delta_[t[0]].terms()) {
        Tuple s;
        s.push_back(u[0]);
        s.push_back(u[1]);
        for (std::size_t i = 1; i < t.size(); ++i) s.push_back(t[i]);
        next.add(s, c * cu);
      }
    cur = std::move(next);
  }
  return cur;
}

TensorClass Comultiplication::pushforward(std::span<const int> phi, const TensorClass& y) const {
  const std::size_t m = y.arity();
  check_surjection(phi, m);
  std::vector<std::vector<int>> fibers(m);
  for (std::size_t i = 0; i < phi.size(); ++i) fibers[static_cast<std::size_t>(phi[i])].push_back(static_cast<int>(i));
  std::vector<int> sigma;  // concatenated fiber slot -> position in I
  for (const auto& f : fibers) sigma.insert(sigma.end(), f.begin(), f.end());
  TensorClass out(phi.size());
  for (const auto& [u, cu] : y.terms()) {
    TensorClass acc = TensorClass::basis(Tuple{}, cu);
    for (std::size_t j = 0; j < m; ++j) {
      const TensorClass piece = iterated(u[j], fibers[j].size());
      TensorClass joined(acc.arity() + piece.arity());
      for (const auto& [s, cs] : acc.terms())
        for (const auto& [t, ct] : piece.terms()) {
          Tuple st = s;
          for (std::size_t i = 0; i < t.size(); ++i) st.push_back(t[i]);
          joined.add(st, cs * ct);
        }
      acc = std::move(joined);
    }
    out += relabel(alg_, sigma, acc);
  }
  return out;
}

TensorClass pushforward_bruteforce(const FrobeniusAlgebra& alg, std::span<const int> phi, const TensorClass& y) {
  return Comultiplication(alg).pushforward(phi, y);
}

} // namespace orbisym
