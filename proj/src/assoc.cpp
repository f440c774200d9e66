#include "orbisym/assoc.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <map>
#include <thread>
#include <unordered_map>

namespace orbisym {

namespace {

// Sparse multiplication table of the basis: entries of a * b by (a, b).
struct ProductTable {
  struct Cell {
    std::uint32_t other;   // b for row lists, a for column lists
    std::uint32_t begin;
    std::uint32_t end;
  };
  std::vector<std::vector<Cell>> rows;  // rows[a]: cells (b, range)
  std::vector<std::vector<Cell>> cols;  // cols[b]: cells (a, range)
  std::vector<std::uint32_t> out;
  std::vector<Rational> coeff;
};

template <class F>
void parallel_chunks(unsigned jobs, std::size_t count, F&& f) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (jobs == 1) {
    f(0, 0, count);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j)
    pool.emplace_back([&, j] { f(j, count * j / jobs, count * (j + 1) / jobs); });
  for (auto& t : pool) t.join();
}

ProductTable build_table(std::size_t N, const BasisProduct& mul, unsigned jobs) {

  struct Local {
    std::vector<std::vector<ProductTable::Cell>> rows;
    std::vector<std::uint32_t> out;
    std::vector<Rational> coeff;
  };
  std::vector<Local> parts(std::max(1u, jobs));
  std::vector<std::size_t> chunk_begin(parts.size() + 1, N);
  parallel_chunks(jobs, N, [&](unsigned j, std::size_t lo, std::size_t hi) {
    chunk_begin[j] = lo;
    auto& L = parts[j];
    L.rows.resize(hi - lo);
    for (std::size_t a = lo; a < hi; ++a)
      for (std::size_t b = 0; b < N; ++b) {
        const auto prod = mul(a, b);
        if (prod.empty()) continue;
        const auto begin = static_cast<std::uint32_t>(L.out.size());
        for (const auto& [k, c] : prod) {
          L.out.push_back(static_cast<std::uint32_t>(k));
          L.coeff.push_back(c);
        }
        L.rows[a - lo].push_back({static_cast<std::uint32_t>(b), begin, static_cast<std::uint32_t>(L.out.size())});
      }
  });
  ProductTable T;
  T.rows.resize(N);
  T.cols.resize(N);
  std::size_t a = 0;
  for (auto& L : parts) {
    const auto shift = static_cast<std::uint32_t>(T.out.size());
    T.out.insert(T.out.end(), L.out.begin(), L.out.end());
    T.coeff.insert(T.coeff.end(), L.coeff.begin(), L.coeff.end());
    for (auto& row : L.rows) {
      for (auto& cell : row) {
        cell.begin += shift;
        cell.end += shift;
        T.cols[cell.other].push_back({static_cast<std::uint32_t>(a), cell.begin, cell.end});
      }
      T.rows[a++] = std::move(row);
    }
  }
  return T;
}

// Checks (a b) c = a (b c) for every a, c with the middle factor b fixed.
// Returns the first failing (a, c) or nullopt.
std::optional<std::pair<std::size_t, std::size_t>> check_middle(const ProductTable& T, std::size_t N, std::size_t b) {
  std::unordered_map<std::uint64_t, Rational> acc;
  const auto key = [N](std::size_t a, std::size_t c, std::size_t o) {
    return (static_cast<std::uint64_t>(a) * N + c) * N + o;
  };
  // (a b) c
  for (const auto& cab : T.cols[b])
    for (std::uint32_t e = cab.begin; e < cab.end; ++e) {
      const std::size_t x = T.out[e];
      for (const auto& cxc : T.rows[x])
        for (std::uint32_t f = cxc.begin; f < cxc.end; ++f) acc[key(cab.other, cxc.other, T.out[f])] += T.coeff[e] * T.coeff[f];
    }
  // a (b c)
  for (const auto& cbc : T.rows[b])
    for (std::uint32_t e = cbc.begin; e < cbc.end; ++e) {
      const std::size_t y = T.out[e];
      for (const auto& cay : T.cols[y])
        for (std::uint32_t f = cay.begin; f < cay.end; ++f) acc[key(cay.other, cbc.other, T.out[f])] -= T.coeff[e] * T.coeff[f];
    }
  std::optional<std::uint64_t> worst;
  for (const auto& [k, v] : acc)
    if (!v.is_zero() && (!worst || k < *worst)) worst = k;
  if (!worst) return std::nullopt;
  const std::uint64_t ac = *worst / N;
  return std::make_pair(static_cast<std::size_t>(ac / N), static_cast<std::size_t>(ac % N));
}

} // namespace

AssocCertificate check_associativity(std::size_t N, const BasisProduct& mul, const CheckOptions& opts) {
  AssocCertificate cert;
  cert.signed_product = opts.signed_product;
  if (opts.exhaustive) {
    cert.mode = "exhaustive";
    if (N > opts.max_dim) throw std::invalid_argument("ring dimension exceeds exhaustive bound");
    const ProductTable T = build_table(N, mul, opts.jobs);
    const unsigned jobs = std::max(1u, opts.jobs);
    std::vector<std::optional<std::array<std::size_t, 3>>> found(jobs);
    parallel_chunks(jobs, N, [&](unsigned j, std::size_t lo, std::size_t hi) {
      for (std::size_t b = lo; b < hi; ++b)
        if (const auto bad = check_middle(T, N, b)) {
          found[j] = std::array<std::size_t, 3>{bad->first, b, bad->second};
          return;
        }
    });
    for (const auto& f : found)
      if (f) {
        cert.passed = false;
        cert.witness = f;
        break;
      }
    cert.count = static_cast<std::uint64_t>(N) * N * N;
    return cert;
  }
  cert.mode = "sampled";
  cert.seed = opts.seed;
  if (N == 0) return cert;
  std::mt19937_64 rng(opts.seed);
  const auto triple = [&](std::size_t a, std::size_t b, std::size_t c, bool left) {
    std::map<std::size_t, Rational> acc;
    const auto first = left ? mul(a, b) : mul(b, c);
    for (const auto& [x, u] : first)
      for (const auto& [y, v] : left ? mul(x, c) : mul(a, x)) {
        auto& slot = acc[y];
        slot += u * v;
      }
    std::erase_if(acc, [](const auto& kv) { return kv.second.is_zero(); });
    return acc;
  };
  for (std::size_t k = 0; k < opts.samples; ++k) {
    const std::size_t a = rng() % N, b = rng() % N, c = rng() % N;
    ++cert.count;
    if (triple(a, b, c, true) != triple(a, b, c, false)) {
      cert.passed = false;
      cert.witness = std::array<std::size_t, 3>{a, b, c};
      break;
    }
  }
  return cert;
}

} // namespace orbisym
