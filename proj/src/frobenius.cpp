#include "orbisym/frobenius.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>

namespace orbisym {

namespace {

constexpr std::size_t kMaxBasis = 255;

bool sparse_equal(const SparseVec& a, const SparseVec& b) { return a == b; }

SparseVec scaled(const SparseVec& v, const Rational& c) {
  SparseVec out;
  if (c.is_zero()) return out;
  for (const auto& [k, x] : v) out.emplace(k, x * c);
  return out;
}

SparseVec dense_to_sparse(const std::vector<Rational>& v) {
  SparseVec out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out.emplace(i, v[i]);
  return out;
}

std::vector<SparseVec> build_table(const FrobeniusAlgebraSpec& spec) {
  const std::size_t n = spec.basis.size();
  std::vector<SparseVec> table(n * n);
  for (const auto& sc : spec.struct_consts) {
    auto& cell = table[sc.i * n + sc.j];
    cell[sc.k] += sc.coeff;
    if (cell[sc.k].is_zero()) cell.erase(sc.k);
  }
  return table;
}

SparseVec mul(const std::vector<SparseVec>& table, std::size_t n, const SparseVec& a, const SparseVec& b) {
  SparseVec out;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) axpy(out, x * y, table[i * n + j]);
  return out;
}

std::optional<int> homogeneous_degree(const FrobeniusAlgebraSpec& spec, const SparseVec& v) {
  std::optional<int> deg;
  for (const auto& [k, c] : v) {
    if (deg && *deg != spec.basis[k].degree) return std::nullopt;
    deg = spec.basis[k].degree;
  }
  return deg;
}

} // namespace

ValidationReport validate(const FrobeniusAlgebraSpec& spec) {
  ValidationReport report;
  const auto fail = [&](std::string axiom, std::vector<std::size_t> witness, std::string detail) {
    report.failures.push_back({std::move(axiom), std::move(witness), std::move(detail)});
  };

  const std::size_t n = spec.basis.size();
  if (spec.d < 0) fail("shape", {}, "d must be nonnegative");
  if (n == 0 || n > kMaxBasis) fail("shape", {}, "basis size must be in 1..255");
  if (spec.unit.size() != n || spec.integral.size() != n || spec.euler.size() != n)
    fail("shape", {}, "unit, integral and euler must have one entry per basis element");
  for (std::size_t i = 0; i < n; ++i)
    if (spec.basis[i].degree < 0 || spec.basis[i].degree > 2 * spec.d)
      fail("shape", {i}, "basis degree outside 0..2d");
  for (const auto& sc : spec.struct_consts)
    if (sc.i >= n || sc.j >= n || sc.k >= n) fail("shape", {sc.i, sc.j, sc.k}, "structure constant index out of range");
  if (!report.ok()) return report;

  const auto table = build_table(spec);
  const auto cell = [&](std::size_t i, std::size_t j) -> const SparseVec& { return table[i * n + j]; };
  const auto deg = [&](std::size_t i) { return spec.basis[i].degree; };

  [&] {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (const auto& [k, c] : cell(i, j))
          if (deg(k) != deg(i) + deg(j)) return fail("graded", {i, j, k}, "product does not add degrees");
  }();

  [&] {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const int s = (deg(i) * deg(j)) % 2 == 0 ? 1 : -1;
        if (!sparse_equal(cell(i, j), scaled(cell(j, i), Rational(s))))
          return fail("commutative", {i, j}, "b_i b_j != (-1)^{|i||j|} b_j b_i");
      }
  }();

  [&] {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          const SparseVec left = mul(table, n, cell(i, j), SparseVec{{k, Rational(1)}});
          const SparseVec right = mul(table, n, SparseVec{{i, Rational(1)}}, cell(j, k));
          if (!sparse_equal(left, right)) return fail("associative", {i, j, k}, "(b_i b_j) b_k != b_i (b_j b_k)");
        }
  }();

  [&] {
    const SparseVec unit = dense_to_sparse(spec.unit);
    const auto ud = homogeneous_degree(spec, unit);
    if (unit.empty() || !ud || *ud != 0) return fail("unit", {}, "unit must be a nonzero degree-0 element");
    for (std::size_t i = 0; i < n; ++i) {
      const SparseVec bi{{i, Rational(1)}};
      if (!sparse_equal(mul(table, n, unit, bi), bi) || !sparse_equal(mul(table, n, bi, unit), bi))
        return fail("unit", {i}, "unit does not act as identity");
    }
  }();

  [&] {
    for (std::size_t i = 0; i < n; ++i)
      if (!spec.integral[i].is_zero() && deg(i) != 2 * spec.d)
        return fail("integral", {i}, "integral must vanish below degree 2d");
  }();

  [&] {
    Matrix gram(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (const auto& [k, c] : cell(i, j)) gram(i, j) += c * spec.integral[k];
    if (gram.rank() != n) fail("nondegenerate", {}, "pairing Gram matrix is singular");
  }();

  [&] {
    for (std::size_t i = 0; i < n; ++i)
      if (!spec.euler[i].is_zero() && deg(i) != 2 * spec.d)
        return fail("euler", {i}, "Euler class must be homogeneous of degree 2d");
  }();

  return report;
}

FrobeniusAlgebra::FrobeniusAlgebra(FrobeniusAlgebraSpec spec) : spec_(std::move(spec)) {
  auto report = validate(spec_);
  if (!report.ok()) {
    std::string what = "algebra '" + spec_.name + "' fails axiom '" + report.failures.front().axiom + "'";
    throw InvalidAlgebra(what, std::move(report));
  }
  const std::size_t n = dim();
  mult_ = build_table(spec_);
  unit_ = dense_to_sparse(spec_.unit);
  euler_ = dense_to_sparse(spec_.euler);
  gram_ = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gram_(i, j) = integrate(product(i, j));
  const auto inv = gram_.inverse();
  if (!inv) throw std::logic_error("validated algebra has singular Gram matrix");
  gram_inv_rows_.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!(*inv)(i, j).is_zero()) gram_inv_rows_[i].emplace_back(j, (*inv)(i, j));
  by_degree_.resize(static_cast<std::size_t>(top_degree()) + 1);
  for (std::size_t i = 0; i < n; ++i) {
    by_degree_[static_cast<std::size_t>(degree(i))].push_back(i);
    has_odd_ = has_odd_ || odd(i);
  }
}

std::size_t FrobeniusAlgebra::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < dim(); ++i)
    if (spec_.basis[i].label == label) return i;
  throw std::invalid_argument("unknown basis label '" + label + "' in algebra '" + name() + "'");
}

SparseVec FrobeniusAlgebra::multiply(const SparseVec& a, const SparseVec& b) const { return mul(mult_, dim(), a, b); }

Rational FrobeniusAlgebra::integrate(const SparseVec& a) const {
  Rational s;
  for (const auto& [k, c] : a) s += c * spec_.integral[k];
  return s;
}

SparseVec FrobeniusAlgebra::euler_power(int k) const {
  if (k < 0) throw std::invalid_argument("negative Euler power");
  SparseVec out = unit_;
  for (int i = 0; i < k; ++i) {
    out = multiply(out, euler_);
    if (out.empty()) break;
  }
  return out;
}

const std::vector<std::size_t>& FrobeniusAlgebra::basis_of_degree(int deg) const {
  static const std::vector<std::size_t> empty;
  if (deg < 0 || deg > top_degree()) return empty;
  return by_degree_[static_cast<std::size_t>(deg)];
}

namespace {

FrobeniusAlgebraSpec mock2_spec() {
  FrobeniusAlgebraSpec s;
  s.name = "mock2";
  s.d = 2;
  s.basis = {{"1", 0}, {"p", 4}};
  s.unit = {Rational(1), Rational(0)};
  s.struct_consts = {{0, 0, 0, Rational(1)}, {0, 1, 1, Rational(1)}, {1, 0, 1, Rational(1)}};
  s.integral = {Rational(0), Rational(1)};
  s.euler = {Rational(0), Rational(24)};
  return s;
}

FrobeniusAlgebraSpec abelian_spec() {
  // Exterior algebra on x1..x4; basis indexed by subsets, ordered by size then lexicographically.
  std::vector<unsigned> masks;
  for (unsigned m = 0; m < 16; ++m) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
    if (std::popcount(a) != std::popcount(b)) return std::popcount(a) < std::popcount(b);
    // lexicographic on the sorted generator list
    for (unsigned bit = 0; bit < 4; ++bit) {
      const bool ia = (a >> bit) & 1u, ib = (b >> bit) & 1u;
      if (ia != ib) return ia;
    }
    return false;
  });
  std::map<unsigned, std::size_t> index;
  FrobeniusAlgebraSpec s;
  s.name = "abelian";
  s.d = 2;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    index[masks[i]] = i;
    std::string label = masks[i] == 0 ? "1" : "x";
    for (unsigned bit = 0; bit < 4; ++bit)
      if ((masks[i] >> bit) & 1u) label += std::to_string(bit + 1);
    s.basis.push_back({label, std::popcount(masks[i])});
  }
  const std::size_t n = masks.size();
  s.unit.assign(n, Rational(0));
  s.unit[index[0]] = Rational(1);
  for (unsigned a : masks)
    for (unsigned b : masks) {
      if (a & b) continue;
      // sign of merging the generator word of a followed by b into sorted order
      int inversions = 0;
      for (unsigned i = 0; i < 4; ++i)
        if ((a >> i) & 1u)
          for (unsigned j = 0; j < i; ++j)
            if ((b >> j) & 1u) ++inversions;
      s.struct_consts.push_back({index[a], index[b], index[a | b], Rational(inversions % 2 == 0 ? 1 : -1)});
    }
  s.integral.assign(n, Rational(0));
  s.integral[index[15]] = Rational(1);
  s.euler.assign(n, Rational(0));
  return s;
}

FrobeniusAlgebraSpec trivial_spec() {
  FrobeniusAlgebraSpec s;
  s.name = "trivial";
  s.d = 0;
  s.basis = {{"1", 0}};
  s.unit = {Rational(1)};
  s.struct_consts = {{0, 0, 0, Rational(1)}};
  s.integral = {Rational(1)};
  s.euler = {Rational(1)};
  return s;
}

} // namespace

FrobeniusAlgebraSpec k3_spec(const Matrix* form) {
  constexpr std::size_t h2 = 22;
  Matrix q(h2, h2);
  if (form) {
    if (form->rows() != h2 || form->cols() != h2) throw std::invalid_argument("K3 form must be 22x22");
    q = *form;
  } else {
    for (std::size_t p = 0; p < 3; ++p) {
      q(2 * p, 2 * p + 1) = Rational(1);
      q(2 * p + 1, 2 * p) = Rational(1);
    }
    for (std::size_t i = 6; i < h2; ++i) q(i, i) = Rational(-1);
  }
  FrobeniusAlgebraSpec s;
  s.name = "k3";
  s.d = 2;
  s.basis.push_back({"1", 0});
  for (std::size_t i = 0; i < h2; ++i) s.basis.push_back({"a" + std::to_string(i + 1), 2});
  s.basis.push_back({"pt", 4});
  const std::size_t n = s.basis.size();
  const std::size_t pt = n - 1;
  s.unit.assign(n, Rational(0));
  s.unit[0] = Rational(1);
  for (std::size_t i = 0; i < n; ++i) {
    s.struct_consts.push_back({0, i, i, Rational(1)});
    if (i != 0) s.struct_consts.push_back({i, 0, i, Rational(1)});
  }
  for (std::size_t i = 0; i < h2; ++i)
    for (std::size_t j = 0; j < h2; ++j)
      if (!q(i, j).is_zero()) s.struct_consts.push_back({i + 1, j + 1, pt, q(i, j)});
  std::sort(s.struct_consts.begin(), s.struct_consts.end(), [](const StructConst& a, const StructConst& b) {
    return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
  });
  s.integral.assign(n, Rational(0));
  s.integral[pt] = Rational(1);
  s.euler.assign(n, Rational(0));
  s.euler[pt] = Rational(24);
  return s;
}

std::vector<std::string> builtin_names() { return {"mock2", "k3", "abelian", "trivial"}; }

FrobeniusAlgebraSpec builtin_spec(const std::string& name) {
  if (name == "mock2") return mock2_spec();
  if (name == "k3") return k3_spec();
  if (name == "abelian") return abelian_spec();
  if (name == "trivial") return trivial_spec();
  throw std::invalid_argument("unknown built-in algebra '" + name + "'");
}

AlgebraPtr builtin_algebra(const std::string& name) {
  // built-ins are shared for the life of the process
  static std::mutex mu;
  static std::map<std::string, AlgebraPtr> cache;
  const std::lock_guard lock(mu);
  auto& slot = cache[name];
  if (!slot) slot = std::make_shared<const FrobeniusAlgebra>(builtin_spec(name));
  return slot;
}

} // namespace orbisym
