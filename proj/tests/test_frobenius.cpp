#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "orbisym/frobenius.hpp"
#include "orbisym/tensor.hpp"

using namespace orbisym;

namespace {

TensorClass pure(const FrobeniusAlgebra& alg, std::initializer_list<const char*> labels, Rational c = Rational(1)) {
  Tuple t;
  for (const char* l : labels) t.push_back(alg.index_of(l));
  return TensorClass::basis(t, c);
}

// Random integer combination of basis tuples of the given arity.
TensorClass random_class(const FrobeniusAlgebra& alg, std::size_t arity, std::mt19937_64& rng, int terms = 3) {
  TensorClass x(arity);
  for (int k = 0; k < terms; ++k) {
    Tuple t(arity);
    for (std::size_t i = 0; i < arity; ++i) t.set(i, rng() % alg.dim());
    x.add(t, Rational(static_cast<std::int64_t>(rng() % 7) - 3));
  }
  return x;
}

std::vector<int> random_surjection(std::mt19937_64& rng, std::size_t from, std::size_t to) {
  std::vector<int> phi(from);
  for (std::size_t i = 0; i < from; ++i) phi[i] = static_cast<int>(i < to ? i : rng() % to);
  std::shuffle(phi.begin(), phi.end(), rng);
  return phi;
}

bool has_failure(const ValidationReport& r, const std::string& axiom) {
  for (const auto& f : r.failures)
    if (f.axiom == axiom) return true;
  return false;
}

} // namespace

TEST_CASE("built-in algebras validate") {
  for (const auto& name : builtin_names()) {
    CAPTURE(name);
    CHECK(validate(builtin_spec(name)).ok());
  }
  CHECK(builtin_algebra("mock2")->dim() == 2);
  CHECK(builtin_algebra("k3")->dim() == 24);
  CHECK(builtin_algebra("abelian")->dim() == 16);
  CHECK(builtin_algebra("trivial")->dim() == 1);
  CHECK_THROWS(builtin_spec("nope"));
}

TEST_CASE("validation catches broken axioms") {
  SUBCASE("noncommutative odd products") {
    auto spec = builtin_spec("abelian");
    for (auto& sc : spec.struct_consts)
      if (sc.i == 2 && sc.j == 1) sc.coeff = -sc.coeff;  // x2 x1 = +x1x2
    const auto r = validate(spec);
    CHECK(has_failure(r, "commutative"));
  }
  SUBCASE("degenerate pairing") {
    auto spec = builtin_spec("mock2");
    spec.integral = {Rational(0), Rational(0)};
    CHECK(has_failure(validate(spec), "nondegenerate"));
    CHECK_THROWS_AS(FrobeniusAlgebra{spec}, InvalidAlgebra);
  }
  SUBCASE("integral outside top degree") {
    auto spec = builtin_spec("mock2");
    spec.integral = {Rational(1), Rational(1)};
    CHECK(has_failure(validate(spec), "integral"));
  }
  SUBCASE("inhomogeneous euler class") {
    auto spec = builtin_spec("mock2");
    spec.euler = {Rational(1), Rational(24)};
    CHECK(has_failure(validate(spec), "euler"));
  }
  SUBCASE("wrong unit") {
    auto spec = builtin_spec("mock2");
    spec.unit = {Rational(2), Rational(0)};
    CHECK(has_failure(validate(spec), "unit"));
  }
  SUBCASE("nonassociative") {
    // a^2 = 1 with a odd-free but a*1 != a breaks both unit and associativity
    auto spec = builtin_spec("k3");
    spec.struct_consts.push_back({1, 1, 1, Rational(1)});
    CHECK_FALSE(validate(spec).ok());
  }
}

TEST_CASE("abelian algebra is graded commutative") {
  const auto A = builtin_algebra("abelian");
  const auto x1 = A->index_of("x1"), x2 = A->index_of("x2"), x12 = A->index_of("x12");
  CHECK(A->product(x1, x2) == SparseVec{{x12, Rational(1)}});
  CHECK(A->product(x2, x1) == SparseVec{{x12, Rational(-1)}});
  CHECK(A->product(x1, x1).empty());
  CHECK(A->integral(A->index_of("x1234")) == Rational(1));
  CHECK(A->euler().empty());
}

TEST_CASE("k3 intersection form and euler class") {
  const auto A = builtin_algebra("k3");
  const auto pt = A->index_of("pt");
  CHECK(A->integral(pt) == Rational(1));
  CHECK(A->euler() == SparseVec{{pt, Rational(24)}});
  std::size_t h2 = A->basis_of_degree(2).size();
  CHECK(h2 == 22);
  Matrix form(22, 22);
  for (std::size_t i = 0; i < 22; ++i)
    for (std::size_t j = 0; j < 22; ++j) form(i, j) = A->gram(1 + i, 1 + j);
  CHECK(form.determinant() == Rational(-1));
}

TEST_CASE("tensor multiplication signs") {
  const auto A = builtin_algebra("abelian");
  const auto a = pure(*A, {"x1", "1"});
  const auto b = pure(*A, {"1", "x2"});
  CHECK(tensor_mul(*A, a, b) == pure(*A, {"x1", "x2"}));
  CHECK(tensor_mul(*A, b, a) == pure(*A, {"x1", "x2"}, Rational(-1)));
  CHECK_THROWS(tensor_mul(*A, a, pure(*A, {"x1"})));
}

TEST_CASE("pushforward along the diagonal") {
  const auto& A = *builtin_algebra("mock2");
  const std::vector<int> diag{0, 0};
  CHECK(pushforward(A, diag, pure(A, {"1"})) == pure(A, {"1", "p"}) + pure(A, {"p", "1"}));
  CHECK(pushforward(A, diag, pure(A, {"p"})) == pure(A, {"p", "p"}));
  const std::vector<int> triple{0, 0, 0};
  CHECK(pushforward(A, triple, pure(A, {"1"})) ==
        pure(A, {"1", "p", "p"}) + pure(A, {"p", "1", "p"}) + pure(A, {"p", "p", "1"}));
  // pulling back the diagonal class gives the Euler class
  CHECK(pullback(A, diag, 1, pushforward(A, diag, pure(A, {"1"}))) == pure(A, {"p"}, Rational(2)));
}

TEST_CASE("pullback is a ring map") {
  std::mt19937_64 rng(5);
  for (const char* name : {"mock2", "k3", "abelian"}) {
    const auto& A = *builtin_algebra(name);
    CAPTURE(name);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t I = 1 + rng() % 4, J = 1 + rng() % I;
      const auto phi = random_surjection(rng, I, J);
      const auto x = random_class(A, I, rng), y = random_class(A, I, rng);
      CHECK(pullback(A, phi, J, tensor_mul(A, x, y)) ==
            tensor_mul(A, pullback(A, phi, J, x), pullback(A, phi, J, y)));
      CHECK(pullback(A, phi, J, TensorClass::unit(A, I)) == TensorClass::unit(A, J));
    }
  }
}

TEST_CASE("transfer maps are functorial") {
  std::mt19937_64 rng(9);
  for (const char* name : {"mock2", "abelian", "k3"}) {
    const auto& A = *builtin_algebra(name);
    CAPTURE(name);
    for (int trial = 0; trial < 12; ++trial) {
      const std::size_t I = 2 + rng() % 3, J = 1 + rng() % I;
      const std::size_t K = 1 + rng() % J;
      const auto phi = random_surjection(rng, I, J);
      const auto psi = random_surjection(rng, J, K);
      std::vector<int> comp(I);
      for (std::size_t i = 0; i < I; ++i) comp[i] = psi[static_cast<std::size_t>(phi[i])];
      const auto x = random_class(A, I, rng);
      CHECK(pullback(A, psi, K, pullback(A, phi, J, x)) == pullback(A, comp, K, x));
      if (std::string(name) == "k3" && I > 3) continue;
      const auto z = random_class(A, K, rng, 2);
      CHECK(pushforward(A, phi, pushforward(A, psi, z)) == pushforward(A, comp, z));
    }
  }
}

TEST_CASE("pushforward adjunction and projection formula") {
  std::mt19937_64 rng(13);
  for (const char* name : {"mock2", "abelian"}) {
    const auto& A = *builtin_algebra(name);
    CAPTURE(name);
    for (int trial = 0; trial < 15; ++trial) {
      const std::size_t I = 1 + rng() % 4, J = 1 + rng() % I;
      const auto phi = random_surjection(rng, I, J);
      const auto x = random_class(A, I, rng);
      const auto y = random_class(A, J, rng);
      CHECK(pairing(A, pushforward(A, phi, y), x) == pairing(A, y, pullback(A, phi, J, x)));
      CHECK(pushforward(A, phi, tensor_mul(A, pullback(A, phi, J, x), y)) ==
            tensor_mul(A, x, pushforward(A, phi, y)));
    }
  }
}

TEST_CASE("identity surjection is the identity") {
  const auto& A = *builtin_algebra("abelian");
  std::mt19937_64 rng(2);
  const std::vector<int> id{0, 1, 2};
  const auto x = random_class(A, 3, rng, 6);
  CHECK(pullback(A, id, 3, x) == x);
  CHECK(pushforward(A, id, x) == x);
  CHECK(relabel(A, id, x) == x);
}

TEST_CASE("relabel is a signed group action compatible with products") {
  const auto& A = *builtin_algebra("abelian");
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    std::vector<int> s(n), t(n), st(n);
    std::iota(s.begin(), s.end(), 0);
    std::iota(t.begin(), t.end(), 0);
    std::shuffle(s.begin(), s.end(), rng);
    std::shuffle(t.begin(), t.end(), rng);
    for (std::size_t i = 0; i < n; ++i) st[i] = s[static_cast<std::size_t>(t[i])];
    const auto x = random_class(A, n, rng), y = random_class(A, n, rng);
    CHECK(relabel(A, s, relabel(A, t, x)) == relabel(A, st, x));
    CHECK(relabel(A, s, tensor_mul(A, x, y)) == tensor_mul(A, relabel(A, s, x), relabel(A, s, y)));
    CHECK(pairing(A, relabel(A, s, x), relabel(A, s, y)) == pairing(A, x, y));
  }
  const auto swapped = relabel(A, std::vector<int>{1, 0}, pure(A, {"x1", "x2"}));
  CHECK(swapped == pure(A, {"x2", "x1"}, Rational(-1)));
}

TEST_CASE("pairing of tensor powers is nondegenerate") {
  const auto& A = *builtin_algebra("abelian");
  CHECK(pair_tuples(A, Tuple{A.index_of("x1")}, Tuple{A.index_of("x234")}) == Rational(1));
  CHECK(pair_tuples(A, Tuple{A.index_of("x234")}, Tuple{A.index_of("x1")}) == Rational(-1));
  const auto& M = *builtin_algebra("mock2");
  CHECK(integrate(M, euler_tensor(M, std::vector<int>{1, 1})) == Rational(576));
  int count = 0;
  for_each_tuple_of_degree(A, 2, 4, [&](const Tuple&) { ++count; });
  CHECK(count == 70);  // coefficient of t^4 in (1+t)^8
}

TEST_CASE("diagonal euler class") {
  CHECK(diagonal_euler(*builtin_algebra("k3")) == SparseVec{{23, Rational(24)}});
  CHECK(diagonal_euler(*builtin_algebra("abelian")).empty());
  CHECK(diagonal_euler(*builtin_algebra("trivial")) == SparseVec{{0, Rational(1)}});
  CHECK(diagonal_euler(*builtin_algebra("mock2")) == SparseVec{{1, Rational(2)}});
}
