#include <random>

#include "doctest.h"
#include "orbisym/orbifold.hpp"

using namespace orbisym;

namespace {

std::size_t el(const OrbifoldRing& R, const char* cycles) {
  return R.group().index_of(Permutation::parse(cycles, R.n()));
}

TensorClass pure(const FrobeniusAlgebra& alg, std::initializer_list<const char*> labels, Rational c = Rational(1)) {
  Tuple t;
  for (const char* l : labels) t.push_back(alg.index_of(l));
  return TensorClass::basis(t, c);
}

OrbifoldClass random_class(const OrbifoldRing& R, std::mt19937_64& rng, int terms = 3) {
  OrbifoldClass x;
  for (int k = 0; k < terms; ++k) {
    const auto [g, t] = R.basis_element(rng() % R.dim());
    x.add(g, t, Rational(static_cast<std::int64_t>(rng() % 5) - 2));
  }
  return x;
}

// Random element supported on one sector with homogeneous tuples.
OrbifoldClass random_homogeneous(const OrbifoldRing& R, std::mt19937_64& rng) {
  const auto [g, t] = R.basis_element(rng() % R.dim());
  OrbifoldClass x = OrbifoldClass::single(g, TensorClass::basis(t));
  const int deg = tuple_degree(R.algebra(), t);
  for (int k = 0; k < 2; ++k) {
    const auto [g2, t2] = R.basis_element(R.offset(g) + rng() % R.sector_dim(g));
    if (tuple_degree(R.algebra(), t2) == deg) x.add(g, t2, Rational(static_cast<std::int64_t>(rng() % 3) + 1));
  }
  return x;
}

int parity(const OrbifoldRing& R, const OrbifoldClass& x) {
  const auto [even, odd] = R.even_odd_split(x);
  REQUIRE((even.is_zero() || odd.is_zero()));
  return odd.is_zero() ? 0 : 1;
}

} // namespace

TEST_CASE("obstruction classes") {
  const auto R = OrbifoldRing::symmetric(builtin_algebra("mock2"), 3);
  const auto& A = R->algebra();
  CHECK(R->obstruction_class(0, 0) == TensorClass::unit(A, 3));
  CHECK(R->obstruction_class(el(*R, "(1 2)"), el(*R, "(2 3)")) == TensorClass::unit(A, 1));
  const auto c = el(*R, "(1 2 3)");
  CHECK(R->obstruction_class(c, c) == pure(A, {"p"}, Rational(24)));
}

TEST_CASE("mock2 products") {
  const auto R2 = OrbifoldRing::symmetric(builtin_algebra("mock2"), 2);
  const auto& A = R2->algebra();
  const auto t = el(*R2, "(1 2)");
  const auto one_t = OrbifoldClass::single(t, pure(A, {"1"}));
  CHECK(R2->multiply(one_t, one_t) == OrbifoldClass::single(0, pure(A, {"1", "p"}) + pure(A, {"p", "1"})));
  // untwisted sector is the plain cup product
  const auto x = OrbifoldClass::single(0, pure(A, {"p", "1"}));
  const auto y = OrbifoldClass::single(0, pure(A, {"1", "p"}));
  CHECK(R2->multiply(x, y) == OrbifoldClass::single(0, pure(A, {"p", "p"})));

  const auto R3 = OrbifoldRing::symmetric(builtin_algebra("mock2"), 3);
  const auto c = el(*R3, "(1 2 3)");
  const auto one_c = OrbifoldClass::single(c, pure(A, {"1"}));
  CHECK(R3->multiply(one_c, one_c) == OrbifoldClass::single(el(*R3, "(1 3 2)"), pure(A, {"p"}, Rational(24))));
}

TEST_CASE("cached pushforward agrees with the Gram solve") {
  std::mt19937_64 rng(21);
  for (const char* name : {"mock2", "abelian", "k3", "trivial"}) {
    CAPTURE(name);
    const auto R = OrbifoldRing::symmetric(builtin_algebra(name), 3);
    const auto& A = R->algebra();
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t I = 1 + rng() % 3, J = 1 + rng() % I;
      std::vector<int> phi(I);
      for (std::size_t i = 0; i < I; ++i) phi[i] = static_cast<int>(i < J ? i : rng() % J);
      std::shuffle(phi.begin(), phi.end(), rng);
      TensorClass y(J);
      for (int k = 0; k < 3; ++k) {
        Tuple u(J);
        for (std::size_t j = 0; j < J; ++j) u.set(j, rng() % A.dim());
        y.add(u, Rational(static_cast<std::int64_t>(rng() % 5) - 2));
      }
      CHECK(R->push(phi, y) == pushforward(A, phi, y));
    }
  }
}

TEST_CASE("group action and symmetrization") {
  const auto R = OrbifoldRing::symmetric(builtin_algebra("mock2"), 2);
  const auto& A = R->algebra();
  const auto t = el(*R, "(1 2)");
  const auto x = OrbifoldClass::single(0, pure(A, {"p", "1"}));
  CHECK(R->group_act(t, x) == OrbifoldClass::single(0, pure(A, {"1", "p"})));
  CHECK(R->group_act(0, x) == x);
  const auto sym = R->symmetrize(x);
  CHECK(sym == OrbifoldClass::single(0, (pure(A, {"p", "1"}) + pure(A, {"1", "p"})) * Rational(1, 2)));
  CHECK(R->symmetrize(sym) == sym);
  CHECK(R->is_invariant(sym));
  CHECK_FALSE(R->is_invariant(x));
  CHECK_THROWS_WITH((void)R->group_act(Permutation::parse("(1 2)", 3), x), "element not in group");

  // units transport to units
  const auto R3 = OrbifoldRing::symmetric(builtin_algebra("k3"), 3);
  const auto g = el(*R3, "(1 2)");
  const auto u = OrbifoldClass::single(g, TensorClass::unit(R3->algebra(), 2));
  const auto h = el(*R3, "(1 3)");
  CHECK(R3->group_act(h, u) == OrbifoldClass::single(R3->group().conjugate(h, g), TensorClass::unit(R3->algebra(), 2)));
}

TEST_CASE("group action composes") {
  const auto R = OrbifoldRing::symmetric(builtin_algebra("abelian"), 3);
  std::mt19937_64 rng(4);
  const auto& G = R->group();
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = random_class(*R, rng);
    const std::size_t a = rng() % G.order(), b = rng() % G.order();
    CHECK(R->group_act(a, R->group_act(b, x)) == R->group_act(G.multiply(a, b), x));
  }
}

TEST_CASE("orbifold Poincare polynomials") {
  const auto R1 = std::make_shared<OrbifoldRing>(builtin_algebra("mock2"), close_subgroup({}, 1));
  CHECK(orbifold_poincare(*R1) == PoincarePolynomial{{0, 1}, {8, 1}});
  const auto K2 = OrbifoldRing::symmetric(builtin_algebra("k3"), 2);
  CHECK(orbifold_poincare(*K2) == PoincarePolynomial{{0, 1}, {4, 23}, {8, 276}, {12, 23}, {16, 1}});
  CHECK(orbifold_poincare(*K2, 4) == PoincarePolynomial{{-8, 1}, {-4, 23}, {0, 276}, {4, 23}, {8, 1}});
  const auto Ab = OrbifoldRing::symmetric(builtin_algebra("abelian"), 2);
  const auto p = orbifold_poincare(*Ab);
  std::int64_t total = 0;
  for (const auto& [deg, dim] : p) total += dim;
  CHECK(total == 144);
  CHECK(p == PoincarePolynomial{{0, 1}, {2, 4}, {4, 13}, {6, 32}, {8, 44}, {10, 32}, {12, 13}, {14, 4}, {16, 1}});
}

TEST_CASE("integral and pairing") {
  const auto R = OrbifoldRing::symmetric(builtin_algebra("mock2"), 2);
  const auto& A = R->algebra();
  const auto t = el(*R, "(1 2)");
  CHECK(R->pairing(OrbifoldClass::single(t, pure(A, {"p"})), OrbifoldClass::single(t, pure(A, {"1"}))) == Rational(1));
  CHECK(R->pairing(OrbifoldClass::single(0, pure(A, {"1", "1"})), OrbifoldClass::single(0, pure(A, {"p", "p"}))) ==
        Rational(1));
  CHECK(R->pairing(OrbifoldClass::single(0, pure(A, {"p", "p"})), OrbifoldClass::single(t, pure(A, {"p"}))) ==
        Rational(0));
  CHECK(R->integral(OrbifoldClass::single(0, pure(A, {"p", "p"})), true) == Rational(1, 2));
}

TEST_CASE("pairing vanishes off g, g^-1 blocks") {
  const auto R = OrbifoldRing::symmetric(builtin_algebra("abelian"), 3);
  std::mt19937_64 rng(8);
  const auto& G = R->group();
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t a = rng() % R->dim(), b = rng() % R->dim();
    if (G.multiply(R->sector_of(a), R->sector_of(b)) != 0)
      CHECK(R->pairing(R->basis_class(a), R->basis_class(b)) == Rational(0));
  }
}

TEST_CASE("pairing Gram matrix") {
  for (const char* name : {"mock2", "abelian"})
    for (int n = 1; n <= 2; ++n) {
      CAPTURE(name);
      CAPTURE(n);
      const auto rep = check_pairing(*OrbifoldRing::symmetric(builtin_algebra(name), n));
      CHECK(rep.block_antidiagonal);
      CHECK(rep.nondegenerate);
    }
}

TEST_CASE("even and odd parts") {
  const auto R = OrbifoldRing::symmetric(builtin_algebra("abelian"), 1);
  const auto& A = R->algebra();
  const auto x1 = OrbifoldClass::single(0, pure(A, {"x1"}));
  const auto x12 = OrbifoldClass::single(0, pure(A, {"x12"}));
  auto [even, odd] = R->even_odd_split(x1 + x12);
  CHECK(even == x12);
  CHECK(odd == x1);
  const auto M = OrbifoldRing::symmetric(builtin_algebra("mock2"), 2);
  std::mt19937_64 rng(1);
  CHECK(M->even_odd_split(random_class(*M, rng)).second.is_zero());
}

TEST_CASE("support rule and grading") {
  std::mt19937_64 rng(31);
  for (const char* name : {"mock2", "abelian", "k3"}) {
    CAPTURE(name);
    const auto R = OrbifoldRing::symmetric(builtin_algebra(name), 3);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t a = rng() % R->dim(), b = rng() % R->dim();
      const auto [g, s] = R->basis_element(a);
      const auto [h, t] = R->basis_element(b);
      const int expected = R->doubled_degree(g, s) + R->doubled_degree(h, t);
      for (const auto& [k, c] : R->multiply_basis(a, b)) {
        const auto [sector, w] = R->basis_element(k);
        CHECK(sector == R->group().multiply(g, h));
        CHECK(R->doubled_degree(sector, w) == expected);
      }
    }
  }
}

TEST_CASE("product is G-equivariant") {
  std::mt19937_64 rng(12);
  for (const char* name : {"mock2", "abelian"}) {
    const auto R = OrbifoldRing::symmetric(builtin_algebra(name), 3);
    for (int trial = 0; trial < 40; ++trial) {
      const auto x = random_class(*R, rng), y = random_class(*R, rng);
      const std::size_t v = rng() % R->group().order();
      for (bool sgn : {false, true})
        CHECK(R->group_act(v, R->multiply(x, y, sgn)) == R->multiply(R->group_act(v, x), R->group_act(v, y), sgn));
    }
  }
}

TEST_CASE("c(g, g^-1) is the unit") {
  const auto R = OrbifoldRing::symmetric(builtin_algebra("mock2"), 4);
  for (std::size_t g = 0; g < R->group().order(); ++g) {
    const auto& p = R->pair(g, R->group().inverse(g));
    for (int k : p.defects) CHECK(k == 0);
    CHECK(p.obstruction == TensorClass::unit(R->algebra(), p.joint.size()));
  }
}

TEST_CASE("abelian surface: terms survive iff the orbit count condition holds") {
  const auto R = OrbifoldRing::symmetric(builtin_algebra("abelian"), 4);
  const auto& G = R->group();
  for (std::size_t g = 0; g < G.order(); ++g)
    for (std::size_t h = 0; h < G.order(); ++h) {
      const auto& p = R->pair(g, h);
      const std::size_t lhs = R->orbits(g).size() + R->orbits(h).size() + R->orbits(p.gh).size();
      const std::size_t rhs = 2 * p.joint.size() + 4;
      CHECK(p.vanishes == (lhs != rhs));
    }
}

namespace {

// mock2 with e equal to the class of the restricted diagonal, chi(A) p = 2p
AlgebraPtr mock2_consistent() {
  auto spec = builtin_spec("mock2");
  spec.name = "mock2-chi";
  spec.euler = {Rational(0), Rational(2)};
  return std::make_shared<const FrobeniusAlgebra>(spec);
}

} // namespace

TEST_CASE("associativity") {
  const auto M3 = OrbifoldRing::symmetric(mock2_consistent(), 3);
  CheckOptions opts;
  const auto cert = check_associativity(*M3, opts);
  CHECK(cert.passed);
  CHECK(cert.count == 13824);
  opts.signed_product = true;
  opts.jobs = 2;
  CHECK(check_associativity(*M3, opts).passed);

  const auto A2 = OrbifoldRing::symmetric(builtin_algebra("abelian"), 2);
  opts.max_dim = A2->dim();
  CHECK(check_associativity(*A2, opts).passed);
  opts.max_dim = 10;
  CHECK_THROWS(check_associativity(*A2, opts));

  CheckOptions sampled;
  sampled.exhaustive = false;
  sampled.samples = 200;
  sampled.signed_product = true;
  const auto M4 = OrbifoldRing::symmetric(mock2_consistent(), 4);
  const auto sc = check_associativity(*M4, sampled);
  CHECK(sc.passed);
  CHECK(sc.count == 200);
  CHECK(sc.mode == "sampled");
}

TEST_CASE("an Euler class off the diagonal class breaks associativity") {
  const auto R = OrbifoldRing::symmetric(builtin_algebra("mock2"), 3);
  const auto cert = check_associativity(*R, CheckOptions{});
  REQUIRE_FALSE(cert.passed);
  REQUIRE(cert.witness);
  const auto [a, b, c] = *cert.witness;
  const auto A = R->basis_class(a), B = R->basis_class(b), C = R->basis_class(c);
  CHECK_FALSE(R->multiply(R->multiply(A, B), C) == R->multiply(A, R->multiply(B, C)));
  CHECK(diagonal_euler(R->algebra()) == SparseVec{{1, Rational(2)}});
  CHECK(R->algebra().euler() == SparseVec{{1, Rational(24)}});
}

TEST_CASE("skew commutativity of invariant classes") {
  std::mt19937_64 rng(77);
  for (const char* name : {"mock2", "abelian", "k3"}) {
    CAPTURE(name);
    const auto R = OrbifoldRing::symmetric(builtin_algebra(name), 3);
    for (int trial = 0; trial < 25; ++trial) {
      const auto alpha = R->symmetrize(random_homogeneous(*R, rng));
      if (alpha.is_zero()) continue;
      const auto beta = random_homogeneous(*R, rng);
      const int sign = parity(*R, alpha) * parity(*R, beta) ? -1 : 1;
      CHECK(R->multiply(alpha, beta) == R->multiply(beta, alpha) * Rational(sign));
    }
  }
}

TEST_CASE("skew commutativity certificate") {
  for (const char* name : {"mock2", "abelian", "trivial"}) {
    CAPTURE(name);
    const auto R = OrbifoldRing::symmetric(builtin_algebra(name), 3);
    for (bool sgn : {false, true}) {
      const auto cert = check_skew_commutativity(*R, 3, 40, sgn);
      CHECK(cert.passed);
      CHECK(cert.count == 40);
      CHECK(cert.signed_product == sgn);
    }
  }
}

TEST_CASE("subring for a subgroup") {
  const auto alg = builtin_algebra("mock2");
  const auto G = OrbifoldRing::symmetric(alg, 4);
  const std::vector<Permutation> gens{Permutation::parse("(1 2)(3 4)", 4), Permutation::parse("(1 3)(2 4)", 4)};
  const OrbifoldRing H(alg, close_subgroup(gens, 4));
  std::mt19937_64 rng(5);
  const auto to_big = [&](const OrbifoldClass& x) {
    OrbifoldClass out;
    for (const auto& [g, comp] : x.components()) out.add(G->group().index_of(H.group().element(g)), comp);
    return out;
  };
  for (int trial = 0; trial < 40; ++trial) {
    const auto x = random_class(H, rng), y = random_class(H, rng);
    CHECK(to_big(H.multiply(x, y)) == G->multiply(to_big(x), to_big(y)));
  }
}

TEST_CASE("Chen-Ruan presentation") {
  const auto R = OrbifoldRing::symmetric(builtin_algebra("mock2"), 3);
  const auto& A = R->algebra();
  const auto& G = R->group();
  const std::size_t transp = G.class_of(el(*R, "(1 2)"));
  CRClass unit_t;
  unit_t.components.emplace(transp, TensorClass::unit(A, 2));
  const auto psi = R->to_CR(unit_t);
  CHECK(psi.components().size() == 3);
  for (const auto& [g, comp] : psi.components()) {
    CHECK(G.class_of(g) == transp);
    CHECK(comp == TensorClass::unit(A, 2));
  }
  CHECK(R->from_CR(psi) == unit_t);
  CHECK(R->is_invariant(psi));

  CRClass bad;
  const std::size_t rep = R->class_rep(transp);
  TensorClass skew(2);
  skew.add(Tuple{0, 1}, Rational(1));  // 1 (x) p over O(rep); not fixed if rep swaps the blocks
  bad.components.emplace(G.class_of(0), TensorClass::unit(A, 3));
  CHECK_NOTHROW((void)R->to_CR(bad));
  CHECK_THROWS((void)R->from_CR(OrbifoldClass::single(rep, skew)));

  // round trip on random centralizer-invariant classes
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inv = R->symmetrize(random_class(*R, rng, 4));
    const auto cr = R->from_CR(inv);
    CHECK(R->to_CR(cr) == inv);
  }
}

TEST_CASE("triple pairing matches the quotient integral") {
  std::mt19937_64 rng(19);
  for (int n : {2, 3}) {
    const auto R = OrbifoldRing::symmetric(builtin_algebra("mock2"), n);
    for (int trial = 0; trial < 15; ++trial) {
      const auto a = R->from_CR(R->symmetrize(random_class(*R, rng))),
                 b = R->from_CR(R->symmetrize(random_class(*R, rng))),
                 c = R->from_CR(R->symmetrize(random_class(*R, rng)));
      const auto lhs = R->cr_triple_pairing(a, b, c);
      const auto rhs = R->integral(R->multiply(R->multiply(R->to_CR(a), R->to_CR(b)), R->to_CR(c)), true);
      CHECK(lhs == rhs);
    }
  }
  // a unit third factor reduces to the two-point pairing
  const auto R = OrbifoldRing::symmetric(builtin_algebra("mock2"), 2);
  const auto& A = R->algebra();
  CRClass t1, pt;
  t1.components.emplace(R->group().class_of(1), TensorClass::unit(A, 1));
  pt.components.emplace(0, pure(A, {"p", "p"}));
  CRClass unit;
  unit.components.emplace(0, TensorClass::unit(A, 2));
  CHECK(R->cr_triple_pairing(t1, t1, unit) == R->pairing(R->to_CR(t1), R->to_CR(t1), true));
  CHECK(R->cr_triple_pairing(t1, t1, pt) == R->integral(R->multiply(R->multiply(R->to_CR(t1), R->to_CR(t1)), R->to_CR(pt)), true));
}
