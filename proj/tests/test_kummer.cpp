#include <random>

#include "doctest.h"
#include "orbisym/kummer.hpp"

using namespace orbisym;

namespace {

std::size_t el(const KummerRing& R, const char* cycles) {
  return R.base().group().index_of(Permutation::parse(cycles, R.n()));
}

PoincarePolynomial times_one_plus_t4(const PoincarePolynomial& p) {
  constexpr std::int64_t binom[] = {1, 4, 6, 4, 1};
  PoincarePolynomial out;
  for (const auto& [deg, dim] : p)
    for (int j = 0; j <= 4; ++j) out[deg + 2 * j] += dim * binom[j];
  return out;
}

std::int64_t total(const PoincarePolynomial& p) {
  std::int64_t s = 0;
  for (const auto& [deg, dim] : p) s += dim;
  return s;
}

// w in S[M] viewed as a/M in Q/Z; (M/m) w = x means the fractional part of a/m is x/m.
bool multiple_is(int M, int m, int a, int x) {
  const Rational w(a, M);
  const Rational scaled = w * Rational(M / m);
  const Rational target(x, m);
  const Rational diff = scaled - target;
  return diff.den() == 1;
}

KummerClass random_class(const KummerRing& R, std::mt19937_64& rng, int terms = 3) {
  KummerClass x;
  for (int k = 0; k < terms; ++k)
    x += R.basis_class(rng() % R.dim()) * Rational(static_cast<std::int64_t>(rng() % 5) - 2);
  return x;
}

}  // namespace

TEST_CASE("m of a group") {
  CHECK(m_of(Permutation::identity(3)) == 1);
  CHECK(m_of(Permutation::parse("(1 2)(3 4)", 4)) == 2);
  CHECK(m_of(Permutation::parse("(1 2 3)", 3)) == 3);
  CHECK(m_of(Permutation::parse("(1 2)", 3)) == 1);
  const Permutation klein[] = {Permutation::parse("(1 2)(3 4)", 4), Permutation::parse("(1 3)(2 4)", 4)};
  CHECK(m_of(klein, 4) == 4);
}

TEST_CASE("division counts") {
  const auto e = Permutation::identity(2), s = Permutation::parse("(1 2)", 2);
  CHECK(division_count(e, e, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}) == 1);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    Torsion x(4), y(4);
    for (auto& v : x) v = static_cast<int>(rng() % 2);
    for (auto& v : y) v = static_cast<int>(rng() % 2);
    CHECK(division_count(s, s, x, y, {0, 0, 0, 0}) == (x == y ? 1 : 0));
  }
  // Klein pair: every modulus is 2 and M = 4, so a residue class mod 2 has two lifts
  const auto g = Permutation::parse("(1 2)(3 4)", 4), h = Permutation::parse("(1 3)(2 4)", 4);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) {
        int brute = 0;
        for (int a = 0; a < 4; ++a)
          if (multiple_is(4, 2, a, x) && multiple_is(4, 2, a, y) && multiple_is(4, 2, a, z)) ++brute;
        CHECK(division_count(g, h, {x}, {y}, {z}) == brute);
        CHECK(brute == (x == y && y == z ? 2 : 0));
      }
  CHECK_THROWS_AS((void)division_count_1(4, 3, 2, 2, 0, 0, 0), std::logic_error);
  CHECK_THROWS_AS((void)division_count_1(4, 2, 2, 2, 2, 0, 0), std::logic_error);
}

TEST_CASE("division count symmetry and marginals for n up to 4") {
  for (int n = 1; n <= 4; ++n) {
    const auto G = symmetric_group(n);
    for (const auto& g : G.elements())
      for (const auto& h : G.elements()) {
        const Permutation gens[] = {g, h};
        const int M = m_of(gens, n), mg = m_of(g), mh = m_of(h), mgh = m_of(compose(g, h));
        REQUIRE(M <= 4);
        CHECK(M % mg == 0);
        CHECK(M % mh == 0);
        CHECK(M % mgh == 0);
        for (int x = 0; x < mg; ++x)
          for (int y = 0; y < mh; ++y) {
            std::int64_t sum = 0;
            for (int z = 0; z < mgh; ++z) {
              const auto c = division_count(g, h, {x}, {y}, {z});
              CHECK(c == division_count(h, g, {y}, {x}, {z}));
              int brute = 0;
              for (int a = 0; a < M; ++a)
                if (multiple_is(M, mg, a, x) && multiple_is(M, mh, a, y) && multiple_is(M, mgh, a, z)) ++brute;
              CHECK(c == brute);
              sum += c;
            }
            int lifts = 0;
            for (int a = 0; a < M; ++a)
              if (multiple_is(M, mg, a, x) && multiple_is(M, mh, a, y)) ++lifts;
            CHECK(sum == lifts);
          }
      }
  }
}

TEST_CASE("torsion point coding") {
  const KummerRing R(3, 4);
  const std::size_t c = el(R, "(1 2 3)");
  CHECK(R.points(c) == 81);
  CHECK(R.points(el(R, "(1 2)")) == 1);
  for (std::size_t code = 0; code < 81; ++code) CHECK(R.point_code(c, R.point(c, code)) == code);
  CHECK(R.point(c, 5) == Torsion{2, 1, 0, 0});
  CHECK_THROWS_AS((void)R.point_code(c, {3, 0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS((void)R.point_code(c, {0, 0}), std::invalid_argument);
  CHECK(R.dim() == 4096 + 3 * 256 + 2 * 81 * 16);
  for (std::size_t i = 0; i < R.dim(); i += 37) {
    const auto [k, t] = R.basis_element(i);
    CHECK(R.basis_index(k, t) == i);
  }
}

TEST_CASE("kummer products") {
  const KummerRing R(2, 4);
  const auto& A = R.base().algebra();
  const std::size_t e = el(R, "()"), s = el(R, "(1 2)");
  const Torsion zero{0, 0, 0, 0};

  // untwisted sector: plain cup product
  Tuple t1{A.index_of("x1"), A.index_of("1")}, t2{A.index_of("x2"), A.index_of("x3")};
  const auto a = KummerClass::single(e, zero, TensorClass::basis(t1));
  const auto b = KummerClass::single(e, zero, TensorClass::basis(t2));
  CHECK(R.multiply(a, b) == KummerClass::single(e, zero, tensor_mul(A, TensorClass::basis(t1), TensorClass::basis(t2))));

  const auto unit1 = TensorClass::unit(A, 1);
  const std::vector<int> diag{0, 0};
  const auto pushed = pushforward(A, diag, unit1);
  CHECK(pushed.size() == 16);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    Torsion x(4), y(4);
    for (auto& v : x) v = static_cast<int>(rng() % 2);
    for (auto& v : y) v = trial % 3 == 0 ? 0 : static_cast<int>(rng() % 2);
    if (trial % 3 == 0) y = x;
    const auto prod = R.multiply(KummerClass::single(s, x, unit1), KummerClass::single(s, y, unit1));
    CHECK(prod == (x == y ? KummerClass::single(e, zero, pushed) : KummerClass{}));
  }

  // nonzero defect kills the product when e = 0
  const KummerRing R3(3, 4);
  const std::size_t c = el(R3, "(1 2 3)");
  const auto u = TensorClass::unit(R3.base().algebra(), 1);
  for (std::size_t code = 0; code < 81; code += 7)
    CHECK(R3.multiply(KummerClass::single(c, R3.point(c, code), u), KummerClass::single(c, {0, 0, 0, 0}, u)).is_zero());
}

TEST_CASE("kummer product is equivariant with torsion untouched") {
  const KummerRing R(3, 4);
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = random_class(R, rng), b = random_class(R, rng);
    const std::size_t h = rng() % R.base().group().order();
    CHECK(R.group_act(h, R.multiply(a, b)) == R.multiply(R.group_act(h, a), R.group_act(h, b)));
  }
  const std::size_t c = el(R, "(1 2 3)"), v = el(R, "(1 2)");
  const auto moved = R.group_act(v, KummerClass::single(c, {1, 2, 0, 1}, TensorClass::unit(R.base().algebra(), 1)));
  REQUIRE(moved.components().size() == 1);
  CHECK(moved.components().begin()->first == KummerKey{el(R, "(1 3 2)"), {1, 2, 0, 1}});
}

TEST_CASE("kummer product matches basis products") {
  const KummerRing R(3, 2);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t a = rng() % R.dim(), b = rng() % R.dim();
    KummerClass expected;
    for (const auto& [idx, c] : R.multiply_basis(a, b)) expected += R.basis_class(idx) * c;
    CHECK(R.multiply(R.basis_class(a), R.basis_class(b)) == expected);
  }
}

TEST_CASE("kummer associativity") {
  const KummerRing R2(2, 4);
  CheckOptions opts;
  opts.max_dim = R2.dim();
  const auto exhaustive = check_associativity(R2, opts);
  CHECK(exhaustive.passed);
  CHECK(exhaustive.count == 512ull * 512 * 512);

  const KummerRing R3(3, 4);
  opts.exhaustive = false;
  opts.samples = 1000;
  opts.seed = 7;
  const auto sampled = check_associativity(R3, opts);
  CHECK(sampled.passed);
  CHECK(sampled.count == 1000);
  CHECK(sampled.mode == "sampled");

  opts.signed_product = true;
  CHECK_THROWS_AS((void)check_associativity(R3, opts), std::invalid_argument);
}

TEST_CASE("zero torsion rank collapses onto the orbifold ring") {
  for (int n = 2; n <= 3; ++n) {
    const KummerRing R(n, 0);
    const auto& B = R.base();
    REQUIRE(R.dim() == B.dim());
    std::mt19937_64 rng(static_cast<std::uint64_t>(n));
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t a = rng() % R.dim(), b = rng() % R.dim();
      CHECK(R.multiply_basis(a, b) == B.multiply_basis(a, b, false));
    }
    CHECK(kummer_poincare(R).raw == orbifold_poincare(B));
  }
}

TEST_CASE("kummer poincare polynomials") {
  const auto p1 = kummer_poincare(1);
  CHECK(p1.raw == PoincarePolynomial{{0, 1}, {2, 4}, {4, 6}, {6, 4}, {8, 1}});
  CHECK(p1.reduced == PoincarePolynomial{{0, 1}});

  // Kummer surface: 1 + 22 t^2 + t^4
  const auto p2 = kummer_poincare(2);
  const PoincarePolynomial kummer_surface{{0, 1}, {4, 22}, {8, 1}};
  CHECK(p2.reduced == kummer_surface);
  CHECK(p2.raw == times_one_plus_t4(kummer_surface));
  CHECK(total(p2.raw) == 384);

  // generalized Kummer fourfold: b2 = 7, b3 = 8, b4 = 108
  const auto p3 = kummer_poincare(3);
  CHECK(p3.reduced == PoincarePolynomial{{0, 1}, {4, 7}, {6, 8}, {8, 108}, {10, 8}, {12, 7}, {16, 1}});
  CHECK(p3.raw == times_one_plus_t4(p3.reduced));
}
