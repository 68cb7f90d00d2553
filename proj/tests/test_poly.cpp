#include <gtest/gtest.h>

#include <random>

#include "gpchow/poly.hpp"

using namespace gpchow;

namespace {

IntPoly random_poly(std::mt19937& rng, int nvars, int degree, int terms) {
  IntPoly f(nvars);
  for (int k = 0; k < terms; ++k) {
    std::vector<int> e(nvars, 0);
    int left = degree;
    for (int v = 0; v + 1 < nvars; ++v) {
      int a = static_cast<int>(rng() % (left + 1));
      e[v] = a;
      left -= a;
    }
    e[nvars - 1] = left;
    f += IntPoly::monomial(nvars, e, BigInt(static_cast<long>(rng() % 21) - 10));
  }
  return f;
}

ModPoly random_mod(std::mt19937& rng, int nvars, int degree, std::uint64_t p) {
  return reduce_mod(random_poly(rng, nvars, degree, 4), p);
}

}  // namespace

TEST(Poly, RingAxiomsOnRandomInputs) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_poly(rng, 3, 2, 3), b = random_poly(rng, 3, 1, 2), c = random_poly(rng, 3, 3, 3);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(Poly, ExactDivisionRecoversFactor) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_poly(rng, 3, 3, 4), b = random_poly(rng, 3, 1, 3);
    if (b.is_zero()) continue;
    auto ab = a * b;
    EXPECT_EQ(ab.divexact(b), a);
    EXPECT_TRUE(ab.divisible_by(b));
  }
}

TEST(Poly, InexactDivisionIsDetected) {
  IntPoly x = IntPoly::variable(2, 0), y = IntPoly::variable(2, 1);
  auto f = x * x + y;
  EXPECT_FALSE(f.divisible_by(x));
  EXPECT_THROW(f.divexact(x), InconsistencyError);
  EXPECT_FALSE(x.scaled(BigInt(3)).divisible_by(x.scaled(BigInt(2))));
}

TEST(Poly, LucasAgainstPascal) {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    std::vector<std::vector<std::uint64_t>> c(40, std::vector<std::uint64_t>(40, 0));
    for (int n = 0; n < 40; ++n) {
      c[n][0] = 1;
      for (int k = 1; k <= n; ++k) c[n][k] = (c[n - 1][k - 1] + (k < n ? c[n - 1][k] : 0)) % p;
    }
    for (int n = 0; n < 40; ++n)
      for (int k = 0; k <= n; ++k) EXPECT_EQ(lucas_binomial(n, k, p), c[n][k]) << n << " " << k << " mod " << p;
  }
}

// S^0 is the identity, S^j of a linear form x is x^p for j = 1, and the
// total operation is multiplicative.
TEST(Poly, SteenrodComponentProperties) {
  std::mt19937 rng(3);
  for (std::uint64_t p : {2, 3, 5}) {
    ModPoly x = ModPoly::variable(2, 0, Fp(0, p));
    EXPECT_EQ(steenrod_component(p, 1, x), x.pow(static_cast<int>(p)));
    for (int trial = 0; trial < 40; ++trial) {
      auto f = random_mod(rng, 2, 2, p), g = random_mod(rng, 2, 3, p);
      EXPECT_EQ(steenrod_component(p, 0, f), f);
      for (int k = 0; k <= 5; ++k) {
        ModPoly rhs(2, Fp(0, p));
        for (int i = 0; i <= k; ++i) rhs += steenrod_component(p, i, f) * steenrod_component(p, k - i, g);
        EXPECT_EQ(steenrod_component(p, k, f * g), rhs);
      }
    }
  }
}

TEST(Poly, JsonRoundTrip) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = random_poly(rng, 4, 3, 5);
    EXPECT_EQ(IntPoly::from_json(f.to_json(), 4), f);
  }
}

TEST(Fp, Arithmetic) {
  Fp a(5, 7), b(4, 7);
  EXPECT_EQ((a + b).v, 2u);
  EXPECT_EQ((a * b).v, 6u);
  EXPECT_EQ((a / b * b).v, 5u);
  EXPECT_EQ(Fp::from_big(BigInt(-1), 3).v, 2u);
  EXPECT_THROW(Fp(1, 3) + Fp(1, 5), ConfigError);
}
