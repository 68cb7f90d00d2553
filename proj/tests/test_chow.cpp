#include <gtest/gtest.h>

#include <random>

#include "gpchow/chow.hpp"
#include "gpchow/verify.hpp"

using namespace gpchow;

namespace {

using Case = std::pair<std::string, IndexSet>;

std::shared_ptr<const CosetSpace> space_of(const Case& c) { return coset_space(build_root_system(c.first), c.second); }

RestrictionTable<ScalarRing<BigInt>> scalar_table(std::shared_ptr<const CosetSpace> X) {
  return build_table(X, ScalarRing<BigInt>(Frame::generic(X->root_system(), 0)), X->dim());
}

}  // namespace

// Worked G2/P2 example.
TEST(ChowG2, WorkedExample) {
  EXPECT_TRUE(criterion_g2_restrictions().pass) << criterion_g2_restrictions().detail;
  EXPECT_TRUE(criterion_g2_multiplication().pass) << criterion_g2_multiplication().detail;
  EXPECT_TRUE(criterion_g2_steenrod().pass) << criterion_g2_steenrod().detail;
  EXPECT_TRUE(criterion_g2_chern().pass) << criterion_g2_chern().detail;
}

TEST(ChowG2, SquareOfDivisor) {
  auto X = space_of({"G2", {2}});
  auto t = build_exact_table(X, X->dim());
  auto z2 = ChowClass<BigInt>::from_word(X, {2});
  EXPECT_EQ(multiply(t, z2, z2), ChowClass<BigInt>::from_word(X, {1, 2}).scaled(BigInt(3)));
  // degree of G2/P2 in its minimal embedding is 18
  EXPECT_EQ(power(t, z2, 5).degree(), 18);
}

TEST(Chow, PoincareDuality) {
  for (const Case& c : std::vector<Case>{{"G2", {1, 2}}, {"B3", {1, 3}}, {"E6", {1}}, {"C3", {2}}}) {
    auto X = space_of(c);
    auto t = scalar_table(X);
    auto table = multiplication_table(t);
    for (std::size_t u = 0; u < X->size(); ++u)
      for (std::size_t w = 0; w < X->size(); ++w) {
        std::size_t a = std::min(X->x_to_z(u), w), b = std::max(X->x_to_z(u), w);
        EXPECT_EQ(table[a][b].degree(), u == w ? 1 : 0) << c.first;
      }
  }
}

TEST(Chow, RingAxiomsOnRandomClasses) {
  auto X = space_of({"B3", {1, 2, 3}});
  auto t = scalar_table(X);
  std::mt19937 rng(17);
  auto random_class = [&] {
    ChowClass<BigInt> x(X);
    int g = static_cast<int>(rng() % 4);
    for (auto v : X->of_length(g)) x.add(v, BigInt(static_cast<long>(rng() % 7) - 3));
    return x;
  };
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_class(), b = random_class(), c = random_class();
    EXPECT_EQ(multiply(t, a, b), multiply(t, b, a));
    EXPECT_EQ(multiply(t, multiply(t, a, b), c), multiply(t, a, multiply(t, b, c)));
    EXPECT_EQ(multiply(t, a, b + c), multiply(t, a, b) + multiply(t, a, c));
  }
}

TEST(Chow, StructureConstantsAreNonNegative) {
  for (const Case& c : std::vector<Case>{{"A3", {1, 2, 3}}, {"F4", {4}}, {"E7", {7}}, {"D5", {5}}}) {
    auto X = space_of(c);
    auto table = multiplication_table(scalar_table(X));
    for (const auto& row : table)
      for (const auto& x : row)
        for (const auto& [w, a] : x.coeffs()) EXPECT_GT(a, 0) << c.first;
  }
}

// deg c_top(T) is the Euler characteristic, the number of fixed points.
TEST(Chow, TopChernClassIsEulerCharacteristic) {
  for (const Case& c : std::vector<Case>{{"G2", {2}}, {"E6", {1}}, {"B3", {1, 2, 3}}, {"C3", {2}}, {"E6", {2}}}) {
    auto X = space_of(c);
    auto t = scalar_table(X);
    auto top = chern_class(t, tangent_roots(*X), X->dim());
    EXPECT_EQ(top.degree(), static_cast<long>(X->size())) << c.first;
  }
}

// c_1 of a minuscule variety G/P_i is (index) * h; E6/P1 has index 12,
// E7/P7 has index 18.
TEST(Chow, FirstChernClassOfMinusculeVarieties) {
  for (const auto& [c, index] : std::vector<std::pair<Case, long>>{{{"E6", {1}}, 12}, {{"E7", {7}}, 18}, {{"A4", {2}}, 5}}) {
    auto X = space_of(c);
    auto t = build_table(X, ScalarRing<BigInt>(Frame::generic(X->root_system(), 0)), 1);
    auto c1 = chern_class(t, tangent_roots(*X), 1);
    EXPECT_EQ(c1, ChowClass<BigInt>::schubert(X, X->of_length(1)[0]).scaled(BigInt(index))) << c.first;
  }
}

TEST(Chow, SteenrodTopDegreeIsPthPower) {
  for (const auto& [c, p] : std::vector<std::pair<Case, std::uint64_t>>{{{"G2", {1, 2}}, 2}, {{"G2", {1, 2}}, 3}, {{"B3", {1, 3}}, 2}}) {
    auto X = space_of(c);
    auto t = reduce_table(build_exact_table(X, X->dim()), p);
    const Fp z(0, p);
    for (std::size_t u = 0; u < X->size(); ++u) {
      auto x = ChowClass<Fp>::schubert(X, u, z);
      EXPECT_EQ(steenrod(t, 0, x), x);
      int g = X->length(u);
      EXPECT_EQ(steenrod(t, g, x), power(t, x, static_cast<int>(p))) << c.first << " u=" << u;
      EXPECT_TRUE(steenrod(t, g + 1, x).is_zero());
    }
  }
}

TEST(Chow, CartanFormula) {
  auto X = space_of({"A3", {1, 2, 3}});
  const std::uint64_t p = 3;
  auto t = reduce_table(build_exact_table(X, X->dim()), p);
  const Fp z(0, p);
  std::mt19937 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    auto pick = [&] { return ChowClass<Fp>::schubert(X, rng() % X->size(), z); };
    auto x = pick(), y = pick();
    for (int k = 0; k <= 3; ++k) {
      ChowClass<Fp> rhs(X, z);
      for (int i = 0; i <= k; ++i) rhs = rhs + multiply(t, steenrod(t, i, x), steenrod(t, k - i, y));
      EXPECT_EQ(steenrod(t, k, multiply(t, x, y)), rhs);
    }
  }
}

TEST(Chow, PullbackIsMultiplicativeOnGenerators) {
  auto rs = build_root_system("B3");
  auto X = coset_space(rs, {1});
  auto F = coset_space(rs, {1, 2, 3});
  auto tX = scalar_table(X);
  auto tF = scalar_table(F);
  for (std::size_t u = 0; u < X->size(); ++u)
    for (std::size_t v = 0; v < X->size(); ++v) {
      auto a = ChowClass<BigInt>::schubert(X, u), b = ChowClass<BigInt>::schubert(X, v);
      EXPECT_EQ(pullback(multiply(tX, a, b), F), multiply(tF, pullback(a, F), pullback(b, F)));
    }
  EXPECT_THROW(pullback(ChowClass<BigInt>::unit(F), X), ConfigError);
}
