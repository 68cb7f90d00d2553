#include <gtest/gtest.h>

#include <random>

#include "gpchow/cmprod.hpp"
#include "gpchow/verify.hpp"

using namespace gpchow;

TEST(Decomposition, WorkedExamples) {
  auto r = criterion_decompositions();
  EXPECT_TRUE(r.pass) << r.detail;
}

TEST(Decomposition, PoincareBookkeeping) {
  const std::vector<std::tuple<std::string, IndexSet, IndexSet>> cases = {
      {"A3", {1}, {2}}, {"B3", {1}, {3}}, {"G2", {1}, {2}}, {"F4", {4}, {4}}, {"E7", {7}, {7}}, {"E6", {1}, {6}}, {"D5", {1, 5}, {2}}};
  for (const auto& [t, a, b] : cases) {
    auto d = decompose_product(build_root_system(t), a, b);
    auto rs = d.rs;
    EXPECT_EQ(decomposition_poincare(d), poly_trim(poly_mul(coset_space(rs, a)->poincare(), coset_space(rs, b)->poincare()))) << t;
    std::size_t total = 0;
    for (const auto& s : d.summands) total += coset_space(rs, s.type)->size();
    EXPECT_EQ(total, coset_space(rs, a)->size() * coset_space(rs, b)->size()) << t;
  }
}

// The diagonal is the summand with w = 1; alpha = 1 on it acts as the identity.
TEST(AlphaStar, DiagonalActsAsIdentity) {
  for (const auto& [t, th] : std::vector<std::pair<std::string, IndexSet>>{{"B2", {1}}, {"G2", {2}}, {"E6", {1}}, {"B3", {1, 3}}}) {
    auto rs = build_root_system(t);
    auto X = coset_space(rs, th);
    auto d = decompose_product(rs, th, th);
    ASSERT_TRUE(d.summands[0].w.is_identity());
    auto Y = coset_space(rs, d.summands[0].type);
    auto tY = build_table(Y, ScalarRing<BigInt>(Frame::generic(*rs, 0)), Y->dim());
    auto one = ChowClass<BigInt>::unit(Y);
    for (std::size_t u = 0; u < X->size(); ++u) {
      auto x = ChowClass<BigInt>::schubert(X, u);
      EXPECT_EQ(alpha_star(tY, one, d.summands[0].w, x, X), x) << t << " u=" << u;
    }
  }
}

// The open orbit: alpha = 1 there is the class of X x X, so x goes to deg(x).
TEST(AlphaStar, OpenOrbitIsDegree) {
  for (const auto& [t, th] : std::vector<std::pair<std::string, IndexSet>>{{"B2", {1}}, {"G2", {2}}, {"A3", {2}}}) {
    auto rs = build_root_system(t);
    auto X = coset_space(rs, th);
    auto d = decompose_product(rs, th, th);
    const auto& s = d.summands.back();
    ASSERT_EQ(s.shift, X->dim()) << t;
    auto Y = coset_space(rs, s.type);
    auto tY = build_table(Y, ScalarRing<BigInt>(Frame::generic(*rs, 0)), Y->dim());
    auto one = ChowClass<BigInt>::unit(Y);
    for (std::size_t u = 0; u < X->size(); ++u) {
      auto x = ChowClass<BigInt>::schubert(X, u);
      auto expect = X->length(u) == X->dim() ? ChowClass<BigInt>::unit(X) : ChowClass<BigInt>(X, BigInt(0));
      EXPECT_EQ(alpha_star(tY, one, s.w, x, X), expect) << t << " u=" << u;
    }
  }
}

TEST(EndoMatrix, IdempotentPowerOnRandomMatrices) {
  auto X = coset_space(build_root_system("G2"), {2});
  std::mt19937 rng(31);
  for (std::uint64_t p : {2, 3, 5}) {
    for (int trial = 0; trial < 30; ++trial) {
      EndoMatrix<Fp> m(X, Fp(0, p));
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
          if (rng() % 3 == 0) m.at(i, j) = Fp(static_cast<std::int64_t>(rng() % p), p);
      auto e = iterate_to_idempotent(m);
      EXPECT_EQ(e * e, e);
      EXPECT_EQ(e * m, m * e);
      // e is a power of m; periods of 6x6 matrices over F_5 stay below 5^6
      auto pw = m;
      bool found = pw == e;
      for (int k = 2; k < 40000 && !found; ++k) {
        pw = pw * m;
        found = pw == e;
      }
      EXPECT_TRUE(found);
    }
  }
}

TEST(EndoMatrix, GradeQueries) {
  auto X = coset_space(build_root_system("G2"), {2});
  auto id = EndoMatrix<Fp>::identity(X, Fp(0, 3));
  EXPECT_TRUE(id.respects_shift(0));
  EXPECT_EQ(id.lowest_grade(), 0);
  EXPECT_EQ(iterate_to_idempotent(id), id);
  EndoMatrix<Fp> z(X, Fp(0, 3));
  EXPECT_EQ(z.lowest_grade(), -1);
  EXPECT_TRUE(iterate_to_idempotent(z).is_zero());
  auto x = ChowClass<Fp>::from_word(X, {1, 2}, Fp(0, 3));
  EXPECT_EQ(id.apply(x), x);
}
