#include <gtest/gtest.h>

#include "gpchow/chow.hpp"

using namespace gpchow;

namespace {

struct Case {
  std::string type;
  IndexSet theta;
  std::uint64_t p;
  int J;
};

}  // namespace

// S^j from the specialized series table against the polynomial table.
TEST(Series, AgreesWithPolynomialSteenrod) {
  for (const Case& c : {Case{"G2", {2}, 2, 5}, Case{"G2", {1, 2}, 3, 3}, Case{"B3", {1, 3}, 2, 4}, Case{"F4", {4}, 3, 3},
                        Case{"A3", {2}, 5, 1}}) {
    auto X = coset_space(build_root_system(c.type), c.theta);
    auto ctx = series_context(X->root_system(), c.p, c.J);
    auto ts = build_table(X, SeriesRing<BigInt>(ctx), X->dim());
    SeriesSteenrod S(ts);
    auto tp = reduce_table(build_exact_table(X, X->dim()), c.p);
    const Fp z(0, c.p);
    for (std::size_t u = 0; u < X->size(); ++u)
      for (int j = 0; j <= c.J; ++j) {
        auto x = ChowClass<Fp>::schubert(X, u, z);
        EXPECT_EQ(S.steenrod(j, x), steenrod(tp, j, x)) << c.type << " p=" << c.p << " u=" << u << " j=" << j;
      }
  }
}

TEST(Series, ContextKillsNoRoot) {
  for (const auto& [t, p] : std::vector<std::pair<std::string, std::uint64_t>>{{"E7", 2}, {"E6", 3}, {"E8", 2}, {"G2", 3}}) {
    auto rs = build_root_system(t);
    auto ctx = series_context(*rs, p, 2);
    EXPECT_NO_THROW(SeriesRing<Fp>(ctx, Fp(0, p)).validate(*rs)) << t;
    EXPECT_EQ(static_cast<int>(ctx->g.size()), ctx->r + 1);
  }
  // all 63 nonzero vectors of F_2^6 are roots of E7 mod 2, so F_2^r needs r >= 6
  EXPECT_GE(series_context(*build_root_system("E7"), 2, 1)->r, 6);
}

TEST(Series, DepthLimit) {
  auto X = coset_space(build_root_system("G2"), {2});
  auto ts = build_table(X, SeriesRing<BigInt>(series_context(X->root_system(), 2, 1)), X->dim());
  SeriesSteenrod S(ts);
  EXPECT_THROW(S.steenrod(2, ChowClass<Fp>::unit(X, Fp(0, 2))), DepthError);
  EXPECT_THROW(S.steenrod(1, ChowClass<Fp>::unit(X, Fp(0, 3))), ConfigError);
}

TEST(Series, RingIsCommutativeAndInvertsRoots) {
  auto rs = build_root_system("B3");
  auto ctx = series_context(*rs, 2, 3);
  SeriesRing<Fp> R(ctx, Fp(0, 2));
  for (const auto& a : rs->positive_roots())
    for (const auto& b : rs->positive_roots()) {
      auto x = R.linear(a), y = R.linear(b);
      EXPECT_EQ(R.mul(x, y), R.mul(y, x));
      EXPECT_EQ(R.div_factors(R.mul(x, y), {y}), x);
    }
}
