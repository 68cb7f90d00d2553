#include <gtest/gtest.h>

#include "gpchow/chow.hpp"
#include "gpchow/gkm.hpp"

using namespace gpchow;

namespace {

using Case = std::pair<std::string, IndexSet>;

std::shared_ptr<const CosetSpace> space_of(const Case& c) { return coset_space(build_root_system(c.first), c.second); }

std::string name_of(const Case& c) { return c.first + "/P" + set_string(c.second); }

}  // namespace

// Restrictions built by elimination against the subword formula.
TEST(Gkm, MatchesSubwordFormula) {
  for (const Case& c : std::vector<Case>{{"A2", {1, 2}}, {"A3", {1, 2, 3}}, {"B2", {1, 2}}, {"B2", {1}}, {"B2", {2}},
                                         {"G2", {1, 2}}, {"G2", {1}}, {"G2", {2}}, {"B3", {2}}, {"C3", {1}}, {"A3", {2}}}) {
    auto X = space_of(c);
    auto t = build_exact_table(X, X->dim());
    for (std::size_t v = 0; v < X->size(); ++v)
      for (std::size_t w = 0; w < X->size(); ++w)
        ASSERT_EQ(t.entry(v, w), billey_restriction(*X, v, w)) << name_of(c) << " v=" << v << " w=" << w;
  }
}

TEST(Gkm, ZeroPatternAndDiagonal) {
  for (const Case& c : std::vector<Case>{{"B3", {1, 3}}, {"G2", {1, 2}}, {"A4", {2}}}) {
    auto X = space_of(c);
    auto t = build_exact_table(X, X->dim());
    for (std::size_t v = 0; v < X->size(); ++v) {
      EXPECT_EQ(t.entry(v, v), diagonal_restriction(*X, v));
      for (std::size_t w = 0; w < X->size(); ++w)
        if (!X->bruhat_leq(v, w)) { EXPECT_TRUE(t.entry(v, w).is_zero()); }
    }
  }
}

// i_w(Z_v) - i_{s_a w}(Z_v) is divisible by a for every positive root a.
TEST(Gkm, Divisibility) {
  for (const Case& c : std::vector<Case>{{"A2", {1, 2}}, {"A3", {1, 2, 3}}, {"B2", {1, 2}}, {"C3", {1, 2, 3}}, {"G2", {1, 2}}}) {
    auto X = space_of(c);
    auto rs = X->root_system_ptr();
    auto t = build_exact_table(X, X->dim());
    for (const auto& a : rs->positive_roots()) {
      auto sa = reflection(rs, a);
      auto ap = weight_poly(a);
      for (std::size_t w = 0; w < X->size(); ++w) {
        std::size_t w2 = X->coset_of(sa * X->element(w));
        for (std::size_t v = 0; v < X->size(); ++v) {
          auto d = t.entry(v, w) - t.entry(v, w2);
          if (!d.is_zero()) { EXPECT_TRUE(d.divisible_by(ap)) << name_of(c); }
        }
      }
    }
  }
}

// Ordinary structure constants do not depend on the frame.
TEST(Gkm, FrameIndependence) {
  for (const Case& c : std::vector<Case>{{"B3", {1, 3}}, {"G2", {1, 2}}, {"C3", {2}}}) {
    auto X = space_of(c);
    const auto& rs = X->root_system();
    auto exact = build_exact_table(X, X->dim());
    auto reference = multiplication_table(exact);
    for (std::uint64_t seed : {1u, 2u, 99u}) {
      auto t = build_table(X, ScalarRing<BigInt>(Frame::generic(rs, 0, seed)), X->dim());
      EXPECT_EQ(multiplication_table(t), reference) << name_of(c) << " seed " << seed;
      auto tp = build_table(X, PolyRing<BigInt>(Frame::generic(rs, 0, seed)), X->dim());
      EXPECT_EQ(multiplication_table(tp), reference) << name_of(c) << " seed " << seed;
    }
  }
}

TEST(Gkm, PartialBuildsAndDepthErrors) {
  auto X = space_of({"E6", {1}});
  auto t = build_table(X, ScalarRing<BigInt>(Frame::generic(X->root_system(), 0)), 5);
  EXPECT_EQ(t.built_degree(), 5);
  EXPECT_THROW(t.row(X->of_length(6)[0]), DepthError);
  auto h = ChowClass<BigInt>::from_word(X, {1});
  EXPECT_THROW(power(t, h, 6), DepthError);
  extend_table(t, X->dim());
  EXPECT_EQ(t.built_degree(), X->dim());
  EXPECT_EQ(power(t, h, 16).degree(), 78);  // degree of the Cayley plane
}

TEST(Gkm, FrameKillingARootIsRejected) {
  auto rs = build_root_system("A2");
  auto X = coset_space(rs, {1, 2});
  Frame bad(2, 1, {1, -1});  // alpha1 + alpha2 = omega1 + omega2 goes to 0
  EXPECT_FALSE(bad.kills_no_root(*rs, 0));
  EXPECT_THROW(build_table(X, ScalarRing<BigInt>(bad), 1), ConfigError);
  Frame good(2, 1, {1, 1});
  EXPECT_TRUE(good.kills_no_root(*rs, 0));
  EXPECT_FALSE(good.kills_no_root(*rs, 2));  // alpha1 + alpha2 goes to 2
}
