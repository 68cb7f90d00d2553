#include <gtest/gtest.h>

#include "gpchow/motcheck.hpp"
#include "gpchow/weyl.hpp"

using namespace gpchow;

namespace {

IndexSet all_of(const RootSystem& rs) {
  IndexSet s;
  for (int i = 1; i <= rs.rank(); ++i) s.push_back(i);
  return s;
}

}  // namespace

TEST(Weyl, GroupOrders) {
  const std::vector<std::pair<std::string, std::size_t>> cases = {{"A3", 24}, {"B3", 48}, {"C3", 48}, {"D4", 192},
                                                                  {"G2", 12}, {"F4", 1152}, {"A2xG2", 72}};
  for (const auto& [t, n] : cases) {
    auto rs = build_root_system(t);
    EXPECT_EQ(coset_space(rs, all_of(*rs))->size(), n) << t;
  }
}

// P(G/P, t) from root heights against the enumeration of representatives.
TEST(Weyl, PoincareHeightsMatchEnumeration) {
  const std::vector<std::pair<std::string, IndexSet>> cases = {
      {"A3", {2}}, {"B3", {1, 3}}, {"C4", {2}}, {"D5", {5}}, {"E6", {1}}, {"E6", {2}}, {"E6", {4}},
      {"E6", {1, 2, 6}}, {"E7", {7}}, {"E7", {1}}, {"F4", {4}}, {"G2", {1, 2}}, {"E8", {8}}};
  for (const auto& [t, th] : cases) {
    auto rs = build_root_system(t);
    EXPECT_EQ(poincare_by_heights(*rs, th), UPoly(coset_space(rs, th)->poincare())) << t << set_string(th);
  }
}

TEST(Weyl, CosetSizes) {
  auto e6 = build_root_system("E6");
  EXPECT_EQ(coset_space(e6, {1})->size(), 27u);
  EXPECT_EQ(coset_space(e6, {2})->size(), 72u);
  EXPECT_EQ(coset_space(e6, {4})->size(), 720u);
  EXPECT_EQ(coset_space(e6, {1, 2, 6})->size(), 2160u);
  EXPECT_EQ(coset_space(e6, {2})->dim(), 21);
  auto e7 = build_root_system("E7");
  EXPECT_EQ(coset_space(e7, {7})->size(), 56u);
  EXPECT_EQ(coset_space(e7, {7})->dim(), 27);
}

TEST(Weyl, LinearOrderExtendsBruhat) {
  for (const auto& [t, th] : std::vector<std::pair<std::string, IndexSet>>{{"B3", {1, 2, 3}}, {"E6", {2}}, {"F4", {1}}}) {
    auto X = coset_space(build_root_system(t), th);
    for (std::size_t u = 0; u < X->size(); ++u) {
      if (u + 1 < X->size()) { EXPECT_LE(X->length(u), X->length(u + 1)); }
      for (std::size_t w = 0; w < X->size(); ++w)
        if (X->bruhat_leq(u, w)) { EXPECT_LE(u, w); }
    }
  }
}

TEST(Weyl, XToZIsAnInvolutionReversingLength) {
  for (const auto& [t, th] : std::vector<std::pair<std::string, IndexSet>>{{"G2", {2}}, {"E6", {2}}, {"E7", {7}}, {"B4", {1, 4}}}) {
    auto X = coset_space(build_root_system(t), th);
    for (std::size_t u = 0; u < X->size(); ++u) {
      EXPECT_EQ(X->x_to_z(X->x_to_z(u)), u);
      EXPECT_EQ(X->length(X->x_to_z(u)), X->dim() - X->length(u));
    }
  }
}

TEST(Weyl, RepresentativeWordsAreReducedAndMinimal) {
  auto rs = build_root_system("F4");
  auto X = coset_space(rs, {3});
  for (std::size_t u = 0; u < X->size(); ++u) {
    auto w = X->element(u);
    EXPECT_EQ(w.inversion_count(), X->length(u));
    // minimal: no right descent in W_P
    for (int i = 1; i <= rs->rank(); ++i)
      if (!contains(X->theta(), i)) { EXPECT_FALSE(w.is_right_descent(i)); }
  }
}

TEST(Weyl, Reflections) {
  for (const std::string t : {"B3", "G2", "E6"}) {
    auto rs = build_root_system(t);
    for (const auto& a : rs->positive_roots()) {
      auto s = reflection(rs, a);
      EXPECT_EQ(s.apply(a), -a);
      EXPECT_TRUE((s * s).is_identity() || (s * s) == WeylElement::identity(rs));
      for (int i = 1; i <= rs->rank(); ++i) {
        // s_a(mu) = mu - <mu, a^vee> a
        Weight mu = rs->fundamental_weight(i);
        auto idx = rs->root_index(a);
        ASSERT_TRUE(idx.has_value());
        EXPECT_EQ(s.apply(mu), rs->reflect_root(*idx, mu));
      }
    }
  }
}

TEST(Weyl, DoubleCosetCounts) {
  EXPECT_EQ(double_coset_reps(build_root_system("B2"), {1}, {1}).size(), 3u);
  EXPECT_EQ(double_coset_reps(build_root_system("E6"), {2}, {2}).size(), 5u);
  EXPECT_EQ(double_coset_reps(build_root_system("E7"), {7}, {7}).size(), 4u);
  EXPECT_EQ(double_coset_reps(build_root_system("A3"), {1}, {3}).size(), 2u);
}

TEST(Weyl, OrderHashDependsOnVariety) {
  auto e6 = build_root_system("E6");
  EXPECT_NE(coset_space(e6, {1})->order_hash(), coset_space(e6, {6})->order_hash());
  EXPECT_EQ(coset_space(e6, {2})->order_hash(), coset_space(build_root_system("E6"), {2})->order_hash());
}
