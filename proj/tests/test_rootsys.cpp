#include <gtest/gtest.h>

#include "gpchow/rootsys.hpp"

using namespace gpchow;

TEST(RootSystem, PositiveRootCounts) {
  const std::vector<std::pair<std::string, std::size_t>> cases = {
      {"A1", 1}, {"A2", 3},  {"A4", 10}, {"B2", 4},  {"B3", 9},   {"C3", 9},   {"D4", 12},
      {"D5", 20}, {"E6", 36}, {"E7", 63}, {"E8", 120}, {"F4", 24}, {"G2", 6}, {"A2xG2", 9}};
  for (const auto& [t, n] : cases) EXPECT_EQ(build_root_system(t)->positive_roots().size(), n) << t;
}

TEST(RootSystem, G2Cartan) {
  auto rs = build_root_system("G2");
  const auto& c = rs->cartan();
  EXPECT_EQ(c[0][0], 2);
  EXPECT_EQ(c[1][1], 2);
  EXPECT_EQ(c[0][1] * c[1][0], 3);
}

TEST(RootSystem, SimpleRootsAreCartanRows) {
  for (const std::string t : {"B3", "F4", "E6"}) {
    auto rs = build_root_system(t);
    for (int i = 1; i <= rs->rank(); ++i)
      for (int j = 1; j <= rs->rank(); ++j) EXPECT_EQ(rs->simple_root(i)[j - 1], rs->cartan()[j - 1][i - 1]) << t;
  }
}

// Every positive root reflected by a simple reflection is a root, and
// positive unless it is that simple root.
TEST(RootSystem, ClosedUnderSimpleReflections) {
  for (const std::string t : {"A3", "B4", "C3", "D4", "E6", "F4", "G2"}) {
    auto rs = build_root_system(t);
    for (const auto& a : rs->positive_roots())
      for (int i = 1; i <= rs->rank(); ++i) {
        Weight b = rs->reflect(i, a);
        if (a == rs->simple_root(i)) {
          EXPECT_EQ(b, -a);
          continue;
        }
        EXPECT_TRUE(rs->root_index(b).has_value()) << t;
        EXPECT_GT(rs->root_sign(b), 0) << t;
      }
  }
}

TEST(RootSystem, HighestRootHeight) {
  // heights of the highest roots are h - 1 (Coxeter number minus one)
  const std::vector<std::pair<std::string, int>> cases = {{"A4", 4}, {"B3", 5}, {"D4", 5}, {"E6", 11}, {"E7", 17}, {"E8", 29},
                                                          {"F4", 11}, {"G2", 5}};
  for (const auto& [t, h] : cases) {
    auto rs = build_root_system(t);
    int best = 0;
    for (const auto& c : rs->positive_roots_simple_coords()) {
      int s = 0;
      for (int x : c) s += x;
      best = std::max(best, s);
    }
    EXPECT_EQ(best, h) << t;
  }
}

TEST(RootSystem, BadDescriptors) {
  for (const std::string t : {"", "X3", "B1", "D3", "E9", "F3", "G3", "A0", "A2x"})
    EXPECT_THROW(build_root_system(t), ConfigError) << t;
}

TEST(IndexSets, Parse) {
  EXPECT_EQ(parse_index_set("1,2,6"), (IndexSet{1, 2, 6}));
  EXPECT_EQ(parse_index_set("{6,1}"), (IndexSet{1, 6}));
  EXPECT_EQ(parse_index_set("2"), (IndexSet{2}));
  EXPECT_THROW(parse_index_set("1,a"), ConfigError);
}
