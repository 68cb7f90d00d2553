#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "gpchow/expr.hpp"

using namespace gpchow;

namespace {

class ExprTest : public ::testing::Test {
 protected:
  void SetUp() override {
    ctx.space = X;
    ctx.mul = [this](const ChowClass<BigInt>& a, const ChowClass<BigInt>& b) { return multiply(t, a, b); };
    ctx.chern = [this](int d) { return chern_class(t, tangent_roots(*X), d); };
  }
  ChowClass<BigInt> eval(const std::string& s) { return evaluate_expression(s, ctx); }
  ChowClass<BigInt> Z(const Word& w) { return ChowClass<BigInt>::from_word(X, w); }

  std::shared_ptr<const CosetSpace> X = coset_space(build_root_system("G2"), {2});
  RestrictionTable<PolyRing<BigInt>> t = build_exact_table(X, X->dim());
  ExprContext<BigInt> ctx;
};

}  // namespace

TEST_F(ExprTest, Atoms) {
  EXPECT_EQ(eval("Z[2]"), Z({2}));
  EXPECT_EQ(eval("h"), Z({2}));
  EXPECT_EQ(eval("h2"), Z({2}));
  EXPECT_EQ(eval("pt"), Z({2, 1, 2, 1, 2}));
  EXPECT_EQ(eval("Z[]"), Z({}));
  EXPECT_EQ(eval("5"), Z({}).scaled(BigInt(5)));
}

TEST_F(ExprTest, Arithmetic) {
  EXPECT_TRUE(eval("Z[2]^2 - 3*Z[1,2]").is_zero());
  EXPECT_EQ(eval("h^5"), Z({2, 1, 2, 1, 2}).scaled(BigInt(18)));
  EXPECT_EQ(eval("-(h + 1)*2"), (Z({2}) + Z({})).scaled(BigInt(-2)));
  EXPECT_EQ(eval("c2"), Z({1, 2}).scaled(BigInt(13)));
  EXPECT_EQ(eval("h^0"), Z({}));
}

TEST_F(ExprTest, Aliases) {
  ctx.aliases = {{"a", "h^2"}, {"b", "a - 3*Z[1,2]"}, {"loop", "loop + 1"}};
  EXPECT_TRUE(eval("b").is_zero());
  EXPECT_THROW(eval("loop"), ConfigError);
  auto path = std::filesystem::temp_directory_path() / "gpchow_alias_test.json";
  {
    std::ofstream f(path);
    f << R"({"G2/P{2}": {"e": "Z[1,2]"}, "E6/P{2}": {"e": "Z[2]"}})";
  }
  EXPECT_EQ(load_aliases(path, "G2/P{2}").at("e"), "Z[1,2]");
  EXPECT_TRUE(load_aliases(path, "B2/P{1}").empty());
  std::filesystem::remove(path);
}

TEST_F(ExprTest, Errors) {
  for (const std::string s : {"Z[3", "Z[1,1]", "h1", "q", "2 +", "(h", "h^", "Z[2]]", "c"}) EXPECT_THROW(eval(s), ConfigError) << s;
}
