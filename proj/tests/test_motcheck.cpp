#include <gtest/gtest.h>

#include <set>

#include "gpchow/motcheck.hpp"
#include "gpchow/weyl.hpp"

using namespace gpchow;

TEST(UPoly, Arithmetic) {
  UPoly a({1, 1}), b({1, -1});
  EXPECT_EQ(a * b, UPoly({1, 0, -1}));
  EXPECT_EQ(*(a * b).divexact(b), a);
  EXPECT_FALSE(UPoly({1, 0, 1}).divexact(a).has_value());
  auto [q, r] = UPoly({1, 0, 0, 1}).divmod(a);
  EXPECT_EQ(q, UPoly({1, -1, 1}));
  EXPECT_TRUE(r.is_zero());
  EXPECT_TRUE(UPoly({1, 2, 1}).palindromic());
  EXPECT_FALSE(UPoly({1, 2}).palindromic());
  EXPECT_EQ(UPoly::from_indices({0, 2, 2}), UPoly({1, 0, 2}));
  EXPECT_EQ(UPoly({3, 0, 1}).at_one(), 4);
}

TEST(UPoly, CyclotomicQuotient) {
  // (t^4 - 1)/(t - 1) = 1 + t + t^2 + t^3
  EXPECT_EQ(cyclotomic_quotient({4}, {1}), UPoly({1, 1, 1, 1}));
  EXPECT_THROW(cyclotomic_quotient({3}, {2}), InconsistencyError);
}

TEST(Rost, AgainstEnumeration) {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    std::set<std::uint64_t> values;
    std::uint64_t s = 0, pw = 1;
    while (s <= 5000) {
      s += pw;
      pw *= p;
      values.insert(s);
    }
    for (std::uint64_t b = 1; b <= 5000; ++b) EXPECT_EQ(rost_dim_test(b, p), values.count(b) > 0) << b << " " << p;
  }
}

TEST(E6Tables, ClosedFormsMatchEnumeration) {
  auto rs = build_root_system("E6");
  EXPECT_EQ(UPoly(coset_space(rs, {2})->poincare()), e6::p_x2_closed());
  EXPECT_EQ(UPoly(coset_space(rs, {4})->poincare()), e6::p_x4_closed());
}

TEST(E6Tables, AllChecks) {
  auto rs = build_root_system("E6");
  auto checks = verify_e6_tables([&](const IndexSet& th) { return poincare_by_heights(*rs, th); });
  EXPECT_GT(checks.size(), 300u);
  for (const auto& c : checks) EXPECT_TRUE(c.pass) << c.name << " residual " << c.residual.to_string() << " " << c.detail;
}
