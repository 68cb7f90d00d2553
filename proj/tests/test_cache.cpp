#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "gpchow/cache.hpp"
#include "gpchow/chow.hpp"

using namespace gpchow;
namespace fs = std::filesystem;

namespace {

class CacheTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("gpchow_cache_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                       "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  template <class Ring>
  static void expect_same_rows(const RestrictionTable<Ring>& a, const RestrictionTable<Ring>& b) {
    ASSERT_EQ(a.built_degree(), b.built_degree());
    for (std::size_t v = 0; v < a.size(); ++v) {
      if (a.space().length(v) > a.built_degree()) continue;
      EXPECT_EQ(a.row(v), b.row(v));
    }
  }

  fs::path dir;
};

}  // namespace

TEST_F(CacheTest, RoundTripPolynomialTable) {
  auto X = coset_space(build_root_system("B3"), {1, 3});
  PolyRing<BigInt> ring(Frame::identity(3));
  auto a = cached_table(X, ring, X->dim(), dir.string());
  int logged_loads = 0;
  auto b = cached_table(X, ring, X->dim(), dir.string(), [&](const std::string& s) {
    if (s.find("loaded") != std::string::npos) ++logged_loads;
  });
  EXPECT_EQ(logged_loads, X->dim());
  expect_same_rows(a, b);
}

TEST_F(CacheTest, ResumeFromPartialBuild) {
  auto X = coset_space(build_root_system("E6"), {1});
  ScalarRing<BigInt> ring(Frame::generic(X->root_system(), 0));
  auto part = cached_table(X, ring, 7, dir.string());
  EXPECT_EQ(part.built_degree(), 7);
  auto full = cached_table(X, ring, X->dim(), dir.string());
  auto fresh = build_table(X, ring, X->dim());
  expect_same_rows(full, fresh);
}

TEST_F(CacheTest, SeriesTableRoundTrip) {
  auto X = coset_space(build_root_system("G2"), {2});
  SeriesRing<BigInt> ring(series_context(X->root_system(), 2, 3));
  auto a = cached_table(X, ring, X->dim(), dir.string());
  auto b = cached_table(X, SeriesRing<BigInt>(series_context(X->root_system(), 2, 3)), X->dim(), dir.string());
  expect_same_rows(a, b);
}

TEST_F(CacheTest, StaleHeaderIsRejected) {
  auto X = coset_space(build_root_system("G2"), {2});
  PolyRing<BigInt> ring(Frame::identity(2));
  auto a = cached_table(X, ring, X->dim(), dir.string());
  TableCache<PolyRing<BigInt>> cache(dir, *X, ring);
  auto path = cache.file(2);
  nlohmann::json j;
  {
    std::ifstream in(path);
    j = nlohmann::json::parse(in);
  }
  j["header"]["order_hash"] = "0";
  {
    std::ofstream out(path);
    out << j.dump();
  }
  EXPECT_THROW(cached_table(X, ring, X->dim(), dir.string()), CacheError);
  j["schema_version"] = 999;
  {
    std::ofstream out(path);
    out << j.dump();
  }
  EXPECT_THROW(cached_table(X, ring, X->dim(), dir.string()), CacheError);
  {
    std::ofstream out(path);
    out << "{not json";
  }
  EXPECT_THROW(cached_table(X, ring, X->dim(), dir.string()), CacheError);
}

TEST_F(CacheTest, DifferentDomainsUseDifferentFiles) {
  auto X = coset_space(build_root_system("G2"), {2});
  TableCache<PolyRing<BigInt>> a(dir, *X, PolyRing<BigInt>(Frame::identity(2)));
  TableCache<ScalarRing<BigInt>> b(dir, *X, ScalarRing<BigInt>(Frame::generic(X->root_system(), 0)));
  EXPECT_NE(a.dir(), b.dir());
  EXPECT_EQ(a.header()["order_hash"], b.header()["order_hash"]);
}

TEST(CacheEnv, DefaultDirectoryFromEnvironment) {
  setenv("GPCHOW_CACHE_DIR", "/tmp/somewhere", 1);
  EXPECT_EQ(default_cache_dir(), "/tmp/somewhere");
  unsetenv("GPCHOW_CACHE_DIR");
  EXPECT_EQ(default_cache_dir(), "");
}
