#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(GPCHOW_BIN) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

}  // namespace

TEST(Cli, TableContainsDivisorSquare) {
  auto r = run("table --type G2 --theta 2");
  ASSERT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["rows"].size(), 21u);
  bool found = false;
  for (const auto& row : j["rows"])
    if (row["u"] == nlohmann::json({2}) && row["v"] == nlohmann::json({2})) {
      found = true;
      EXPECT_EQ(row["product"], nlohmann::json::parse(R"([{"word": [1, 2], "coefficient": "3"}])"));
    }
  EXPECT_TRUE(found);
}

TEST(Cli, PoincareCsv) {
  auto r = run("poincare --type E6 --theta 2 --format csv");
  ASSERT_EQ(r.status, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "count,degree");
  int rows = 0;
  long total = 0;
  while (std::getline(in, line)) {
    ++rows;
    total += std::stol(line.substr(0, line.find(',')));
  }
  EXPECT_EQ(rows, 22);
  EXPECT_EQ(total, 72);
}

TEST(Cli, ProductSteenrodChern) {
  auto r = run("product --type G2 --theta 2 --expr \"h^5\" --expr \"Z[2]^2-3*Z[1,2]\"");
  ASSERT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["rows"][0]["value"][0]["coefficient"], "18");
  EXPECT_TRUE(j["rows"][1]["value"].empty());
  r = run("steenrod --type G2 --theta 2 --prime 2 --j 1 --expr \"Z[1,2,1,2]\"");
  ASSERT_EQ(r.status, 0);
  j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["rows"][0]["value"], nlohmann::json::parse(R"([{"word": [2, 1, 2, 1, 2], "coefficient": "1"}])"));
  r = run("chern --type G2 --theta 2 --degree 2");
  ASSERT_EQ(r.status, 0);
  j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["rows"][0]["value"], nlohmann::json::parse(R"([{"word": [1, 2], "coefficient": "13"}])"));
}

TEST(Cli, AlphaStarOfUnitOnDiagonal) {
  auto r = run("alphastar --type B2 --theta 1 --prime 3 --summand 0 --expr 1");
  ASSERT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["projector_lowest_grade"], 0);
  for (const auto& row : j["rows"]) {
    ASSERT_EQ(row["image"].size(), 1u);
    EXPECT_EQ(row["image"][0]["word"], row["source"]);
  }
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("poincare --type X9 --theta 1").status, 2);
  EXPECT_EQ(run("poincare --type G2 --theta 5").status, 2);
  EXPECT_EQ(run("product --type G2 --theta 2 --expr \"Z[2\"").status, 2);
  EXPECT_EQ(run("steenrod --type G2 --theta 2 --prime 4 --expr h").status, 2);
  EXPECT_EQ(run("nonsense").status, 2);
  EXPECT_EQ(run("verify-g2").status, 0);
}

TEST(Cli, DeterministicOutputWithCache) {
  fs::path dir = fs::temp_directory_path() / "gpchow_cli_cache_test";
  fs::remove_all(dir);
  std::string args = "restrict --type B3 --theta 1,3 --cache-dir " + dir.string();
  auto a = run(args), b = run(args), c = run("restrict --type B3 --theta 1,3");
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  EXPECT_TRUE(fs::exists(dir));
  fs::remove_all(dir);
}

TEST(Cli, OutputFile) {
  fs::path f = fs::temp_directory_path() / "gpchow_cli_out.json";
  ASSERT_EQ(run("poincare --type G2 --theta 1 --output " + f.string()).status, 0);
  std::ifstream in(f);
  auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["size"], 6);
  fs::remove(f);
}
