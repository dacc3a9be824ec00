#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = krbenes::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("krbenes_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  static void write(const std::string& p, const std::string& text) { std::ofstream(p) << text; }

  fs::path dir_;
};

}  // namespace

TEST(Cli, BuildColumnCounts) {
  auto r = run({"build", "--kind", "benes", "--n", "8"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["columns"].size(), 5u);
  r = run({"build", "--kind", "kr-benes", "--n", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["columns"].size(), 3u);
  r = run({"build", "--kind", "k-benes", "--n", "16", "--k", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["columns"].size(), 6u);
}

TEST(Cli, BuildRejectsBadSizes) {
  EXPECT_EQ(run({"build", "--kind", "benes", "--n", "6"}).code, 2);
  EXPECT_EQ(run({"build", "--kind", "k-benes", "--n", "16", "--k", "8"}).code, 2);
  EXPECT_EQ(run({"build", "--kind", "torus", "--n", "8"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, RouteExampleOnBenes) {
  const auto r = run({"route", "--kind", "benes", "--n", "8", "--perm", "4,5,0,6,1,2,7,3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json plan = json::parse(r.out);
  EXPECT_EQ(plan["cost"]["terminal_visits"], 40);
  EXPECT_EQ(plan["permutation"], json::parse("[4,5,0,6,1,2,7,3]"));
}

TEST(Cli, RouteIdentityOnKR) {
  const auto r = run({"route", "--kind", "kr-benes", "--n", "16", "--perm", "0,1,2,3,4,5,6,7,8,9,10,11,12,13,14,15"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["k_used"], 2);
}

TEST(Cli, RouteErrors) {
  auto r = run({"route", "--kind", "k-benes", "--n", "16", "--k", "2", "--perm",
                "15,14,13,12,11,10,9,8,7,6,5,4,3,2,1,0"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("bounded"), std::string::npos);
  r = run({"route", "--kind", "benes", "--n", "4", "--perm", "0,1,1,3"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("1"), std::string::npos);
  EXPECT_EQ(run({"route", "--kind", "benes", "--n", "8", "--perm", "0,1,2,3"}).code, 2);
  EXPECT_EQ(run({"route", "--kind", "benes", "--n", "4", "--perm", "0,1,2,3", "--algo", "kr-benes"}).code, 2);
  EXPECT_EQ(run({"route", "--kind", "benes", "--n", "4"}).code, 2);
}

TEST_F(CliFiles, BuildRouteVerifyThroughFiles) {
  const std::string net = path("net.json"), plan = path("plan.json"), perm = path("perm.txt");
  ASSERT_EQ(run({"build", "--kind", "kr-benes", "--n", "16", "--out", net}).code, 0);
  write(perm, "1,0,3,2,6,7,4,5,8,9,10,11,12,13,15,14\n");
  ASSERT_EQ(run({"route", "--net", net, "--perm-file", perm, "--out", plan}).code, 0);
  const auto r = run({"verify", "--net", net, "--plan", plan});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["ok"], true);
  EXPECT_EQ(run({"verify", "--net", net, "--plan", plan, "--perm", "1,0,3,2,6,7,4,5,8,9,10,11,12,13,15,14"}).code, 0);
}

TEST_F(CliFiles, TamperedPlanFails) {
  const std::string net = path("net.json"), plan = path("plan.json");
  ASSERT_EQ(run({"build", "--kind", "benes", "--n", "8", "--out", net}).code, 0);
  ASSERT_EQ(run({"route", "--net", net, "--perm", "4,5,0,6,1,2,7,3", "--out", plan}).code, 0);
  json doc = json::parse(slurp(plan));
  auto& entry = doc["settings"][5];
  entry[2] = entry[2] == "cross" ? "straight" : "cross";
  write(plan, doc.dump());
  const auto r = run({"verify", "--net", net, "--plan", plan});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("column"), std::string::npos);
  EXPECT_EQ(json::parse(r.out)["ok"], false);
}

TEST_F(CliFiles, MismatchedNetworkIsStructural) {
  const std::string net = path("net.json"), plan = path("plan.json");
  ASSERT_EQ(run({"build", "--kind", "benes", "--n", "16", "--out", net}).code, 0);
  const auto routed = run({"route", "--kind", "benes", "--n", "8", "--perm", "4,5,0,6,1,2,7,3"});
  write(plan, routed.out);
  EXPECT_EQ(run({"verify", "--net", net, "--plan", plan}).code, 2);
  write(net, "{\"kind\": \"benes\", \"n\": 8, \"columns\": [], \"bypass_edges\": []}");
  EXPECT_EQ(run({"verify", "--net", net, "--plan", plan}).code, 2);
  EXPECT_EQ(run({"verify", "--net", path("missing.json"), "--plan", plan}).code, 2);
}

TEST(Cli, Count) {
  auto r = run({"count", "--n", "4", "--k", "2", "--exhaustive"});
  ASSERT_EQ(r.code, 0);
  json doc = json::parse(r.out);
  EXPECT_EQ(doc["formula_count"], 18);
  EXPECT_EQ(doc["exhaustive_count"], 14);
  EXPECT_EQ(doc["agrees"], false);
  doc = json::parse(run({"count", "--n", "8", "--k", "0"}).out);
  EXPECT_EQ(doc["formula_count"], 1);
  EXPECT_EQ(doc["exhaustive_count"], 1);
  doc = json::parse(run({"count", "--n", "8", "--k", "2", "--exhaustive"}).out);
  EXPECT_EQ(doc["formula_count"], 1458);
  EXPECT_EQ(doc["exhaustive_count"], 400);
  EXPECT_EQ(doc["agrees"], false);
  EXPECT_EQ(run({"count", "--n", "8", "--k", "8"}).code, 2);
}

TEST(Cli, SweepIsDeterministicAndVerified) {
  const auto a = run({"sweep", "--n", "16", "--trials", "100", "--seed", "1"});
  const auto b = run({"sweep", "--n", "16", "--trials", "100", "--seed", "1"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  std::istringstream rows(a.out);
  std::string line;
  std::getline(rows, line);
  EXPECT_EQ(line, "seed,k_exact,K,terminal_visits,overhead,verified");
  std::size_t count = 0;
  while (std::getline(rows, line)) {
    ++count;
    EXPECT_EQ(line.substr(line.rfind(',') + 1), "true");
    std::vector<std::string> f;
    std::istringstream ls(line);
    for (std::string x; std::getline(ls, x, ',');) f.push_back(x);
    EXPECT_LE(std::stoul(f[3]), 112u);
  }
  EXPECT_EQ(count, 100u);
  EXPECT_NE(a.out, run({"sweep", "--n", "16", "--trials", "100", "--seed", "2"}).out);
}

TEST(Cli, SweepLocalityAndSummary) {
  const auto a = run({"sweep", "--n", "32", "--trials", "200", "--seed", "3", "--dist", "locality"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, run({"sweep", "--n", "32", "--trials", "200", "--seed", "3", "--dist", "locality"}).out);
  const auto s = run({"sweep", "--n", "32", "--trials", "200", "--seed", "3", "--summary"});
  ASSERT_EQ(s.code, 0);
  EXPECT_EQ(s.out.substr(0, s.out.find('\n')), "K,plans,mean_terminal_visits,max_terminal_visits,total_overhead");
  EXPECT_EQ(run({"sweep", "--n", "128", "--trials", "1"}).code, 2);
  EXPECT_EQ(run({"sweep", "--n", "16", "--trials", "1", "--dist", "zipf"}).code, 2);
}

TEST(Cli, SweepSeedFromEnvironment) {
  ::setenv("FABRIC_SEED", "5", 1);
  const auto env = run({"sweep", "--n", "8", "--trials", "5"});
  ::unsetenv("FABRIC_SEED");
  EXPECT_EQ(env.out, run({"sweep", "--n", "8", "--trials", "5", "--seed", "5"}).out);
}

TEST_F(CliFiles, DotMatchesLibraryOutput) {
  const std::string net = path("net.json"), dot = path("net.dot");
  ASSERT_EQ(run({"build", "--kind", "kr-benes", "--n", "8", "--out", net}).code, 0);
  ASSERT_EQ(run({"dot", "--net", net, "--out", dot}).code, 0);
  const std::string text = slurp(dot);
  EXPECT_EQ(text.rfind("digraph", 0), 0u);
  EXPECT_NE(text.find("dashed"), std::string::npos);
  EXPECT_EQ(run({"dot", "--kind", "kr-benes", "--n", "8"}).out, text);
}
