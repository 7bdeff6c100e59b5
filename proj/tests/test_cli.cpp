#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(WARPACT_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t k = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), k);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           (std::string("warpact_cli_") + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(dir_ / name) << text; }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, GenerateIsDeterministic) {
  ASSERT_EQ(run("generate --model wp --rule kr -n 1000 -k 10 --rng-seed 7 --out " + path("a.txt")).status, 0);
  ASSERT_EQ(run("generate --model wp --rule kr -n 1000 -k 10 --rng-seed 7 --out " + path("b.txt")).status, 0);
  EXPECT_EQ(slurp(path("a.txt")), slurp(path("b.txt")));
  EXPECT_FALSE(slurp(path("a.txt")).empty());
}

TEST_F(Cli, GenerateRejectsTooFewEdges) { EXPECT_EQ(run("generate --model wp -n 9 -m 4").status, 1); }

TEST_F(Cli, GenerateSmallExample) {
  const auto r = run("generate --model wp --rule kr -n 5 -m 4 --rng-seed 3 --out " + path("g.txt"));
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("n=5 m=4"), std::string::npos);
  std::istringstream in(slurp(path("g.txt")));
  std::size_t lines = 0;
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '%') ++lines;
  EXPECT_EQ(lines, 4u);
}

TEST_F(Cli, UnknownRuleIsUsageError) { EXPECT_EQ(run("generate --rule zz -n 5 -m 4").status, 1); }
TEST_F(Cli, MissingSubcommandIsUsageError) { EXPECT_EQ(run("").status, 1); }

TEST_F(Cli, StatsSingleEdge) {
  write("e.txt", "u v\n");
  const auto r = run("stats " + path("e.txt") + " --modularity-runs 2 --out " + path("st"));
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["n"], 2);
  EXPECT_EQ(j["m"], 1);
  EXPECT_DOUBLE_EQ(j["mean_distance"].get<double>(), 1.0);
  EXPECT_EQ(j["diameter"], 1);
  EXPECT_DOUBLE_EQ(j["mean_clustering"].get<double>(), 0.0);
  EXPECT_TRUE(fs::exists(path("st/stats.json")));
  EXPECT_TRUE(fs::exists(path("st/degree.csv")));
  EXPECT_TRUE(fs::exists(path("st/clustering.csv")));
  EXPECT_TRUE(fs::exists(path("st/distance.csv")));
}

TEST_F(Cli, StatsDisconnected) {
  write("d.txt", "1 2\n2 3\n4 5\n");
  const auto j = nlohmann::json::parse(run("stats " + path("d.txt") + " --modularity-runs 1").out);
  EXPECT_LT(j["lcc"].get<double>(), 1.0);
  EXPECT_GT(j["unreachable_fraction"].get<double>(), 0.0);
}

TEST_F(Cli, StatsDataErrors) {
  write("bad.txt", "1 2\n3\n");
  EXPECT_EQ(run("stats " + path("bad.txt")).status, 2);
  EXPECT_EQ(run("stats " + path("missing.txt")).status, 2);
}

TEST_F(Cli, CompareSelfIsZero) {
  write("s.txt", "0 1\n0 2\n0 3\n");
  const auto j = nlohmann::json::parse(run("compare " + path("s.txt") + " " + path("s.txt")).out);
  EXPECT_EQ(j["d_measure"].get<double>(), 0.0);
  EXPECT_EQ(j["portrait_divergence"].get<double>(), 0.0);
}

TEST_F(Cli, CompareStarPathGolden) {
  write("s.txt", "0 1\n0 2\n0 3\n");
  write("p.txt", "0 1\n1 2\n2 3\n");
  const auto r = run("compare " + path("s.txt") + " " + path("p.txt") + " --out " + path("por"));
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["d_measure"].get<double>(), 0.18618529477642243, 1e-12);
  EXPECT_NEAR(j["portrait_divergence"].get<double>(), 0.52243345442468758, 1e-12);
  EXPECT_TRUE(fs::exists(path("por/portrait_a.csv")));
  EXPECT_TRUE(fs::exists(path("por/portrait_b.csv")));
}

TEST_F(Cli, ExperimentComparisonWritesSummary) {
  ASSERT_EQ(run("generate --rule kr -n 120 -k 6 --rng-seed 2 --out " + path("t.txt")).status, 0);
  const auto r = run("experiment --kind comparison --target " + path("t.txt") + " --realizations 3 --models kr,er,ws --threads 1 --out " +
                     path("cmp"));
  ASSERT_EQ(r.status, 0);
  EXPECT_TRUE(fs::exists(path("cmp/comparison.csv")));
  EXPECT_TRUE(fs::exists(path("cmp/comparison_summary.csv")));
}

TEST_F(Cli, ExperimentRequiresTarget) { EXPECT_EQ(run("experiment --kind comparison").status, 1); }

TEST_F(Cli, ExperimentEvolutionSmallGrid) {
  const auto r = run("experiment --kind evolution --realizations 2 --evolution-n 200 --k-grid 4,10 --n-grid 200 "
                     "--modularity-runs 1 --threads 1 --out " + path("evo"));
  ASSERT_EQ(r.status, 0);
  EXPECT_TRUE(fs::exists(path("evo/evolution_degree.csv")));
  EXPECT_TRUE(fs::exists(path("evo/evolution_nodes.csv")));
}
