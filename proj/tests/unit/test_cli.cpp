#include <filesystem>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "builders.hpp"
#include "generators.hpp"
#include "mipdoor/json_io.hpp"
#include "mipdoor/mps.hpp"
#include "mipdoor_cli/cli.hpp"

namespace mipdoor {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mipdoor_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write_instance(const std::string& stem, const MipInstance& inst) {
    const fs::path p = dir_ / (stem + ".mps");
    write_text_file(p, write_mps(inst));
    return p;
  }

  static int run(std::vector<std::string> args) {
    args.insert(args.begin(), "mipdoor");
    std::vector<const char*> argv;
    for (const std::string& a : args) argv.push_back(a.c_str());
    return cli::run_cli(static_cast<int>(argv.size()), argv.data());
  }

  fs::path dir_;
};

TEST_F(CliTest, SearchIsByteIdenticalAcrossRuns) {
  const fs::path mps = write_instance("blocks", testing::random_block_instance(7, 3));
  for (const char* out : {"a", "b"}) {
    ASSERT_EQ(run({"search", mps.string(), "--k", "3", "--seed", "11", "--iters", "200", "--out",
                   (dir_ / out).string()}),
              0);
  }
  for (const char* f : {"trace.jsonl", "summary.json"}) {
    EXPECT_EQ(read_text_file(dir_ / "a" / f), read_text_file(dir_ / "b" / f)) << f;
  }
  const json summary = json::parse(read_text_file(dir_ / "a" / "summary.json"));
  EXPECT_EQ(summary.at("method"), "mcts");
  EXPECT_TRUE(fs::exists(dir_ / "a" / "timing.json"));
}

TEST_F(CliTest, EveryMethodWritesATrace) {
  const fs::path mps = write_instance("knap", testing::two_binary_knapsack());
  for (const char* method : {"mcts", "biased", "setcover", "oracle"}) {
    const fs::path out = dir_ / method;
    ASSERT_EQ(run({"search", mps.string(), "--method", method, "--k", "1", "--out", out.string()}), 0)
        << method;
    const json summary = json::parse(read_text_file(out / "summary.json"));
    EXPECT_EQ(summary.at("best_tree_weight"), 1.0) << method;
    EXPECT_FALSE(read_text_file(out / "trace.jsonl").empty()) << method;
  }
}

TEST_F(CliTest, MissingInstanceFails) {
  EXPECT_NE(run({"search", (dir_ / "absent.mps").string()}), 0);
  EXPECT_NE(run({"solve", (dir_ / "absent.mps").string()}), 0);
}

TEST_F(CliTest, BadOptionValuesFail) {
  const fs::path mps = write_instance("knap", testing::two_binary_knapsack());
  EXPECT_NE(run({"search", mps.string(), "--alpha-pc", "1.5"}), 0);
  EXPECT_NE(run({"search", mps.string(), "--method", "greedy"}), 0);
  EXPECT_NE(run({"oracle", mps.string(), "--k", "5"}), 0);
}

TEST_F(CliTest, MalformedInstanceReportsError) {
  const fs::path p = dir_ / "broken.mps";
  write_text_file(p, "NAME broken\nROWS\n N obj\nCOLUMNS\n x obj notanumber\nENDATA\n");
  EXPECT_EQ(run({"search", p.string(), "--out", (dir_ / "o").string()}), 1);
}

TEST_F(CliTest, OracleWritesReport) {
  const fs::path mps = write_instance("knap", testing::two_binary_knapsack());
  ASSERT_EQ(run({"oracle", mps.string(), "--k", "1", "--out", dir_.string()}), 0);
  const json report = json::parse(read_text_file(dir_ / "oracle.json"));
  EXPECT_EQ(report.at("num_candidates"), 2);
  EXPECT_EQ(report.at("best_candidates").size(), 2u);
}

TEST_F(CliTest, SolveAndCompare) {
  const testing::CraftedInstance c = testing::crafted_unique_backdoor(3);
  const fs::path mps = write_instance("crafted", c.inst);
  const fs::path prio = dir_ / "prio.json";
  write_text_file(prio, json(c.backdoor).dump());
  ASSERT_EQ(run({"solve", mps.string(), "--out", (dir_ / "plain").string()}), 0);
  ASSERT_EQ(run({"solve", mps.string(), "--priority", prio.string(), "--out",
                 (dir_ / "prio").string()}),
            0);
  const json solved = json::parse(read_text_file(dir_ / "prio" / "crafted.solve.json"));
  EXPECT_EQ(solved.at("status"), "optimal");
  EXPECT_EQ(solved.at("priority"), json(c.backdoor));

  ASSERT_EQ(run({"compare", (dir_ / "plain").string(), (dir_ / "prio").string(), "--out",
                 (dir_ / "cmp").string()}),
            0);
  const json cmp = json::parse(read_text_file(dir_ / "cmp" / "compare.json"));
  EXPECT_EQ(cmp.at("solved_by_both"), 1);
  EXPECT_TRUE(fs::exists(dir_ / "cmp" / "compare.csv"));
}

TEST_F(CliTest, CompareMismatchFails) {
  const fs::path a = write_instance("one", testing::two_binary_knapsack());
  ASSERT_EQ(run({"solve", a.string(), "--out", (dir_ / "x").string()}), 0);
  fs::create_directories(dir_ / "y");
  EXPECT_EQ(run({"compare", (dir_ / "x").string(), (dir_ / "y").string(), "--out", dir_.string()}), 1);
}

}  // namespace
}  // namespace mipdoor
