#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "support/fixtures.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(ADAPTREG_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

}  // namespace

TEST(Cli, ExitCodes) {
  const auto data = adaptreg::testing::fresh_dir("cli_data");
  adaptreg::testing::write_fixture_data(data);
  const auto manifest = adaptreg::testing::shipped_manifest();
  const std::string base = "--manifest " + q(manifest) + " --data-dir " + q(data);

  EXPECT_EQ(run(base + " run --dataset Concrete --target CompressiveStrength --detector none"), 0);
  EXPECT_EQ(run(base + " run --dataset Concrete --target CompressiveStrength --detector bogus"), 2);
  EXPECT_EQ(run(base + " run --dataset Concrete --target Nope --detector rmse"), 2);
  EXPECT_EQ(run("--manifest " + q(manifest) + " --data-dir /nonexistent run --dataset Concrete "
                "--target CompressiveStrength --detector none"),
            1);
  EXPECT_EQ(run("--no-such-flag"), 2);
}

TEST(Cli, RunWritesTraceAndResult) {
  const auto data = adaptreg::testing::fresh_dir("cli_trace_data");
  adaptreg::testing::write_fixture_data(data);
  const auto out = adaptreg::testing::fresh_dir("cli_trace_out");
  const std::string cmd = "--manifest " + q(adaptreg::testing::shipped_manifest()) + " --data-dir " +
                          q(data) + " run --dataset Protein --target RMSD --detector rmse --threshold 0.1e-4" +
                          " --trace " + q(out / "t.csv") + " --out " + q(out / "r.jsonl");
  ASSERT_EQ(run(cmd), 0);
  EXPECT_TRUE(fs::exists(out / "t.csv"));
  std::ifstream in(out / "r.jsonl");
  std::string line;
  ASSERT_TRUE(std::getline(in, line));
  EXPECT_NE(line.find("\"prediction_count\":280"), std::string::npos) << line;
}

TEST(Cli, MatrixSubcommand) {
  const auto data = adaptreg::testing::fresh_dir("cli_matrix_data");
  adaptreg::testing::write_fixture_data(data);
  const auto out = adaptreg::testing::fresh_dir("cli_matrix_out");
  const std::string cmd = "--manifest " + q(adaptreg::testing::shipped_manifest()) + " --data-dir " +
                          q(data) + " matrix --config " + q(adaptreg::testing::shipped_matrix()) +
                          " --parallel 2 --out " + q(out / "all.jsonl") + " --table " + q(out / "table.txt");
  ASSERT_EQ(run(cmd), 0);
  EXPECT_TRUE(fs::exists(out / "table.txt"));
  EXPECT_TRUE(fs::exists(out / "all.jsonl"));
}
