#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace {

const std::string kCli = TTS_CLI_PATH;
const std::string kFixtures = TTS_FIXTURES_DIR;
const std::string kStreetChain = "'right&@r1&@r2&@r3&@r4&@r5 ; right'";

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  CliRun r;
  FILE* pipe = popen((kCli + " " + args + " 2>/dev/null").c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json result_of(const CliRun& r) { return nlohmann::json::parse(r.out).at("result"); }

TEST(Cli, DenseOnStreetDataset) {
  CliRun r = run("dense " + kFixtures + "/street5.json --chain " + kStreetChain + " --stable");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(result_of(r)["density"], 2);
  EXPECT_EQ(result_of(r)["witness"], nlohmann::json::array({"r1", "r5"}));
}

TEST(Cli, ValidateGenealogyStrict) {
  CliRun r = run("validate " + kFixtures + "/genealogy5.json --strict --stable");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(result_of(r)["ok"], true);
}

TEST(Cli, ClosureOnStreetDataset) {
  CliRun r = run("closure " + kFixtures + "/street5.json --set r3 --chain " + kStreetChain + " --stable");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(result_of(r)["closure"], nlohmann::json::array({"r1", "r2", "r3"}));
}

TEST(Cli, StableOutputIsByteIdentical) {
  const std::string args = "connect builtin:street2x3 --chain 'right&@a1&@a2&@a3&@b1&@b2&@b3 ; right' --stable";
  CliRun a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(nlohmann::json::parse(a.out).contains("timing"), false);
  CliRun timed = run("connect builtin:street2x3 --chain 'right&@a1&@a2&@a3&@b1&@b2&@b3 ; right'");
  EXPECT_TRUE(nlohmann::json::parse(timed.out).contains("timing"));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("closure builtin:street5 --set r9 --chain " + kStreetChain).code, 3);
  EXPECT_EQ(run("closure builtin:street5 --set r1 --chain 'right ;'").code, 2);
  EXPECT_EQ(run("nbhd builtin:street5 --chain 'nope ; right' --x r1").code, 2);
  EXPECT_EQ(run("validate " + kFixtures + "/missing.json").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("stats builtin:genealogy5 --kind pair").code, 3);
}

TEST(Cli, StatsCsv) {
  CliRun r = run("stats builtin:street5 --kind pchain --p right --csv");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("subject,value,z\n", 0), 0U);
}

TEST(Cli, BuildThenQuery) {
  const std::string out = ::testing::TempDir() + "/street2x3.space.json";
  CliRun b = run("build --dataset " + kFixtures + "/street2x3.json --kind community -o " + out);
  ASSERT_EQ(b.code, 0);
  CliRun v = run("validate " + out + " --strict --stable");
  EXPECT_EQ(v.code, 0);
}

TEST(Cli, OracleCommand) {
  CliRun r = run("oracle builtin:street5 --stable");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(result_of(r)["passed"], true);
}

}  // namespace
