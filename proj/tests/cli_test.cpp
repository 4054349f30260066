#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "homlie/homlie.hpp"
#include "json.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

/// Runs `homlie <args>` through the shell; stderr is folded into `out` when `merge` is set.
CliResult cli(const std::string& args, bool merge = false) {
  std::string cmd = std::string("\"") + HOMLIE_CLI_PATH + "\" " + args + (merge ? " 2>&1" : " 2>/dev/null");
  CliResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string("\"") + HOMLIE_DATA_DIR + "/" + name + "\""; }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("homlie_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return "\"" + p.string() + "\"";
  }
  std::string path(const std::string& name) const { return "\"" + (dir_ / name).string() + "\""; }

  fs::path dir_;
};

const json* check_named(const json& report, const std::string& name) {
  for (const auto& c : report["checks"])
    if (c["name"] == name) return &c;
  return nullptr;
}

}  // namespace

TEST_F(Cli, ExamplePipedIntoVerify) {
  CliResult r = cli("example sl3 --mu 2,3,4=1 | \"" HOMLIE_CLI_PATH "\" verify -");
  ASSERT_EQ(r.code, 0) << r.out;
  json j = json::parse(r.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  const json* lie = check_named(j, "is_lie");
  ASSERT_NE(lie, nullptr);
  EXPECT_FALSE((*lie)["passed"].get<bool>());
  EXPECT_EQ((*lie)["witness"]["indices"], json::parse("[0,1,2]"));
  EXPECT_EQ((*lie)["witness"]["defect"][11], "-3");
  EXPECT_EQ(j["quantities"]["dim"], 16);
}

TEST_F(Cli, VerifyDataFileMatchesGeneratedExample) {
  CliResult gen = cli("example sl3 --mu 2,3,4=1");
  ASSERT_EQ(gen.code, 0);
  std::ifstream in(std::string(HOMLIE_DATA_DIR) + "/sl3_example.json");
  std::string stored((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(gen.out, stored);
  CliResult r = cli("verify " + data("sl3_example.json") + " --checks homlie,centroid,metric");
  EXPECT_EQ(r.code, 0) << r.out;
}

TEST_F(Cli, VerifySelectedChecksFail) {
  CliResult r = cli("verify " + data("sl3_example.json") + " --checks lie");
  EXPECT_EQ(r.code, 1);
  json j = json::parse(r.out);
  EXPECT_FALSE(j["passed"].get<bool>());
  EXPECT_EQ(j["checks"].size(), 1u);
  EXPECT_EQ(cli("verify " + data("sl3_example.json") + " --checks bogus").code, 3);
}

TEST_F(Cli, ConstructRejectsHypothesisG) {
  CliResult r = cli("construct " + data("extension_bad_mu.json"));
  EXPECT_EQ(r.code, 2);
  json j = json::parse(r.out);
  const json* g = check_named(j["hypotheses"], "G");
  ASSERT_NE(g, nullptr);
  EXPECT_FALSE((*g)["passed"].get<bool>());
  EXPECT_EQ((*g)["witness"]["indices"].size(), 3u);
}

TEST_F(Cli, ConstructWritesAlgebra) {
  CliResult r = cli("construct " + data("extension_sl2_h2.json") + " -o " + path("built.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  json j = json::parse(r.out);
  EXPECT_TRUE(j["hypotheses"]["passed"].get<bool>());
  EXPECT_TRUE(j["report"]["passed"].get<bool>());
  CliResult v = cli("verify " + path("built.json"));
  EXPECT_EQ(v.code, 0) << v.out;
  EXPECT_EQ(json::parse(v.out)["quantities"]["dim"], 8);
}

TEST_F(Cli, DecomposeAndRoundTrip) {
  CliResult r = cli("roundtrip " + data("sl3_example.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(json::parse(r.out)["result"], "exact match");

  CliResult d = cli("decompose " + data("sl3_example.json") + " -o " + path("dec.json"));
  ASSERT_EQ(d.code, 0) << d.out;
  json j = json::parse(d.out);
  EXPECT_TRUE(j["validation"]["passed"].get<bool>());
  EXPECT_EQ(j["fitting"]["ell"], 2);
  std::ifstream in(dir_ / "dec.json");
  json dec = json::parse(in);
  EXPECT_EQ(dec["s_dim"], 8);
  EXPECT_EQ(dec["h_dim"], 0);
}

TEST_F(Cli, AnalyzeReportsStructure) {
  CliResult r = cli("analyze " + data("sl3_example.json"));
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["center_dim"], 0);
  EXPECT_EQ(j["derived_dim"], 16);
  EXPECT_EQ(j["is_lie"], false);
  EXPECT_EQ(j["nilpotency_index"], 2);
}

TEST_F(Cli, ParseErrorsExitThree) {
  std::string f = write("bad.json",
                        R"({"schema_version":"1","dim":3,"bracket":[[2,1,0,"1"]],"twist":[["0","0","0"],["0","0","0"],["0","0","0"]]})");
  CliResult r = cli("verify " + f, true);
  EXPECT_EQ(r.code, 3);
  json j = json::parse(r.out);
  EXPECT_EQ(j["kind"], "bracket_order");
  EXPECT_EQ(j["location"], "/bracket/0");
  EXPECT_EQ(j["error"], "bracket indices must satisfy i<j");

  std::string z = write("zero.json", R"({"schema_version":"1","dim":2,"bracket":[[0,1,0,"1/0"]],"twist":[["0","0"],["0","0"]]})");
  EXPECT_EQ(json::parse(cli("verify " + z, true).out)["kind"], "zero_denominator");
  EXPECT_EQ(cli("verify " + path("missing.json")).code, 3);
  EXPECT_EQ(cli("frobnicate").code, 3);
}

TEST_F(Cli, DecomposeRejectsLieInputWithoutTwist) {
  std::string f = write("sl2.json", homlie::io::serialize_algebra(
                                        homlie::QuadraticHomLieAlgebra(homlie::sl(2), homlie::killing(homlie::sl(2)))));
  CliResult r = cli("decompose " + f, true);
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(json::parse(r.out)["code"], "precondition");
}

TEST_F(Cli, ThreadsOptionIsAccepted) {
  EXPECT_EQ(cli("--threads 4 example sl2").code, 0);
}
