#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace dshlab {
namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, ReturnWords) {
  const CliResult r = run_cli({"return-words", "--base", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["words"], nlohmann::json({"0", "01"}));
}

TEST(Cli, ReturnWordsErrors) {
  EXPECT_EQ(run_cli({"return-words", "--base", "0", "--substitution", "/nonexistent.json"}).code, 1);
  EXPECT_EQ(run_cli({"return-words", "--base", "11"}).code, 2);
  EXPECT_EQ(run_cli({"return-words"}).code, 1);
}

TEST(Cli, SubstitutionFile) {
  const auto path = std::filesystem::temp_directory_path() / "dshlab_cli_tm.json";
  std::ofstream(path) << R"({"alphabet": ["a", "b"], "rules": {"a": "ab", "b": "ba"}, "seed": "a"})";
  const CliResult r = run_cli({"return-words", "--base", "a", "--substitution", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["words"], nlohmann::json({"a", "ab", "abb"}));
  std::filesystem::remove(path);
}

TEST(Cli, BuildModel) {
  const CliResult r = run_cli({"build-model", "--base", "0", "--horizon", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["valid"].get<bool>());
  EXPECT_EQ(j["model"]["levels"].size(), 2u);
  EXPECT_EQ(run_cli({"build-model", "--base", "0", "--horizon", "0"}).code, 1);
}

TEST(Cli, VerifySmokeAndTypo) {
  const CliResult ok = run_cli({"verify", "--trials", "1", "--seed", "5", "--suite", "conj", "--suite", "block1"});
  ASSERT_EQ(ok.code, 0) << ok.err;
  const auto j = nlohmann::json::parse(ok.out);
  EXPECT_EQ(j["seed"], 5);
  EXPECT_EQ(j["suites"].size(), 2u);
  EXPECT_EQ(j["suite_properties"].size(), 13u);
  const CliResult typo = run_cli({"verify", "--suite", "conjj"});
  EXPECT_EQ(typo.code, 1);
  EXPECT_NE(typo.err.find("fullconj"), std::string::npos);
}

TEST(Cli, VerifyIsDeterministic) {
  const std::vector<std::string> args{"verify", "--trials", "2", "--suite", "permute", "--seed", "9"};
  EXPECT_EQ(run_cli(args).out, run_cli(args).out);
}

TEST(Cli, SeedFromEnvironment) {
  ::setenv("DSH_LAB_SEED", "77", 1);
  const CliResult r = run_cli({"verify", "--trials", "1", "--suite", "vn"});
  ::unsetenv("DSH_LAB_SEED");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["seed"], 77);
}

TEST(Cli, PipelineValidation) {
  EXPECT_EQ(run_cli({"pipeline", "--epsilon", "0"}).code, 1);
  EXPECT_EQ(run_cli({"pipeline", "--depth", "3"}).code, 2);
}

TEST(Cli, UnitaryEval) {
  const CliResult r = run_cli({"unitary", "eval", "--kind", "swap", "--n", "3", "--a", "1", "--b", "3", "--t", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_LE(j["unitarity_defect"].get<double>(), 1e-12);
  EXPECT_EQ(run_cli({"unitary", "eval", "--kind", "spin"}).code, 1);
}

}  // namespace
}  // namespace dshlab
