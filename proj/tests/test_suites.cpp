#include <gtest/gtest.h>

#include "dshlab/errors.hpp"
#include "dshlab/suites.hpp"

namespace dshlab {
namespace {

class SuiteSmoke : public ::testing::TestWithParam<std::string> {};

TEST_P(SuiteSmoke, PassesWithFewTrials) {
  SuiteConfig config;
  config.trials = 3;
  const SuiteOutcome r = run_suite(GetParam(), config);
  EXPECT_TRUE(r.pass) << r.counterexample;
  EXPECT_GT(r.checks, 0);
  EXPECT_FALSE(suite_description(GetParam()).empty());
}

INSTANTIATE_TEST_SUITE_P(AllSuites, SuiteSmoke, ::testing::ValuesIn(suite_names()),
                         [](const auto& info) { return info.param; });

TEST(Suites, WorkerCountDoesNotChangeResults) {
  SuiteConfig one;
  one.trials = 8;
  SuiteConfig four = one;
  four.workers = 4;
  for (const std::string name : {"permute", "block2", "blockchar"}) {
    const auto a = run_suite(name, one);
    const auto b = run_suite(name, four);
    EXPECT_EQ(a.checks, b.checks) << name;
    EXPECT_EQ(a.pass, b.pass) << name;
  }
}

TEST(Suites, UnknownName) {
  EXPECT_FALSE(is_suite("conjj"));
  EXPECT_THROW(run_suite("conjj", {}), PreconditionError);
}

}  // namespace
}  // namespace dshlab
