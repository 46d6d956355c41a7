#include <gtest/gtest.h>

#include "meanmap/meanmap.hpp"

using namespace meanmap;

TEST(Reproduction, DefaultSuitePasses) {
  const auto report = run_reproduction_suite();
  for (const auto& c : report.checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
  EXPECT_TRUE(report.all_pass());
  EXPECT_GE(report.checks.size(), 8u);
}

TEST(Reproduction, BrokenLambdaFailsOnlyDependentChecks) {
  ReproductionOptions options;
  options.lambda_c = Rational(1);
  options.sweep_samples = 20;
  const auto report = run_reproduction_suite(options);
  EXPECT_FALSE(report.all_pass());
  for (const auto& c : report.checks) {
    if (c.name == "ahm-compound" || c.name == "agm-compound" || c.name == "example1-orbits") EXPECT_TRUE(c.pass);
    if (c.name == "lambda-params") EXPECT_FALSE(c.pass);
  }
}
