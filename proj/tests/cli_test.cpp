#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "meanmap_cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = meanmap::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& text) { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')); }

}  // namespace

TEST(Cli, CompoundAgm) {
  const auto r = run({"compound", "--mapping", "builtin:agm", "--v", "1,2", "--tol", "1e-12"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("1.45679103104690", 0), 0u) << r.out;
  EXPECT_EQ(run({"compound", "--mapping", "builtin:agm", "--v", "1,2"}).out, r.out) << "bit-stable output";
}

TEST(Cli, CompoundHamelInput) {
  const auto r = run({"compound", "--mapping", "builtin:hamel-mn", "--v", "sqrt(2),0", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["status"], "Converged");
}

TEST(Cli, ProbeExample1) {
  const auto r = run({"probe", "--mapping", "builtin:example1", "--v", "0,0.25,0.25", "--n-max", "100"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "n0=4\n");
  EXPECT_EQ(run({"probe", "--mapping", "builtin:example1", "--v", "0,1/4,1/4"}).out, "n0=4\n");
}

TEST(Cli, OrbitSwapHitsMaxIter) {
  const auto r = run({"orbit", "--mapping", "builtin:swap", "--v", "1,3", "--max-iter", "10", "--format", "csv"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(count_lines(r.out), 12u) << "header plus 11 rows";
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) EXPECT_EQ(line.substr(line.rfind(',') + 1), "2");
}

TEST(Cli, OrbitToFileAsJson) {
  const std::string path = ::testing::TempDir() + "orbit.json";
  const auto r = run({"orbit", "--mapping", "builtin:ahm", "--v", "2,8", "--format", "json", "--out", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["mapping"], "ahm");
  std::remove(path.c_str());
}

TEST(Cli, ListMappingsCoversEveryBuiltin) {
  const auto r = run({"--list-mappings"});
  EXPECT_EQ(r.code, 0);
  for (const auto& b : meanmap::builtin_mappings()) EXPECT_NE(r.out.find("builtin:" + b.name + "\t"), std::string::npos);
  EXPECT_EQ(count_lines(r.out), meanmap::builtin_mappings().size());
}

TEST(Cli, ErrorsAndExitCodes) {
  auto r = run({"compound", "--mapping", "builtin:agm", "--v", "-1,2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("DomainViolation"), std::string::npos);
  r = run({"compound", "--mapping", "builtin:nope", "--v", "1,2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("--mapping"), std::string::npos);
  r = run({"compound", "--mapping", "builtin:agm", "--v", "1,x"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("--v"), std::string::npos);
  EXPECT_EQ(run({"compound", "--tol", "abc"}).code, 64);
  EXPECT_EQ(run({"frobnicate"}).code, 64);
  EXPECT_EQ(run({}).code, 64);
  EXPECT_EQ(run({"hamel-demo", "--lambda", "1,1,4,1/2"}).code, 1);
}

TEST(Cli, MappingFromJsonFile) {
  const std::string path = ::testing::TempDir() + "gauss.json";
  std::ofstream(path) << R"({"version":1,"domain":[0,"inf"],"coordinates":[
      {"op":"power","r":1,"weights":["1/2","1/2"]},{"op":"power","r":0,"weights":["1/2","1/2"]}]})";
  auto r = run({"compound", "--mapping", path, "--v", "1,2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, run({"compound", "--mapping", "builtin:agm", "--v", "1,2"}).out);

  std::ofstream(path) << R"({"version":1,"coordinates":[{"op":"power","r":1,"weights":["1/2","1/3"]}]})";
  r = run({"compound", "--mapping", path, "--v", "1,2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("/coordinates/0/weights"), std::string::npos) << r.err;
  std::remove(path.c_str());
}

TEST(Cli, VerifyPrincipleFunceq) {
  EXPECT_EQ(run({"verify", "--mapping", "builtin:ahm", "--candidate", "geometric", "--samples", "50"}).code, 0);
  EXPECT_EQ(run({"verify", "--mapping", "builtin:ahm", "--candidate", "arithmetic", "--samples", "50"}).code, 1);
  const auto p = run({"principle", "--mapping", "builtin:swap", "--samples", "20"});
  EXPECT_EQ(p.code, 0);
  EXPECT_EQ(nlohmann::json::parse(p.out)["counts"]["DivergentNonUnique"], 20);
  const auto f = run({"funceq", "--mapping", "builtin:agm", "--phi", "step:1.5", "--samples", "50"});
  EXPECT_EQ(f.code, 0);
  EXPECT_EQ(nlohmann::json::parse(f.out)["max_residual"], 0.0);
}

TEST(Cli, HamelDemo) {
  const auto r = run({"hamel-demo", "--v", "sqrt(2),0", "--steps", "6"});
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["pairs"].size(), 7u);
  EXPECT_EQ(j["pairs"][1]["m"]["exact"], "0 + 3/8*sqrt(2)");
}

TEST(Cli, ReproduceVariants) {
  EXPECT_EQ(run({"reproduce", "--agm-tol", "1e-2", "--samples", "50"}).code, 0);
  const auto broken = run({"reproduce", "--lambda", "1,1,4,1/2", "--samples", "50"});
  EXPECT_EQ(broken.code, 1);
  const auto j = nlohmann::json::parse(broken.out);
  bool saw_failure = false;
  for (const auto& c : j["checks"]) {
    if (c["name"] == "lambda-params") saw_failure = !c["pass"].get<bool>();
  }
  EXPECT_TRUE(saw_failure);
}
