#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "support/temp_dir.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome run(const TempDir& dir, const std::string& args) {
  const auto out = dir / "stdout.txt";
  const auto err = dir / "stderr.txt";
  const std::string cmd = std::string(HRES_CLI_PATH) + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

void expect_single_json_error(const Outcome& o, const std::string& category) {
  EXPECT_NE(o.code, 0);
  ASSERT_FALSE(o.err.empty());
  EXPECT_EQ(o.err.find('\n'), o.err.size() - 1) << o.err;
  const auto j = nlohmann::json::parse(o.err);
  EXPECT_EQ(j.at("error"), category) << o.err;
  EXPECT_FALSE(j.at("message").get<std::string>().empty());
}

}  // namespace

TEST(Cli, GenDataThenSimulate) {
  TempDir dir;
  const auto gen = run(dir, "gen-data --seed 4 --out-dir " + (dir / "d").string());
  ASSERT_EQ(gen.code, 0) << gen.err;
  const auto sim = run(dir, "simulate --design 40,4,3,20,25,1 --trace --scenario " + (dir / "d/scenario.csv").string() +
                                " --out-dir " + dir.path().string());
  ASSERT_EQ(sim.code, 0) << sim.err;
  EXPECT_NE(sim.out.find("lpsp"), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(dir / "trace.csv"));
}

TEST(Cli, OptimizeWritesConvergence) {
  TempDir dir;
  {
    std::ofstream cfg(dir / "tiny.ini");
    cfg << "[optimizer]\npopulation = 6\niterations = 4\n";
  }
  const auto o = run(dir, "--config " + (dir / "tiny.ini").string() + " optimize --algorithm ZOA --out-dir " +
                              dir.path().string());
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(std::filesystem::exists(dir / "convergence_ZOA.csv"));
}

TEST(Cli, BenchAndReportAgree) {
  TempDir dir;
  {
    std::ofstream cfg(dir / "tiny.ini");
    cfg << "[optimizer]\npopulation = 6\niterations = 3\n[bench]\nruns = 2\n";
  }
  const std::string common = "--config " + (dir / "tiny.ini").string() + " --algorithms PSO,POA";
  const auto b = run(dir, common + " bench --out-dir " + (dir / "b").string());
  ASSERT_EQ(b.code, 0) << b.err;
  const auto r = run(dir, "report --from " + (dir / "b").string() + " --out-dir " + (dir / "r").string());
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f : {"summary.csv", "sizing.csv", "profitability.csv", "report.json", "convergence_POA.csv"})
    EXPECT_EQ(slurp(dir / "b" / f), slurp(dir / "r" / f)) << f;
}

TEST(Cli, FailuresAreOneJsonLine) {
  TempDir dir;
  expect_single_json_error(run(dir, "simulate --design 1,2,3"), "usage");
  expect_single_json_error(run(dir, "frobnicate"), "usage");
  expect_single_json_error(run(dir, "optimize --algorithm GA --out-dir " + dir.path().string()), "usage");
  expect_single_json_error(run(dir, "simulate --design 1,1,1,0,20,1 --scenario /nonexistent.csv"), "input");
  {
    std::ofstream cfg(dir / "bad.ini");
    cfg << "[site]\nlatitude = 3\n";
  }
  expect_single_json_error(run(dir, "--config " + (dir / "bad.ini").string() + " config"), "config");
  expect_single_json_error(run(dir, "report --from " + dir.path().string()), "input");
}
