#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"

using namespace endorank;
using namespace endorank::testing;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  const auto o = run_cli(args);
  EXPECT_EQ(o.code, 0) << o.err;
  return Json::parse(o.out);
}

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << content;
  return path;
}

TEST(Cli, RankOfCounterexample) {
  const auto j = run_json({"rank", "-f", data_path("gf2_counterexample.endo")});
  EXPECT_EQ(j["rank"], 2);
  EXPECT_EQ(j["method"], "elimination");
  EXPECT_EQ(j["schema"], 1);
}

TEST(Cli, ChainOfCounterexample) {
  const auto j = run_json({"chain", "-f", data_path("gf2_counterexample.endo"), "--seed", "1"});
  EXPECT_EQ(j["length"], 2);
  EXPECT_EQ(j["step_kinds"][0], "power");
  EXPECT_EQ(j["seed"], 1);
}

TEST(Cli, KronBaseOfNonBaseSubbase) {
  const auto j = run_json({"kron-base", "-f", data_path("nonbase_subbase.kron")});
  EXPECT_EQ(j["is_base"], false);
  EXPECT_EQ(j["failing_generator_membership"], "x1");
}

TEST(Cli, OtherCommands) {
  EXPECT_EQ(run_json({"kron-verify", "-f", data_path("nonbase_subbase.kron")})["is_subbase"], true);
  EXPECT_EQ(run_json({"kron-classify", "-f", data_path("standard3_gf3.kron")})["representation"], "nonsingular");
  EXPECT_EQ(run_json({"compare", "-f", data_path("cusp.endo"), "-f", data_path("shear.endo")})["relation"],
            "strictly_below");
  EXPECT_EQ(run_json({"invert", "-f", data_path("shear.endo")})["inverse"][0], "-x2^2 + x1");
  EXPECT_EQ(run_json({"invert", "-f", data_path("cusp.endo")})["invertible"], false);
  const auto conj = run_json({"conj", "-a", data_path("swap_frob_gf4.aut"), "-f", data_path("mixed_gf4.endo")});
  EXPECT_EQ(conj["rank_before"], conj["rank_after"]);
  const auto norm = run_json({"kron-normalize", "-f", data_path("conjugated_q.kron")});
  EXPECT_EQ(norm["normalized"][1], "7*x2 - 2");
  EXPECT_EQ(run_json({"rank", "-f", data_path("cusp.endo"), "--method", "jacobian"})["rank"], 1);
}

TEST(Cli, TextReports) {
  const auto o = run_cli({"chain", "-f", data_path("gf2_counterexample.endo")});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("chain of length 2 (verified)"), std::string::npos) << o.out;
  const auto b = run_cli({"kron-base", "-f", data_path("nonbase_subbase.kron")});
  EXPECT_NE(b.out.find("not a base"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli({"rank", "-f", "/nonexistent.endo"}).code, 1);
  EXPECT_EQ(run_cli({"rank", "-f", data_path("cusp.endo"), "--bogus"}).code, 1);
  EXPECT_EQ(run_cli({"rank", "-f", data_path("cusp.endo"), "--method", "magic"}).code, 1);
  EXPECT_EQ(run_cli({"rank", "-f", data_path("cusp.endo"), "--format", "xml"}).code, 1);
  EXPECT_EQ(run_cli({"chain", "-f", data_path("cusp.endo"), "--r-max", "0"}).code, 1);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
  EXPECT_EQ(run_cli({}).code, 1);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
  EXPECT_EQ(run_cli({"rank", "-f", data_path("frobenius_gf2.endo"), "--method", "jacobian"}).code, 1);
  const auto syntax = run_cli({"rank", "-f", temp_file("bad.endo", "field Q\nvars 1\nx1 -> x1 +\n")});
  EXPECT_EQ(syntax.code, 1);
  EXPECT_NE(syntax.err.find("line 3"), std::string::npos) << syntax.err;
  // A budget of one reduction cannot finish any elimination.
  const auto tight = run_cli({"rank", "-f", data_path("gf2_counterexample.endo"), "--budget", "1"});
  EXPECT_EQ(tight.code, 2) << tight.err;
}

TEST(Cli, BudgetFromEnvironment) {
  ::setenv("ENDORANK_BUDGET", "1", 1);
  const int tight = run_cli({"rank", "-f", data_path("gf2_counterexample.endo")}).code;
  const int flag_wins = run_cli({"rank", "-f", data_path("gf2_counterexample.endo"), "--budget", "1000000"}).code;
  ::setenv("ENDORANK_BUDGET", "banana", 1);
  const int bad = run_cli({"rank", "-f", data_path("gf2_counterexample.endo")}).code;
  ::unsetenv("ENDORANK_BUDGET");
  EXPECT_EQ(tight, 2);
  EXPECT_EQ(flag_wins, 0);
  EXPECT_EQ(bad, 1);
}

TEST(Cli, EmittedCertificatesReplay) {
  const std::vector<std::vector<std::string>> commands{
      {"rank", "-f", data_path("gf2_counterexample.endo")},
      {"chain", "-f", data_path("gf2_counterexample.endo"), "--seed", "1"},
      {"compare", "-f", data_path("cusp.endo"), "-f", data_path("shear.endo")},
      {"kron-verify", "-f", data_path("nonbase_subbase.kron")},
      {"kron-classify", "-f", data_path("standard3_gf3.kron")},
      {"kron-base", "-f", data_path("nonbase_subbase.kron")},
      {"kron-base", "-f", data_path("standard3_gf3.kron")},
      {"kron-normalize", "-f", data_path("conjugated_q.kron")},
      {"conj", "-a", data_path("swap_frob_gf4.aut"), "-f", data_path("mixed_gf4.endo")},
      {"invert", "-f", data_path("shear.endo")},
  };
  int i = 0;
  for (auto args : commands) {
    args.insert(args.end(), {"--format", "json"});
    const auto o = run_cli(args);
    ASSERT_EQ(o.code, 0) << args[0] << ": " << o.err;
    const auto path = temp_file("report" + std::to_string(i++) + ".json", o.out);
    const auto v = run_json({"verify", "-f", path});
    EXPECT_EQ(v["ok"], true) << args[0] << " " << v.dump();
  }
}

TEST(Cli, TamperedReportIsRejected) {
  auto report = run_json({"rank", "-f", data_path("gf2_counterexample.endo")});
  report["certificate"]["rank"] = 1;
  const auto path = temp_file("tampered.json", report.dump());
  const auto o = run_cli({"verify", "-f", path, "--format", "json"});
  EXPECT_EQ(o.code, 1);
  EXPECT_EQ(Json::parse(o.out)["ok"], false);
}

TEST(Cli, DeterministicJson) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"chain", "-f", data_path("gf2_counterexample.endo"), "--seed", "7", "--format", "json"},
           {"selftest", "--format", "json", "--seed", "3"},
           {"rank", "-f", data_path("mixed_gf4.endo"), "--format", "json"}}) {
    const auto a = run_cli(args), b = run_cli(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, SelftestPasses) {
  const auto o = run_cli({"selftest"});
  EXPECT_EQ(o.code, 0) << o.out;
  EXPECT_NE(o.out.find("all checks pass"), std::string::npos);
  for (const auto& row : cli::run_selftest({}, 0)) EXPECT_TRUE(row.pass) << row.check << ": " << row.observed;
}

}  // namespace

#include "golden.hpp"

namespace {

TEST(Cli, GoldenFiles) {
  const auto cases = load_golden_manifest(ENDORANK_GOLDEN_DIR, ENDORANK_TEST_DATA);
  ASSERT_GE(cases.size(), 8u);
  for (const auto& c : cases) {
    const auto o = run_cli(c.args);
    ASSERT_EQ(o.code, 0) << c.name << ": " << o.err;
    EXPECT_EQ(o.out, read_file(std::string(ENDORANK_GOLDEN_DIR) + "/" + c.name + ".json")) << c.name;
  }
}

}  // namespace
