#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "msign/cli.hpp"

namespace msign {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(MSIGN_DATA_DIR) + "/" + name; }

nlohmann::json run_json(std::vector<std::string> args) {
  args.push_back("--json");
  const Result r = run_cli(args);
  return nlohmann::json::parse(r.out);
}

TEST(Cli, MutualCouplingFailsWithCycle) {
  const Result r = run_cli({"check", "--input", data("m1.txt"), "--json"});
  EXPECT_EQ(r.code, cli::kFails);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["verdict"], "fails");
  EXPECT_EQ(j["witnesses"]["cycle"], nlohmann::json::array({0, 1, 0}));
  EXPECT_EQ(j["command"], "check");
  EXPECT_EQ(j["inputs"][0]["name"], "M1");
}

TEST(Cli, NonMetzlerIsDataError) {
  const Result r = run_cli({"check", "--input", data("m2.txt")});
  EXPECT_EQ(r.code, cli::kDataError);
  EXPECT_NE(r.err.find("not Metzler"), std::string::npos);
}

TEST(Cli, MixedFirstCouplingHolds) {
  EXPECT_EQ(run_cli({"mixed", "--input", data("mixed_variant1.txt")}).code, cli::kHolds);
  EXPECT_EQ(run_cli({"mixed", "--input", data("mixed_variant2.txt")}).code, cli::kFails);
  EXPECT_EQ(run_cli({"mixed", "--input", data("mixed_single.txt")}).code, cli::kHolds);
}

TEST(Cli, ExitCodesPerCommand) {
  EXPECT_EQ(run_cli({"check", "--input", data("chain3.txt"), "--full-check"}).code, cli::kHolds);
  EXPECT_EQ(run_cli({"potential", "--input", data("m1.txt")}).code, cli::kHolds);
  EXPECT_EQ(run_cli({"schur", "--input", data("schur_nilpotent.txt")}).code, cli::kHolds);
  EXPECT_EQ(run_cli({"inverse", "--input", data("chain3.txt")}).code, cli::kHolds);
  EXPECT_EQ(run_cli({"witness", "--input", data("m1.txt")}).code, cli::kFails);
  EXPECT_EQ(run_cli({"sample", "--input", data("chain3.txt"), "--seed", "4"}).code, cli::kHolds);
  EXPECT_EQ(run_cli({"kerb", "--input", data("kerb_yes.txt")}).code, cli::kHolds);
  EXPECT_EQ(run_cli({"kerb", "--input", data("kerb_unknown.txt")}).code, cli::kUnknown);
  EXPECT_EQ(run_cli({"block", "--input", data("block_example.txt")}).code, cli::kHolds);
  EXPECT_EQ(run_cli({"block", "--input", data("block_example_modified.txt")}).code, cli::kFails);
  EXPECT_EQ(run_cli({"block", "--input", data("block_example.txt"), "--variant", "product"}).code,
            cli::kHolds);
  EXPECT_EQ(run_cli({"hull", "--input", data("hull_holds.txt"), "--full-check"}).code, cli::kHolds);
  EXPECT_EQ(run_cli({"hull", "--input", data("hull_fails.txt")}).code, cli::kFails);
  EXPECT_EQ(run_cli({"app", "delay-ct", "--input", data("delay_ct.txt")}).code, cli::kHolds);
  EXPECT_EQ(run_cli({"app", "delay-dt", "--input", data("delay_dt.txt")}).code, cli::kHolds);
  EXPECT_EQ(run_cli({"app", "switched", "--input", data("hull_holds.txt")}).code, cli::kHolds);
  EXPECT_EQ(run_cli({"app", "impulsive", "--input", data("impulsive.txt")}).code, cli::kHolds);
  EXPECT_EQ(run_cli({"app", "nonlinear", "--input", data("nonlinear.txt")}).code, cli::kHolds);
  EXPECT_EQ(run_cli({"app", "ergodic", "--input", data("ergodic_yes.txt"), "--irreducible"}).code,
            cli::kHolds);
  EXPECT_EQ(run_cli({"app", "ergodic", "--input", data("ergodic_unknown.txt")}).code, cli::kUnknown);
}

TEST(Cli, UsageAndInputErrors) {
  EXPECT_EQ(run_cli({}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"check"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"bogus"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"--help"}).code, cli::kHolds);
  EXPECT_EQ(run_cli({"check", "--input", data("does_not_exist.txt")}).code, cli::kNoInput);
}

TEST(Cli, ParseErrorCarriesLine) {
  const fs::path p = fs::temp_directory_path() / "msign_ragged.txt";
  std::ofstream(p) << "@C\n- + 0\n0 -\n";
  const Result r = run_cli({"check", "--input", p.string()});
  EXPECT_EQ(r.code, cli::kDataError);
  EXPECT_NE(r.err.find("line 3"), std::string::npos);
  fs::remove(p);
}

TEST(Cli, JsonIsByteStable) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"kerb", "--input", data("kerb_yes.txt"), "--seed", "17", "--json"},
           {"app", "switched", "--input", data("hull_holds.txt"), "--seed", "3", "--json"},
           {"sample", "--input", data("m1.txt"), "--samples", "4", "--json"}}) {
    const Result a = run_cli(args), b = run_cli(args);
    EXPECT_EQ(a.out, b.out);
    EXPECT_FALSE(a.out.empty());
  }
}

TEST(Cli, ReportHasSchemaKeys) {
  const auto j = run_json({"hull", "--input", data("hull_holds.txt")});
  for (const char* key : {"command", "inputs", "verdict", "statements", "certificates", "witnesses",
                          "diagnostics", "version"})
    EXPECT_TRUE(j.contains(key)) << key;
}

TEST(Cli, DotExport) {
  const fs::path p = fs::temp_directory_path() / "msign_m1.dot";
  EXPECT_EQ(run_cli({"check", "--input", data("m1.txt"), "--dot", p.string()}).code, cli::kFails);
  std::ifstream in(p);
  const std::string dot((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_NE(dot.find("0 -> 1;"), std::string::npos);
  EXPECT_NE(dot.find("1 -> 0;"), std::string::npos);
  fs::remove(p);
  EXPECT_EQ(run_cli({"check", "--input", data("m1.txt"), "--dot", "/nonexistent/dir/x.dot"}).code,
            cli::kCantCreate);
}

}  // namespace
}  // namespace msign
