#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "qweyl/cli.hpp"

namespace qweyl {
namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "qweyl");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Compares against tests/golden/<name>; QWEYL_UPDATE_GOLDEN=1 rewrites it.
void expect_golden(const std::string& name, const std::string& actual) {
  const std::filesystem::path path = std::filesystem::path(QWEYL_GOLDEN_DIR) / name;
  if (const char* u = std::getenv("QWEYL_UPDATE_GOLDEN"); u && std::string(u) == "1") {
    std::ofstream(path) << actual;
    return;
  }
  ASSERT_TRUE(std::filesystem::exists(path)) << "missing golden file " << path;
  EXPECT_EQ(actual, read_file(path)) << "golden mismatch: " << name;
}

struct GoldenCase {
  std::string file;
  std::vector<std::string> args;
  int code;
};

class Golden : public ::testing::TestWithParam<GoldenCase> {};

TEST_P(Golden, MatchesFile) {
  const GoldenCase& g = GetParam();
  const CliRun r = run(g.args);
  EXPECT_EQ(r.code, g.code) << r.err;
  expect_golden(g.file, r.out);
}

INSTANTIATE_TEST_SUITE_P(
    Reports, Golden,
    ::testing::Values(
        GoldenCase{"expand_beta_order2.tex", {"expand", "beta", "--coord", "1", "--order", "2", "--format", "latex"}, 0},
        GoldenCase{"expand_beta_first_order.tex",
                   {"expand", "beta", "--order", "2", "--denominator", "first-order", "--format", "latex"}, 0},
        GoldenCase{"expand_beta_order0.json", {"expand", "beta", "--coord", "1", "--order", "0", "--format", "json"}, 0},
        GoldenCase{"expand_qpower_coord1.json", {"expand", "qpower", "--coord", "1", "--order", "2", "--format", "json"}, 0},
        GoldenCase{"expand_P_coord3.json", {"expand", "P", "--coord", "3", "--order", "2", "--format", "json"}, 0},
        GoldenCase{"derive_bfield_order1.json", {"derive", "bfield", "--order", "1", "--format", "json"}, 0},
        GoldenCase{"derive_bfield_order2.json", {"derive", "bfield", "--order", "2", "--format", "json"}, 0},
        GoldenCase{"derive_bfield_order2.txt", {"derive", "bfield", "--order", "2"}, 0},
        GoldenCase{"derive_bfield_order2.tex", {"derive", "bfield", "--order", "2", "--format", "latex"}, 0},
        GoldenCase{"derive_gauge_order0.json", {"derive", "gauge", "--order", "0", "--format", "json"}, 0},
        GoldenCase{"verify_aq_series_order2.json", {"verify-aq", "--mode", "series", "--order", "2", "--format", "json"}, 0},
        GoldenCase{"check_spq6.json", {"check-spq6", "--format", "json"}, 0},
        GoldenCase{"check_spq6_q1.json", {"check-spq6", "--q-special", "1", "--format", "json"}, 0},
        GoldenCase{"check_spq6_mutated.json", {"check-spq6", "--mutate-r", "--format", "json"}, 1}),
    [](const auto& info) {
      std::string n = info.param.file;
      for (char& ch : n)
        if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
      return n;
    });

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"verify-aq", "--mode", "numeric", "--theta", "0", "--cutoff", "4"}).code, 0);
  EXPECT_EQ(run({"verify-aq", "--mode", "numeric", "--theta", "0.3", "--cutoff", "5", "--tol", "1e-10"}).code, 0);
  EXPECT_EQ(run({"check-spq6", "--mutate-r"}).code, 1);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"expand", "gamma"}).code, 2);
  EXPECT_EQ(run({"expand", "beta", "--coord", "4"}).code, 2);
  EXPECT_EQ(run({"expand", "beta", "--order", "-1"}).code, 2);
  EXPECT_EQ(run({"verify-aq", "--cutoff", "0"}).code, 2);
  EXPECT_EQ(run({"verify-aq", "--tol", "0"}).code, 2);
  EXPECT_EQ(run({"verify-aq", "--theta", "nan"}).code, 2);
  EXPECT_EQ(run({"oracle-convergence", "--theta", "0"}).code, 2);
  EXPECT_EQ(run({"oracle-convergence", "--theta", "0", "--theta", "0.1"}).code, 2);
  EXPECT_EQ(run({"check-spq6", "--q-special", "0"}).code, 2);
  EXPECT_EQ(run({"check-spq6", "--q-special", "q+"}).code, 2);
  EXPECT_EQ(run({"derive", "bfield", "--format", "pdf"}).code, 2);
}

TEST(Cli, ExpandBetaOrderZeroIsOne) {
  const Json j = Json::parse(run({"expand", "beta", "--coord", "1", "--order", "0", "--format", "json"}).out);
  EXPECT_EQ(j["results"]["operator"], "1");
}

TEST(Cli, SchemaTopLevelKeys) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"verify-aq", "--mode", "series", "--order", "1"},
           {"expand", "X", "--coord", "2", "--order", "1"},
           {"derive", "momentum", "--order", "1"},
           {"check-spq6"},
           {"oracle-convergence", "--order", "1", "--theta", "0.1", "--theta", "0.01"}}) {
    auto a = args;
    a.insert(a.end(), {"--format", "json"});
    const Json j = Json::parse(run(a).out);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    EXPECT_EQ(keys, (std::vector<std::string>{"command", "config", "results", "discrepancies", "pass"}));
    EXPECT_TRUE(j["discrepancies"].is_array());
    EXPECT_TRUE(j["pass"].is_boolean());
  }
}

TEST(Cli, DeterministicOutput) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"verify-aq", "--theta", "0.3", "--theta", "0.05", "--format", "json"},
           {"oracle-convergence", "--format", "json"},
           {"derive", "bfield", "--order", "3", "--format", "json"}}) {
    const std::string first = run(args).out;
    EXPECT_FALSE(first.empty());
    EXPECT_EQ(first, run(args).out);
  }
}

TEST(Cli, ConvergenceSlopes) {
  const Json j = Json::parse(run({"oracle-convergence", "--order", "1", "--order", "2", "--format", "json"}).out);
  ASSERT_EQ(j["results"]["rows"].size(), 12u);
  for (const auto& row : j["results"]["rows"]) {
    const double expected = row["order"].get<int>() + 1;
    EXPECT_NEAR(row["slope"].get<double>(), expected, 0.1) << row["operator"];
  }
  EXPECT_TRUE(j["pass"].get<bool>());
}

TEST(Cli, FirstOrderFieldMatchesReference) {
  const Json j = Json::parse(run({"derive", "bfield", "--order", "1", "--format", "json"}).out);
  for (const auto& c : j["results"]["reference_comparison"]) {
    const std::string name = c["name"];
    if (name.rfind("imaginary_factor", 0) == 0)
      EXPECT_EQ(c["status"], "not-comparable");
    else
      EXPECT_EQ(c["status"], "match") << name;
  }
  EXPECT_TRUE(j["discrepancies"].empty());
}

TEST(Cli, ViewsDeriveFromTheSameReport) {
  const std::vector<std::string> base{"derive", "bfield", "--order", "2"};
  auto with = [&](const char* f) {
    auto a = base;
    a.insert(a.end(), {"--format", f});
    return run(a).out;
  };
  const Json j = Json::parse(with("json"));
  EXPECT_EQ(with("text"), render_text(j));
  EXPECT_EQ(with("latex"), render_latex_report(j));
  for (const auto& b : j["results"]["B_latex"])
    EXPECT_NE(with("latex").find(b.get<std::string>()), std::string::npos);
}

TEST(Cli, OutputDirectoryFromEnvironment) {
  const auto dir = std::filesystem::temp_directory_path() / "qweyl_cli_test";
  std::filesystem::create_directories(dir);
  ::setenv("QWEYL_OUTPUT_DIR", dir.c_str(), 1);
  const CliRun r = run({"expand", "beta", "--order", "1", "--format", "json", "--output", "beta.json"});
  ::unsetenv("QWEYL_OUTPUT_DIR");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  const Json j = Json::parse(read_file(dir / "beta.json"));
  EXPECT_EQ(j["results"]["operator"], "1 + (1/2)*i*theta*x1*d1");
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace qweyl
