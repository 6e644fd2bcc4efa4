#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "ampo");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = ampo::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const CliRun& r) { return nlohmann::json::parse(r.out); }

std::vector<std::vector<std::string>> split_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto p = std::filesystem::temp_directory_path() / ("ampo_cli_test_" + name);
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

}  // namespace

TEST(CliPrice, PutAtReferenceParams) {
  const CliRun r = run({"price", "--kind", "put", "--spot", "100", "--strike", "100", "--rate", "0.05",
                     "--vol", "0.5", "--amort", "0.1", "--output", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto row = json_of(r)["rows"][0];
  EXPECT_NEAR(row["premium"].get<double>(), 25.0, 1e-12);
  EXPECT_NEAR(row["boundary"].get<double>(), 50.0, 1e-12);
  EXPECT_EQ(row["regime"], "continuation");
}

TEST(CliPrice, ExerciseRegionCall) {
  const CliRun r = run({"price", "--kind", "call", "--spot", "300", "--output", "json"});
  ASSERT_EQ(r.code, 0);
  const auto row = json_of(r)["rows"][0];
  EXPECT_EQ(row["regime"], "exercise_now");
  EXPECT_DOUBLE_EQ(row["premium"].get<double>(), 200.0);
}

TEST(CliPrice, ZeroVolIsArgumentError) {
  const CliRun r = run({"price", "--vol", "0"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("vol must be > 0"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST(CliArgs, MalformedInputs) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"price", "--spot", "abc"}).code, 2);
  EXPECT_EQ(run({"price", "--kind", "straddle"}).code, 2);
  EXPECT_EQ(run({"price", "--output", "xml"}).code, 2);
  EXPECT_EQ(run({"examples", "4"}).code, 2);
  EXPECT_EQ(run({"examples"}).code, 2);
  EXPECT_EQ(run({"optimize", "--q-steps", "50"}).code, 2);
  EXPECT_EQ(run({"statics", "--spot", "300"}).code, 2);
  EXPECT_EQ(run({"price", "--config", "/nonexistent/ampo.cfg"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(CliGreeks, PutAndCall) {
  const CliRun put = run({"greeks", "--kind", "put", "--output", "json"});
  ASSERT_EQ(put.code, 0);
  const auto p = json_of(put)["rows"][0];
  EXPECT_NEAR(p["delta"].get<double>(), -0.25, 1e-14);
  EXPECT_NEAR(p["gamma"].get<double>(), 0.005, 1e-16);
  EXPECT_NEAR(p["theta_economic"].get<double>(), -2.5, 1e-13);
  EXPECT_EQ(p["theta_explicit"].get<double>(), 0.0);

  const auto c = json_of(run({"greeks", "--kind", "call", "--output", "json"}))["rows"][0];
  EXPECT_NEAR(c["vega"].get<double>(), 50.26319190344170, 1e-9);
  const auto pp =
      json_of(run({"greeks", "--kind", "call", "--vega-per-point", "--output", "json"}))["rows"][0];
  EXPECT_NEAR(pp["vega"].get<double>(), 0.5026319190344170, 1e-11);

  const auto x = json_of(run({"greeks", "--kind", "call", "--spot", "300", "--output", "json"}))["rows"][0];
  EXPECT_EQ(x["delta"].get<double>(), 1.0);
  EXPECT_EQ(x["gamma"].get<double>(), 0.0);
  EXPECT_EQ(x["vega"].get<double>(), 0.0);
}

TEST(CliStatics, CallAtReferenceParams) {
  const CliRun r = run({"statics", "--kind", "call", "--output", "json"});
  ASSERT_EQ(r.code, 0);
  const auto row = json_of(r)["rows"][0];
  EXPECT_NEAR(row["d_premium_dq"].get<double>(), -104.7149831321702, 1e-9);
  EXPECT_NEAR(row["d2_premium_dsigma_dq"].get<double>(), -80.48604147931042, 1e-9);
}

TEST(CliExamples, MatchGoldenFiles) {
  for (int id : {1, 2, 3}) {
    const CliRun r = run({"examples", std::to_string(id), "--output", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto golden =
        split_csv(read_file(std::filesystem::path(AMPO_GOLDEN_DIR) / ("example" + std::to_string(id) + ".csv")));
    const auto got = split_csv(r.out);
    ASSERT_EQ(got.size(), golden.size()) << id;
    EXPECT_EQ(got[0], golden[0]) << id;
    for (size_t i = 1; i < got.size(); ++i) {
      ASSERT_EQ(got[i].size(), golden[i].size());
      for (size_t j = 0; j < got[i].size(); ++j) {
        const double a = std::stod(got[i][j]), b = std::stod(golden[i][j]);
        EXPECT_LE(std::abs(a - b), 1e-12 * std::abs(b)) << id << " row " << i << " col " << j;
      }
    }
  }
}

TEST(CliExamples, ByteIdenticalAcrossRuns) {
  for (const char* id : {"1", "2", "3"}) {
    const CliRun a = run({"examples", id, "--output", "csv"});
    const CliRun b = run({"examples", id, "--output", "csv"});
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.find('\r'), std::string::npos);
    EXPECT_EQ(a.out.back(), '\n');
  }
}

TEST(CliExamples, HeadlineNumbers) {
  const auto e1 = split_csv(run({"examples", "1", "--q-max", "1", "--output", "csv"}).out);
  EXPECT_EQ(e1[0], (std::vector<std::string>{"q", "T", "effective_notional"}));
  EXPECT_GT(std::stod(e1.back()[2]), 0.65);

  const auto e2 = split_csv(run({"examples", "2", "--q-max", "1", "--output", "csv"}).out);
  EXPECT_EQ(e2[0], (std::vector<std::string>{"q", "gamma_ratio", "theta_ratio"}));
  EXPECT_LT(std::stod(e2.back()[1]), 0.80);
  EXPECT_LT(std::stod(e2.back()[2]), 0.75);

  const auto e3 = split_csv(run({"examples", "3", "--output", "csv"}).out);
  EXPECT_EQ(e3[0], (std::vector<std::string>{"q", "call", "put", "straddle"}));
  size_t best = 1;
  for (size_t i = 2; i < e3.size(); ++i) {
    if (std::stod(e3[i][2]) > std::stod(e3[best][2])) best = i;
  }
  EXPECT_NEAR(std::stod(e3[best][0]), 0.1426, 0.01);
}

TEST(CliOptimize, PutOptimum) {
  const auto row = json_of(run({"optimize", "--strategy", "put", "--output", "json"}))["rows"][0];
  EXPECT_NEAR(row["q_star"].get<double>(), 0.1426, 5e-4);
  EXPECT_EQ(row["status"], "interior");
  const auto edge = json_of(run({"optimize", "--strategy", "put", "--q-min", "0.5", "--q-max", "1",
                                 "--output", "json"}))["rows"][0];
  EXPECT_EQ(edge["status"], "boundary_maximum");
  EXPECT_DOUBLE_EQ(edge["q_star"].get<double>(), 0.5);
}

TEST(CliJson, RoundTripIsIdentity) {
  const std::vector<std::vector<std::string>> commands{
      {"price", "--kind", "put", "--rate", "0.0371", "--vol", "0.3333333333333333"},
      {"greeks", "--kind", "call", "--spot", "87.1", "--vega-per-point"},
      {"statics", "--kind", "put", "--amort", "0.27"},
      {"examples", "2", "--q-steps", "7"},
      {"examples", "3", "--q-steps", "5", "--budget", "250"},
      {"optimize", "--strategy", "straddle"},
      {"price", "--convention", "minus-half", "--kind", "put"},
  };
  int n = 0;
  for (auto args : commands) {
    args.insert(args.end(), {"--output", "json"});
    const CliRun first = run(args);
    ASSERT_EQ(first.code, 0) << first.err;
    const auto path = temp_file("rt" + std::to_string(n++) + ".json", first.out);
    std::vector<std::string> again{args[0]};
    if (args[0] == "examples") again.push_back(args[1]);
    again.insert(again.end(), {"--config", path.string(), "--output", "json"});
    const CliRun second = run(again);
    ASSERT_EQ(second.code, 0) << second.err;
    EXPECT_EQ(first.out, second.out) << args[0];
    std::filesystem::remove(path);
  }
}

TEST(CliConfig, KeyValueFileMergedUnderFlags) {
  const auto path = temp_file("kv.cfg", "# reference put\nkind = put\nspot = 80\noutput = json\n");
  const auto from_file = json_of(run({"price", "--config", path.string()}))["rows"][0];
  EXPECT_NEAR(from_file["premium"].get<double>(), 31.25, 1e-12);
  const auto flag_wins =
      json_of(run({"price", "--config", path.string(), "--spot", "100"}))["rows"][0];
  EXPECT_NEAR(flag_wins["premium"].get<double>(), 25.0, 1e-12);
  std::filesystem::remove(path);
}

TEST(CliConfig, OutputEnvironmentDefault) {
  ::setenv("AMPO_OUTPUT", "csv", 1);
  const CliRun env = run({"price"});
  const CliRun flag = run({"price", "--output", "table"});
  ::unsetenv("AMPO_OUTPUT");
  EXPECT_EQ(env.out.rfind("kind,regime,premium,boundary,alpha_c,alpha_p,alpha_bar\n", 0), 0u);
  EXPECT_EQ(flag.out.rfind("kind  regime", 0), 0u);
}

TEST(CliTable, RoundsToSixDigits) {
  const CliRun r = run({"price", "--output", "table"});
  EXPECT_NE(r.out.find("34.6975"), std::string::npos);
  EXPECT_EQ(r.out.find("34.69754"), std::string::npos);
}

TEST(CliCsv, FullPrecision) {
  const auto rows = split_csv(run({"price", "--output", "csv"}).out);
  EXPECT_EQ(rows[1][2], "34.697547420670624");
}

TEST(CliValidate, MinusHalfConventionPasses) {
  const CliRun r = run({"validate", "--kind", "put", "--convention", "minus-half"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
}

TEST(CliValidate, PlusHalfExponentsFailOracleWhenRatePositive) {
  const CliRun r = run({"validate", "--kind", "put"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("pde_residual"), std::string::npos);
  EXPECT_NE(r.err.find("lattice_price"), std::string::npos);
}

TEST(CliValidate, PlusHalfExponentsPassAtZeroRate) {
  const CliRun r = run({"validate", "--kind", "call", "--rate", "0", "--vol", "0.3", "--amort", "0.2"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
}

TEST(CliValidate, UnderResolvedLatticeFails) {
  const CliRun r = run({"validate", "--kind", "put", "--convention", "minus-half", "--steps", "200",
                     "--tolerance", "1e-4"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("lattice_convergence"), std::string::npos);
}

TEST(CliValidate, InjectedPerturbationTripsResidual) {
  const CliRun r = run({"validate", "--kind", "put", "--convention", "minus-half",
                     "--inject-perturbation", "1e-6", "--output", "json"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("pde_residual"), std::string::npos);
  for (const auto& row : json_of(r)["rows"]) {
    EXPECT_EQ(row["passed"].get<bool>(), row["check"] != "pde_residual") << row["check"];
  }
}
