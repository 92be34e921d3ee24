#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "arte/cli.hpp"
#include "fixtures.hpp"

namespace fs = std::filesystem;
using namespace arte;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "arte");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("arte_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name, std::ios::binary) << text;
    return dir_ / name;
  }

  // Two eligible artists with dimensioned sales every year 2000-2012.
  fs::path transactions() {
    std::string text = fixture::header();
    for (int y = 2000; y <= 2012; ++y) {
      text += fmt::format("Alpha,Work,Oil on canvas,House,{}-05-01,100,100,{},,\n", y,
                          1e6 * std::pow(1.1, y - 2000));
      text += fmt::format("Beta,Work,Bronze,House,{}-06-01,50,40,{},,\n", y,
                          2e6 * std::pow(1.02, y - 2000));
    }
    text += "Gamma,Work,Painting,House,2005-01-01,10,10,900000,,\n";
    text += "Bad,Work,Painting,House,not-a-date,10,10,1,,\n";
    return write("tx.csv", text);
  }

  std::string out_dir() const { return (dir_ / "out").string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, HelpAndUsageErrors) {
  EXPECT_EQ(invoke({"--help"}).code, cli::kExitOk);
  EXPECT_EQ(invoke({}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"ingest", "--bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"ingest", "--out-dir", out_dir()}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"ingest", "--input", (dir_ / "missing.csv").string()}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"backtest", "--input", transactions().string(), "--allocation", "2"}).code,
            cli::kExitUsage);
}

TEST_F(CliTest, IngestWritesFilteredTransactionsAndRejects) {
  const auto r = invoke({"ingest", "--input", transactions().string(), "--out-dir", out_dir()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto tx = slurp(dir_ / "out" / "transactions.csv");
  EXPECT_NE(tx.find("Alpha,Work,Painting"), std::string::npos);
  EXPECT_NE(tx.find("Beta,Work,Sculpture"), std::string::npos);
  EXPECT_EQ(tx.find("Gamma"), std::string::npos);
  EXPECT_EQ(slurp(dir_ / "out" / "rejects.csv"), "line,reason\n29,invalid sale_date\n");
}

TEST_F(CliTest, ReportRanksByIrr) {
  const auto tx = transactions().string();
  EXPECT_EQ(invoke({"report", "--input", tx, "--out-dir", out_dir()}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"report", "--input", tx, "--start-year", "2010", "--end-year", "2005"}).code,
            cli::kExitUsage);
  const auto r = invoke({"report", "--input", tx, "--start-year", "2002", "--end-year", "2012",
                         "--out-dir", out_dir()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto report = slurp(dir_ / "out" / "report.csv");
  EXPECT_EQ(report.substr(0, report.find('\n', report.find('\n') + 1) + 1),
            "artist,avg_price_initial_k,avg_price_final_k,irr_pct,avg_moic\n"
            "Alpha,1210.00,3138.43,10.00,2.5937\n");
  EXPECT_EQ(invoke({"report", "--input", tx, "--start-year", "2030", "--end-year", "2031",
                    "--out-dir", out_dir()})
                .code,
            cli::kExitEmpty);
}

TEST_F(CliTest, IndexAndConfigPrecedence) {
  const auto conf = write("run.conf", "cap = 1\nout_dir = " + (dir_ / "from_conf").string() + "\n");
  const auto tx = transactions().string();
  ASSERT_EQ(invoke({"index", "--input", tx, "--config", conf.string()}).code, cli::kExitOk);
  const auto weights = slurp(dir_ / "from_conf" / "weights.csv");
  EXPECT_EQ(weights.rfind("year,artist,weight_pct\n2000,Alpha,100.00\n2001,Alpha,100.00\n", 0), 0u);
  EXPECT_TRUE(fs::exists(dir_ / "from_conf" / "stats.csv"));

  ASSERT_EQ(invoke({"index", "--input", tx, "--config", conf.string(), "--cap", "5", "--out-dir",
                    out_dir()})
                .code,
            cli::kExitOk);
  EXPECT_NE(slurp(dir_ / "out" / "weights.csv").find("2000,Alpha,33.33\n"), std::string::npos);
  const auto index = slurp(dir_ / "out" / "index.csv");
  EXPECT_EQ(index.rfind("date,level\n2000-01-03,100\n", 0), 0u);

  const auto bad = write("bad.conf", "cap = 0\n");
  EXPECT_EQ(invoke({"index", "--input", tx, "--config", bad.string()}).code, cli::kExitUsage);
  const auto unknown = write("unknown.conf", "colour = red\n");
  EXPECT_EQ(invoke({"index", "--input", tx, "--config", unknown.string()}).code, cli::kExitUsage);
}

TEST_F(CliTest, SynthThenRunAll) {
  const auto spec = write("spec.conf",
                          "seed = 5\nstart_year = 2000\nend_year = 2010\n"
                          "artist = One | 900000 | 0.08 | 0.1 | 3 | 5000\n"
                          "artist = Two | 2000000 | 0.02 | 0.1 | 3 | 8000\n");
  const auto synth_dir = (dir_ / "synth").string();
  ASSERT_EQ(invoke({"synth", "--input", spec.string(), "--out-dir", synth_dir}).code, cli::kExitOk);
  const auto first = slurp(dir_ / "synth" / "synthetic_transactions.csv");
  ASSERT_EQ(invoke({"synth", "--input", spec.string(), "--out-dir", synth_dir}).code, cli::kExitOk);
  EXPECT_EQ(slurp(dir_ / "synth" / "synthetic_transactions.csv"), first);

  const auto r = invoke({"run-all", "--input", synth_dir + "/synthetic_transactions.csv",
                         "--benchmark", synth_dir + "/benchmark.csv", "--window", "60",
                         "--out-dir", out_dir()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  for (auto name : {"transactions.csv", "rejects.csv", "report.csv", "stats.csv", "index.csv",
                    "weights.csv", "fig1_cumulative.csv", "fig2_annual.csv", "fig3_frontier.csv",
                    "summary.txt"}) {
    EXPECT_TRUE(fs::exists(dir_ / "out" / name)) << name;
  }
  EXPECT_NE(r.out.find("frontier.min_volatility_allocation="), std::string::npos);

  // Backtest alone on the written index reproduces the run-all figures.
  const auto bt_dir = (dir_ / "bt").string();
  ASSERT_EQ(invoke({"backtest", "--input", out_dir() + "/index.csv", "--benchmark",
                    synth_dir + "/benchmark.csv", "--window", "60", "--out-dir", bt_dir})
                .code,
            cli::kExitOk);
  EXPECT_EQ(slurp(dir_ / "bt" / "fig3_frontier.csv"), slurp(dir_ / "out" / "fig3_frontier.csv"));
}

TEST_F(CliTest, OutDirFromEnvironment) {
  const auto env_dir = (dir_ / "env").string();
  ::setenv("ARTE_OUT_DIR", env_dir.c_str(), 1);
  const auto r = invoke({"ingest", "--input", transactions().string()});
  ::unsetenv("ARTE_OUT_DIR");
  ASSERT_EQ(r.code, cli::kExitOk);
  EXPECT_TRUE(fs::exists(dir_ / "env" / "transactions.csv"));
}
