#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "dgc/cli.hpp"
#include "dgc/harness.hpp"

using namespace dgc;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "dgc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dgc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  // Seeded preferential-attachment edge list with sparse, shuffled ids.
  std::string synthetic_edges(std::size_t n, std::size_t attach, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::ostringstream text;
    text << "# synthetic\n";
    for (const auto& e : preferential_attachment_edges(n, attach, rng)) {
      text << e.v * 13 + 1000 << ' ' << e.u * 13 + 1000 << '\n';
    }
    return write("edges.txt", text.str());
  }

  fs::path dir_;
};

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const std::string& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
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

// Count columns (everything after cum_time_ms) of every data row.
std::vector<std::vector<std::string>> count_columns(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 1; i < rows.size(); ++i) out.emplace_back(rows[i].begin() + 5, rows[i].end());
  return out;
}

}  // namespace

TEST_F(CliTest, CountK4) {
  const auto input = write("k4.txt", "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
  const Result r = run_cli({"count", input});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("clique4 1\n"), std::string::npos);
  EXPECT_NE(r.out.find("triangle 4\n"), std::string::npos);
  EXPECT_NE(r.out.find("time_ms "), std::string::npos);
}

TEST_F(CliTest, CountEmptyFile) {
  const Result r = run_cli({"count", write("empty.txt", "")});
  ASSERT_EQ(r.code, 0);
  for (auto name : GraphletCounts::kNames) {
    EXPECT_NE(r.out.find(std::string(name) + " 0\n"), std::string::npos) << name;
  }
}

TEST_F(CliTest, CountMissingFileIsIoError) {
  EXPECT_EQ(run_cli({"count", path("missing.txt")}).code, cli::kExitUsage);
}

TEST_F(CliTest, RunPgdnAndFdgcAgree) {
  const auto input = synthetic_edges(300, 3, 1);
  const Result a = run_cli({"run", input, "--mode", "pgdn", "--batch-size", "10", "--dynamic",
                            "--seed", "4", "--out", path("pgdn.csv")});
  const Result b = run_cli({"run", input, "--mode", "fdgc", "--batch-size", "10", "--dynamic",
                            "--seed", "4", "--out", path("fdgc.csv")});
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0) << b.err;
  const auto pa = read_csv(path("pgdn.csv"));
  const auto fa = read_csv(path("fdgc.csv"));
  EXPECT_EQ(count_columns(pa), count_columns(fa));
  EXPECT_TRUE(fs::exists(path("fdgc.csv") + ".meta.json"));
  EXPECT_NE(slurp(path("fdgc.csv") + ".meta.json").find("\"seed\": 4"), std::string::npos);
}

TEST_F(CliTest, RunReportSchemaAndMonotoneTime) {
  const auto input = synthetic_edges(200, 2, 2);
  ASSERT_EQ(run_cli({"run", input, "--mode", "igc", "--batch-size", "10", "--out", path("r.csv")}).code, 0);
  const auto rows = read_csv(path("r.csv"));
  ASSERT_GT(rows.size(), 2u);
  EXPECT_EQ(slurp(path("r.csv")).substr(0, cli::kReportHeader.size()), cli::kReportHeader);
  double prev = -1.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ASSERT_EQ(rows[i].size(), 13u);
    EXPECT_EQ(rows[i][0], std::to_string(i - 1));
    const double cum = std::stod(rows[i][4]);
    EXPECT_GE(cum, prev);
    prev = cum;
  }
}

TEST_F(CliTest, IgcAndFdgcAgreePerBatchOnInsertOnlyStream) {
  const auto input = synthetic_edges(250, 3, 3);
  ASSERT_EQ(run_cli({"run", input, "--mode", "igc", "--out", path("i.csv")}).code, 0);
  ASSERT_EQ(run_cli({"run", input, "--mode", "fdgc", "--out", path("f.csv")}).code, 0);
  EXPECT_EQ(count_columns(read_csv(path("i.csv"))), count_columns(read_csv(path("f.csv"))));
}

TEST_F(CliTest, BatchSizeChangesRecordsNotFinalCounts) {
  const auto input = synthetic_edges(300, 3, 5);
  ASSERT_EQ(run_cli({"run", input, "--dynamic", "--batch-size", "10", "--out", path("a.csv")}).code, 0);
  ASSERT_EQ(run_cli({"run", input, "--dynamic", "--batch-size", "100", "--out", path("b.csv")}).code, 0);
  const auto a = count_columns(read_csv(path("a.csv")));
  const auto b = count_columns(read_csv(path("b.csv")));
  EXPECT_NE(a.size(), b.size());
  EXPECT_EQ(a.back(), b.back());
}

TEST_F(CliTest, CountColumnsIgnoreThreads) {
  const auto input = synthetic_edges(2500, 4, 6);
  ASSERT_EQ(run_cli({"run", input, "--mode", "pgdn", "--batch-size", "2000", "--threads", "1",
                     "--out", path("t1.csv")}).code, 0);
  ASSERT_EQ(run_cli({"run", input, "--mode", "pgdn", "--batch-size", "2000", "--threads", "4",
                     "--out", path("t4.csv")}).code, 0);
  EXPECT_EQ(count_columns(read_csv(path("t1.csv"))), count_columns(read_csv(path("t4.csv"))));
}

TEST_F(CliTest, IgcRejectsDeletions) {
  const auto input = synthetic_edges(100, 2, 7);
  const Result r = run_cli({"run", input, "--mode", "igc", "--dynamic"});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("insert-only"), std::string::npos);
}

TEST_F(CliTest, RunFromStreamFile) {
  const auto stream = write("s.txt", "+ 1 2\n+ 2 3\n+ 3 4\n- 2 3\n+ 4 1\n");
  const Result r = run_cli({"run", "--stream", stream, "--batch-size", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("batches 3\n"), std::string::npos);
  // Final graph 1-2, 3-4, 1-4: a 4-path.
  EXPECT_NE(r.out.find("path3 1\n"), std::string::npos);
  EXPECT_NE(r.out.find("wedge 2\n"), std::string::npos);
}

TEST_F(CliTest, GenProbabilityOneOnlyAdds) {
  const auto input = synthetic_edges(100, 2, 8);
  ASSERT_EQ(run_cli({"gen", "--input", input, "--p", "1.0", "--out", path("s.txt")}).code, 0);
  std::istringstream lines(slurp(path("s.txt")));
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    EXPECT_EQ(line[0], '+');
    ++count;
  }
  EXPECT_EQ(count, parse_edge_list(fs::path(input)).edges.size());
}

TEST_F(CliTest, GenDefaultsAndDeterminism) {
  const auto input = synthetic_edges(400, 3, 9);
  ASSERT_EQ(run_cli({"gen", "--input", input, "--seed", "3", "--out", path("a.txt")}).code, 0);
  ASSERT_EQ(run_cli({"gen", "--input", input, "--seed", "3", "--out", path("b.txt")}).code, 0);
  EXPECT_EQ(slurp(path("a.txt")), slurp(path("b.txt")));
  // Default p is 0.7.
  const auto expect = gen_dynamic_stream(parse_edge_list(fs::path(input)).edges, 0.7, 3);
  EXPECT_EQ(read_update_stream(fs::path(path("a.txt"))), expect);
}

TEST_F(CliTest, GenInvalidProbability) {
  const auto input = synthetic_edges(50, 2, 10);
  EXPECT_EQ(run_cli({"gen", "--input", input, "--p", "0", "--out", path("x.txt")}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"gen", "--input", input, "--p", "1.5", "--out", path("x.txt")}).code, cli::kExitUsage);
}

TEST_F(CliTest, VerifyDefaultsPass) {
  const Result r = run_cli({"verify"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST_F(CliTest, VerifyInjectedFaultFails) {
  const Result r = run_cli({"verify", "--inject-fault", "--trials", "1"});
  EXPECT_EQ(r.code, cli::kExitVerifyFailed);
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
  EXPECT_FALSE(dgc::testing::derivation_fault());
}

TEST_F(CliTest, VerifyAboveGuardSkipsBrute) {
  const Result r = run_cli({"verify", "--n", "90", "--batches", "10", "--batch-size", "10", "--trials", "1"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("notice:"), std::string::npos);
  EXPECT_NE(r.out.find("brute=skipped"), std::string::npos);
}

TEST_F(CliTest, EnvironmentFallbackAndFlagPrecedence) {
  const auto input = synthetic_edges(100, 2, 11);
  const std::size_t edges = parse_edge_list(fs::path(input)).edges.size();
  ::setenv("DGC_BATCH_SIZE", "7", 1);
  const Result env = run_cli({"run", input});
  const Result flag = run_cli({"run", input, "--batch-size", "50"});
  ::unsetenv("DGC_BATCH_SIZE");
  EXPECT_NE(env.out.find("batches " + std::to_string((edges + 6) / 7) + "\n"), std::string::npos);
  EXPECT_NE(flag.out.find("batches " + std::to_string((edges + 49) / 50) + "\n"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"run", "--mode", "bogus", "x"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"run", "--depth", "4", "x"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"run"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"--help"}).code, cli::kExitOk);
}

TEST_F(CliTest, BinaryExitCodes) {
  const auto input = write("k4.txt", "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
  const std::string bin = DGC_CLI_PATH;
  EXPECT_EQ(std::system((bin + " count " + input + " > /dev/null").c_str()), 0);
  const int status = std::system((bin + " frobnicate > /dev/null 2>&1").c_str());
  EXPECT_EQ(WEXITSTATUS(status), 2);
}
