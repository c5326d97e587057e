#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "app.hpp"
#include "mlob/impact.hpp"
#include "mlob/report.hpp"
#include "mlob/simgen.hpp"

using namespace mlob;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "mlob");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mlob_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST(Report, Fnv1aKnownVectors) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Report, ManifestIgnoresFlagInsertionOrder) {
  RunManifest a{"analyze", {"x.mlob"}, {{"b", "2"}, {"a", "1"}}, {7}, {}};
  RunManifest b{"analyze", {"x.mlob"}, {{"a", "1"}, {"b", "2"}}, {7}, {}};
  EXPECT_EQ(a.hash_hex(), b.hash_hex());
  b.seeds = {8};
  EXPECT_NE(a.hash_hex(), b.hash_hex());
  EXPECT_EQ(a.hash_hex().size(), 16u);
}

TEST(Report, FixedPrecision) {
  EXPECT_EQ(currency(1.23456), "1.2346");
  EXPECT_EQ(probability(0.5), "0.50000");
  EXPECT_EQ(currency(-0.00001), "0.0000");
}

TEST(Report, CsvWriterChecksWidth) {
  std::ostringstream s;
  {
    CsvWriter w(s, "abc", {"a", "b"});
    w.row({"1", "2"});
    EXPECT_ANY_THROW(w.row({"1"}));
  }
  EXPECT_EQ(lines(s.str())[0], "# manifest=abc");
  EXPECT_EQ(lines(s.str())[1], "a,b");
  EXPECT_EQ(lines(s.str())[2], "1,2");
}

TEST(Report, SvgLeadsWithManifest) {
  PlotSpec spec{"t", "x", "y", true, true, true, "feed"};
  const auto svg = render_svg(spec, {{"s", {1, 10, 100}, {1, 0.3, 0.1}, false}});
  EXPECT_EQ(svg.rfind("<!-- manifest=feed -->", 0), 0u);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST_F(Cli, MissingFileIsFormatError) {
  const auto r = run({"ingest", path("nope.mlob"), "--out-dir", path("o")});
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST_F(Cli, BadHeaderIsFormatError) {
  std::ofstream(path("bad.mlob"), std::ios::binary) << "XXXX\x00\x01";
  EXPECT_EQ(run({"ingest", path("bad.mlob"), "--out-dir", path("o")}).status, 2);
}

TEST_F(Cli, TooFewIncrementsIsStatisticsError) {
  std::ofstream(path("inc.csv")) << "dp,dL\n1,1\n-1,2\n0.5,-1\n";
  EXPECT_EQ(run({"test-adverse", "--increments", path("inc.csv"), "--buckets", "8", "--out-dir", path("o")}).status,
            3);
}

TEST_F(Cli, IllPosedPricingExitCode) {
  EXPECT_EQ(run({"price-option", "--spread-coef", "1.0"}).status, 4);
}

TEST_F(Cli, UnknownOptionIsUsageError) { EXPECT_EQ(run({"simulate", "--bogus"}).status, 1); }

TEST_F(Cli, EmptyTapeGivesHeaderOnlyCsv) {
  write_tape(path("empty.mlob"), std::vector<TapeMessage>{});
  ASSERT_EQ(run({"ingest", path("empty.mlob"), "--out-dir", path("o")}).status, 0);
  const auto l = lines(slurp(path("o/trades.csv")));
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l[0].rfind("# manifest=", 0), 0u);
  EXPECT_EQ(l[1], "n,timestamp_ns,symbol,passive_side,volume,exec_price,pre_mid,pre_spread,delta_L_passive,vwap,cost,"
                  "children");
}

TEST_F(Cli, SimulateAnalyzeDeterministicAndConsistent) {
  ASSERT_EQ(run({"simulate", "--trades", "2000", "--seed", "5", "--out", path("a.mlob")}).status, 0);
  ASSERT_EQ(run({"simulate", "--trades", "2000", "--seed", "5", "--out", path("b.mlob")}).status, 0);
  EXPECT_EQ(slurp(path("a.mlob")), slurp(path("b.mlob")));

  ASSERT_EQ(run({"analyze", path("a.mlob"), "--out-dir", path("o1")}).status, 0);
  ASSERT_EQ(run({"analyze", path("a.mlob"), "--out-dir", path("o1")}).status, 0);
  const auto first = slurp(path("o1/table1.csv"));
  ASSERT_EQ(run({"analyze", path("a.mlob"), "--out-dir", path("o1")}).status, 0);
  EXPECT_EQ(slurp(path("o1/table1.csv")), first);

  SimConfig cfg;
  cfg.n_trades = 2000;
  cfg.seed = 5;
  const auto c = classify_trades(extract_trades(generate_tape(cfg).messages).tape.symbols[0]);
  const auto l = lines(first);
  ASSERT_GE(l.size(), 3u);
  EXPECT_EQ(l[1].rfind("symbol,total,with_impact,without_impact,reverse_impact", 0), 0u);
  const std::string expected = "SIM," + std::to_string(c.total) + "," + std::to_string(c.positive) + "," +
                               std::to_string(c.zero) + "," + std::to_string(c.negative) + ",";
  EXPECT_EQ(l[2].rfind(expected, 0), 0u) << l[2];
  EXPECT_TRUE(fs::exists(path("o1/ledger_SIM.csv")));
  EXPECT_TRUE(fs::exists(path("o1/fig1_SIM.svg")));
}

TEST_F(Cli, SimdFlagDoesNotChangeOutputs) {
  ASSERT_EQ(run({"simulate", "--diffusion", "--rho", "-0.3", "--trades", "4096", "--out", path("inc.csv")}).status, 0);
  ASSERT_EQ(run({"--simd", "scalar", "test-adverse", "--increments", path("inc.csv"), "--out-dir", path("s")}).status,
            0);
  ASSERT_EQ(run({"test-adverse", "--increments", path("inc.csv"), "--out-dir", path("d")}).status, 0);
  const auto a = lines(slurp(path("s/table3.csv")));
  const auto b = lines(slurp(path("d/table3.csv")));
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 1; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
}
