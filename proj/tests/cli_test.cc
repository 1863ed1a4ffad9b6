#include <cstring>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "graphenergy/cli.hpp"
#include "graphenergy/serialize.hpp"

namespace ge = graphenergy;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"graphenergy"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  const int code = ge::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

/// Column `name` of the single data row under a CSV header.
std::string csv_value(const std::string& text, const std::string& name, std::size_t row = 1) {
  const auto ls = lines(text);
  const auto header = ge::parse_csv_line(ls.at(0));
  const auto fields = ge::parse_csv_line(ls.at(row));
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return fields.at(i);
  ADD_FAILURE() << "no column " << name;
  return {};
}

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("graphenergy_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }

  std::string write(const std::string& name, const std::string& content) const {
    const auto p = path_ / name;
    std::ofstream(p) << content;
    return p.string();
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST(CliPredict, UnweightedLawValue) {
  const auto r = run_cli({"predict", "--index", "ag1", "--n", "1000", "--p", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(std::stod(csv_value(r.out, "predicted_t3")), 13421.123227863209, 1e-9);
  EXPECT_EQ(csv_value(r.out, "predicted_t3"), csv_value(r.out, "predicted_cor"));
}

TEST(CliPredict, GeneralRandicSpecializesToRandic) {
  const auto g = run_cli({"predict", "--index", "general_randic", "--alpha", "-0.5", "--n", "100", "--p", "0.5"});
  const auto r = run_cli({"predict", "--index", "randic", "--n", "100", "--p", "0.5"});
  ASSERT_EQ(g.code, 0) << g.err;
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* col : {"predicted_t3", "predicted_cor", "center_value"})
    EXPECT_NEAR(std::stod(csv_value(g.out, col)), std::stod(csv_value(r.out, col)), 1e-12) << col;
}

TEST(CliPredict, ArgmaxAzi) {
  const auto r = run_cli({"predict", "--index", "azi", "--argmax-p"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(std::stod(csv_value(r.out, "p_star")), 0.875, 1e-5);
  EXPECT_EQ(csv_value(r.out, "trend"), "interior_maximum");
}

TEST(CliPredict, SumConnectivityReportsDisplayedConstant) {
  const auto r = run_cli({"predict", "--index", "sci", "--n", "1000", "--p", "0.5", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  const auto& row = j.is_array() ? j.at(0) : j;
  EXPECT_NEAR(row.at("paper_displayed").get<double>() * 2.0, row.at("predicted_cor").get<double>(), 1e-9);
}

TEST(CliPredict, InvalidFlagsExitTwoNamingTheFlag) {
  auto r = run_cli({"predict", "--index", "wiener", "--n", "10", "--p", "0.5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("index"), std::string::npos);

  r = run_cli({"predict", "--index", "unit", "--n", "10", "--p", "1.5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--p"), std::string::npos);

  r = run_cli({"predict", "--index", "unit", "--n", "ten", "--p", "0.5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--n"), std::string::npos);

  r = run_cli({"predict", "--index", "unit", "--n", "10", "--p", "0.5", "--format", "xml"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--format"), std::string::npos);

  r = run_cli({"predict", "--index", "unit", "--bogus"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(run_cli({}).code, 2);
}

TEST(CliEnergy, TwoVertexGraph) {
  const auto a = run_cli({"energy", "--n", "2", "--p", "0.5", "--index", "unit", "--seed", "7"});
  ASSERT_EQ(a.code, 0) << a.err;
  const double e = std::stod(csv_value(a.out, "energy"));
  EXPECT_TRUE(e == 0.0 || std::abs(e - 2.0) < 1e-12) << e;
  const auto b = run_cli({"energy", "--n", "2", "--p", "0.5", "--index", "unit", "--seed", "7"});
  EXPECT_EQ(csv_value(a.out, "energy"), csv_value(b.out, "energy"));
}

TEST(CliEnergy, DomainFailureOnFixtureExitsThree) {
  TempDir dir;
  const auto path = dir.write("azi.edges", "5 3\n0 1\n2 3\n3 4\n");
  const auto r = run_cli({"energy", "--graph", path.c_str(), "--p", "0.4", "--index", "azi"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("0-1"), std::string::npos);
  EXPECT_NE(csv_value(r.out, "status").find("failed"), std::string::npos);
}

TEST(CliEnergy, EsdDumpAndJson) {
  TempDir dir;
  const auto esd_path = dir.file("esd.txt");
  const auto r = run_cli({"energy", "--n", "30", "--p", "0.5", "--index", "randic", "--format", "json", "--esd-out",
                          esd_path.c_str()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("n").get<int>(), 30);
  EXPECT_EQ(j.at("status").get<std::string>(), "ok");
  std::ifstream in(esd_path);
  std::vector<double> xs;
  for (double x; in >> x;) xs.push_back(x);
  ASSERT_EQ(xs.size(), 30u);
  EXPECT_TRUE(std::is_sorted(xs.begin(), xs.end()));
}

TEST(CliEnergy, BadGraphFileExitsTwo) {
  TempDir dir;
  const auto path = dir.write("bad.edges", "3 1\n2 1\n");
  EXPECT_EQ(run_cli({"energy", "--graph", path.c_str(), "--index", "unit"}).code, 2);
  EXPECT_EQ(run_cli({"energy", "--graph", dir.file("missing").c_str(), "--index", "unit"}).code, 2);
}

TEST(CliEsd, CsvRowsPerEigenvalue) {
  const auto r = run_cli({"esd", "--n", "40", "--p", "0.3", "--index", "unit", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out).size(), 41u);
  EXPECT_EQ(csv_value(r.out, "esd", 40), "1");
  EXPECT_NE(r.err.find("ks="), std::string::npos);
}

TEST(CliSweep, SingleCellRowCounts) {
  const auto r = run_cli({"sweep", "--n", "30", "--p", "0.5", "--index", "unit", "--trials", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 5u);
  EXPECT_EQ(ge::parse_csv_line(ls[0]), ge::record_columns());
  EXPECT_TRUE(ls[2].empty());
  EXPECT_EQ(ge::parse_csv_line(ls[3]), ge::summary_columns());
}

TEST(CliSweep, SummaryOrderedByN) {
  const auto r = run_cli({"sweep", "--n", "60,20,40", "--p", "0.5", "--index", "randic", "--trials", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 1u + 6u + 1u + 1u + 3u);
  EXPECT_EQ(ge::parse_csv_line(ls[9])[0], "20");
  EXPECT_EQ(ge::parse_csv_line(ls[10])[0], "40");
  EXPECT_EQ(ge::parse_csv_line(ls[11])[0], "60");
}

TEST(CliSweep, ConfigFileAndFlagOverrides) {
  TempDir dir;
  const auto cfg = dir.write("sweep.cfg",
                             "# small sweep\n"
                             "n = 20, 30\n"
                             "p = 0.5\n"
                             "index = unit, general_randic(0.5)\n"
                             "trials = 2\n"
                             "seed = 11\n"
                             "moments = 2\n"
                             "ks = false\n");
  const auto r = run_cli({"sweep", "--config", cfg.c_str()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out).size(), 1u + 8u + 1u + 1u + 4u);
  EXPECT_EQ(csv_value(r.out, "alpha", 3), "0.5");
  EXPECT_EQ(csv_value(r.out, "ks", 1), "");
  EXPECT_EQ(csv_value(r.out, "m4", 1), "");

  const auto o = run_cli({"sweep", "--config", cfg.c_str(), "--n", "25", "--trials", "1"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(csv_value(o.out, "n", 1), "25");
  EXPECT_EQ(lines(o.out).size(), 1u + 2u + 1u + 1u + 2u);
}

TEST(CliSweep, MalformedConfigExitsTwoWithoutOutput) {
  TempDir dir;
  for (const char* text : {"n = 20\np = 0.5\nindex = unit\ntrials = many\n", "n 20\n", "n = 20\np = 0.5\n",
                           "n = 20\np = 2\nindex = unit\n", "n = 20\np = 0.5\nindex = unit\ncolour = red\n"}) {
    const auto cfg = dir.write("bad.cfg", text);
    const auto r = run_cli({"sweep", "--config", cfg.c_str()});
    EXPECT_EQ(r.code, 2) << text;
    EXPECT_TRUE(r.out.empty()) << text;
    EXPECT_FALSE(r.err.empty());
  }
  const auto cfg = dir.write("line.cfg", "n = 20\n\np = zero\n");
  EXPECT_NE(run_cli({"sweep", "--config", cfg.c_str()}).err.find("line 3"), std::string::npos);
}

TEST(CliSweep, TooManyFailuresExitThree) {
  const auto r = run_cli({"sweep", "--n", "12", "--p", "0.15", "--index", "azi", "--trials", "30"});
  EXPECT_EQ(r.code, 3);
  EXPECT_FALSE(r.out.empty());
}

TEST(CliSweep, IdenticalRunsMatchExceptTiming) {
  auto strip = [](const std::string& text) {
    std::string out;
    for (const auto& line : lines(text)) {
      auto f = ge::parse_csv_line(line);
      if (f.size() == ge::record_columns().size()) f[12].clear();
      std::ostringstream row;
      ge::write_csv_row(row, f);
      out += row.str();
    }
    return out;
  };
  const auto a = run_cli({"sweep", "--n", "30,50", "--p", "0.3,0.6", "--index", "sci,lanzhou", "--trials", "2",
                          "--parallelism", "2"});
  const auto b = run_cli({"sweep", "--n", "30,50", "--p", "0.3,0.6", "--index", "sci,lanzhou", "--trials", "2"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(strip(a.out), strip(b.out));
}

TEST(CliSweep, JsonOutput) {
  const auto r = run_cli({"sweep", "--n", "20", "--p", "0.5", "--index", "unit", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("records").size(), 1u);
  EXPECT_EQ(j.at("summary").size(), 1u);
  EXPECT_TRUE(j.at("records")[0].at("m2").is_number());
}

TEST(CliSweep, CsvRowsRoundTripBitIdentically) {
  const auto r = run_cli({"sweep", "--n", "25,35", "--p", "0.35", "--index", "randic,general_randic(1.5)", "--trials",
                          "3", "--moments", "2,4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  for (std::size_t i = 1; i <= 12; ++i) {
    const auto fields = ge::parse_csv_line(ls[i]);
    const auto rec = ge::parse_record_fields(fields);
    EXPECT_EQ(ge::record_fields(rec), fields);
    EXPECT_EQ(ge::format_real(rec.energy), fields[5]);
    EXPECT_EQ(std::stod(fields[5]), *rec.energy);
  }
}

TEST(CliSample, EdgeListMatchesSampler) {
  const auto r = run_cli({"sample", "--n", "50", "--p", "0.2", "--seed", "8", "--trial", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  EXPECT_EQ(ge::read_edge_list(in), ge::sample_gnp(50, 0.2, {8, 4}));
}

TEST(CliSelftest, Passes) {
  const auto r = run_cli({"selftest"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Csv, EscapingRoundTrip) {
  const std::vector<std::string> fields = {"plain", "with,comma", "with \"quote\"", "", "failed: a, b"};
  std::ostringstream out;
  ge::write_csv_row(out, fields);
  std::string line = out.str();
  line.pop_back();
  EXPECT_EQ(ge::parse_csv_line(line), fields);
}

TEST(Csv, RealsUseSeventeenDigits) {
  for (double x : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, 13421.123227863209}) {
    EXPECT_EQ(std::stod(ge::format_real(x)), x);
  }
}
