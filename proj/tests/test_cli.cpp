#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include <json.hpp>

#include "skell/cli.hpp"
#include "skell/io.hpp"
#include "skell/verification.hpp"

namespace fs = std::filesystem;
using skell::cli::run;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("skell_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream(path(name)) << content;
    return path(name);
  }

  std::string model() const {
    return write("model.json", R"({"n": 2, "mu": [0.5, -0.5], "Omega": [[1.0, 0.3], [0.3, 2.0]],
                                    "alpha": [2.0, -1.0], "family": "normal"})");
  }

  static std::string read(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, SampleDeterministic) {
  const auto cfg = model();
  ASSERT_EQ(run({"--config", cfg, "--seed", "42", "--n-draws", "500", "--out", path("a.csv"), "sample"}), 0);
  ASSERT_EQ(run({"--config", cfg, "--seed", "42", "--n-draws", "500", "--threads", "3", "--out", path("b.csv"),
                 "sample"}),
            0);
  const std::string a = read(path("a.csv"));
  EXPECT_EQ(a, read(path("b.csv")));
  EXPECT_EQ(a.substr(0, 6), "x1,x2\n");
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 501);
  ASSERT_EQ(run({"--config", cfg, "--seed", "43", "--n-draws", "500", "--out", path("c.csv"), "sample"}), 0);
  EXPECT_NE(a, read(path("c.csv")));
}

TEST_F(CliTest, ValidateExitCodes) {
  EXPECT_EQ(run({"--config", model(), "--out", path("v.csv"), "validate"}), 0);
  const auto bad = write("bad.json", R"({"n": 2, "mu": [0, 0], "Omega": [[1, 2], [2, 1]], "alpha": [0, 0]})");
  EXPECT_EQ(run({"--config", bad, "validate"}), skell::cli::kInvalidInput);
  EXPECT_EQ(run({"--config", path("missing.json"), "validate"}), skell::cli::kIoFailure);
  const auto junk = write("junk.json", "{not json");
  EXPECT_EQ(run({"--config", junk, "validate"}), skell::cli::kIoFailure);
  EXPECT_EQ(run({"--config", model(), "--variant", "rep_z", "validate"}), skell::cli::kInvalidInput);
  EXPECT_EQ(run({"frobnicate"}), skell::cli::kInvalidInput);
}

TEST_F(CliTest, MomentNonexistenceIsNumerical) {
  const auto cfg = write("t3.json", R"({"n": 1, "mu": [0], "Omega": [[1]], "alpha": [1],
                                         "family": "student_t", "nu": 3})");
  EXPECT_EQ(run({"--config", cfg, "--out", path("m.csv"), "moments"}), skell::cli::kNumericalFailure);
  EXPECT_EQ(run({"--config", cfg, "--out", path("m.csv"), "moments", "--max-order", "2"}), 0);
}

TEST_F(CliTest, PdfAndCf) {
  const auto cfg = model();
  const auto grid = write("grid.csv", "x1,x2\n0,0\n0.5,-1\n");
  ASSERT_EQ(run({"--config", cfg, "--grid", grid, "--out", path("pdf.csv"), "pdf"}), 0);
  const auto pdf = skell::io::read_csv(path("pdf.csv"));
  ASSERT_EQ(pdf.values.rows(), 2);
  EXPECT_EQ(pdf.header.back(), "log_pdf");
  EXPECT_NEAR(std::exp(pdf.values(1, 3)), pdf.values(1, 2), 1e-12);

  ASSERT_EQ(run({"--config", cfg, "--grid", grid, "--format", "json", "--out", path("cf.json"), "cf", "--method",
                 "skew_normal"}),
            0);
  const auto j = nlohmann::json::parse(read(path("cf.json")));
  ASSERT_TRUE(j.is_array() || j.is_object());
}

TEST_F(CliTest, EmpiricalMomentsRoundTrip) {
  const auto cfg = model();
  ASSERT_EQ(run({"--config", cfg, "--seed", "7", "--n-draws", "2000", "--out", path("s.csv"), "sample"}), 0);
  ASSERT_EQ(run({"--format", "json", "--out", path("m.json"), "moments", "--empirical", path("s.csv")}), 0);
  const auto j = nlohmann::json::parse(read(path("m.json")));
  const auto table = skell::io::read_csv(path("s.csv"));
  const skell::SampleMatrix x = table.values;
  const auto est = skell::mc_moment_set(x);
  for (int i = 0; i < 2; ++i) EXPECT_EQ(j["M1"][i].get<double>(), est.estimate.m1[i]);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) EXPECT_EQ(j["M4"][r][c].get<double>(), est.estimate.m4(r, c));
}

TEST_F(CliTest, Qform) {
  const auto cfg = model();
  const auto a = write("a.csv", "c1,c2\n1,0.5\n0.5,2\n");
  ASSERT_EQ(run({"--config", cfg, "--format", "json", "--out", path("q.json"), "qform", "--A", a}), 0);
  const auto j = nlohmann::json::parse(read(path("q.json")));
  EXPECT_NEAR(j["mean"].get<double>(), j["mean_expanded"].get<double>(), 1e-12);
  EXPECT_NEAR(j["var"].get<double>(), j["cov"].get<double>(), 1e-12);
}

TEST_F(CliTest, AdjudicateNormal) {
  const auto cfg = model();
  ASSERT_EQ(run({"--config", cfg, "--seed", "3", "--n-draws", "100000", "--format", "json", "--out",
                 path("adj.json"), "adjudicate", "--suite", "cf", "--log", path("adj.jsonl")}),
            0);
  const auto j = nlohmann::json::parse(read(path("adj.json")));
  bool found = false;
  for (const auto& r : j["reports"]) {
    if (r["subject"] == "cf:skew_normal_closed_form") {
      found = true;
      EXPECT_EQ(r["verdict"], "consistent");
    }
  }
  EXPECT_TRUE(found);
  const std::string log = read(path("adj.jsonl"));
  EXPECT_EQ(static_cast<std::size_t>(std::count(log.begin(), log.end(), '\n')), j["reports"].size());
  EXPECT_NE(log.find("timestamp"), std::string::npos);
}

TEST_F(CliTest, BinaryIsByteIdentical) {
  const auto cfg = model();
  const std::string bin = SKELL_CLI_PATH;
  for (const char* name : {"r1.csv", "r2.csv"}) {
    const std::string cmd = "\"" + bin + "\" --config \"" + cfg + "\" --seed 42 --n-draws 1000 --out \"" +
                            path(name) + "\" sample";
    ASSERT_EQ(std::system(cmd.c_str()), 0);
  }
  EXPECT_EQ(read(path("r1.csv")), read(path("r2.csv")));
  const std::string bad = "\"" + bin + "\" --config \"" + path("nope.json") + "\" validate 2> \"" + path("err.txt") + "\"";
  const int status = std::system(bad.c_str());
  EXPECT_EQ(WEXITSTATUS(status), 3);
  const auto err = nlohmann::json::parse(read(path("err.txt")));
  EXPECT_EQ(err["error"]["kind"], "io_failure");
}
