#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "support.hpp"

namespace fs = std::filesystem;
using pdyn::scenario::json;
using pdyn::scenario::read_text_file;
using pdyn::scenario::write_text_file;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               (std::string("pdyn_cli_") + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    Result run(const std::string& args) const {
        const auto out = dir_ / "stdout.txt";
        const auto err = dir_ / "stderr.txt";
        const std::string cmd = std::string(PDYN_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
        const int status = std::system(cmd.c_str());
        return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, read_text_file(out.string()),
                read_text_file(err.string())};
    }

    fs::path dir_;
};

std::string acbs(const std::string& file) { return testsupport::data_path("acbs/" + file); }

} // namespace

TEST_F(Cli, SimulateWritesOutputs) {
    const auto r = run("simulate --scenario " + acbs("scenario.json") + " --out " + (dir_ / "run").string());
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("completed on day"), std::string::npos);
    EXPECT_TRUE(fs::exists(dir_ / "run" / "timeseries.csv"));
    EXPECT_TRUE(fs::exists(dir_ / "run" / "summary.json"));
}

TEST_F(Cli, SimulateIsByteDeterministic) {
    ASSERT_EQ(run("simulate --scenario " + acbs("scenario.json") + " --out " + (dir_ / "a").string()).code, 0);
    ASSERT_EQ(run("simulate --scenario " + acbs("scenario.json") + " --out " + (dir_ / "b").string()).code, 0);
    for (const char* f : {"timeseries.csv", "summary.json"}) {
        EXPECT_EQ(read_text_file((dir_ / "a" / f).string()), read_text_file((dir_ / "b" / f).string())) << f;
    }
}

TEST_F(Cli, NonCompletionExitsFour) {
    const json j = pdyn::scenario::parse_json(read_text_file(acbs("scenario.json")), "scenario");
    json shortened = j;
    shortened["sim"]["t_end"] = 350;
    shortened["project"]["metrics"] = acbs(j["project"]["metrics"].get<std::string>());
    shortened["volatility"]["path"] = acbs(j["volatility"]["path"].get<std::string>());
    write_text_file(dir_ / "short.json", shortened.dump());
    const auto r = run("simulate --scenario " + (dir_ / "short.json").string() + " --out " + (dir_ / "run").string());
    EXPECT_EQ(r.code, 4) << r.err;
    EXPECT_TRUE(fs::exists(dir_ / "run" / "timeseries.csv"));
}

TEST_F(Cli, LoadErrorsExitTwo) {
    EXPECT_EQ(run("simulate --scenario " + (dir_ / "missing.json").string() + " --out " + dir_.string()).code, 2);
    write_text_file(dir_ / "bad.json", "{\"sim\": ");
    const auto r = run("simulate --scenario " + (dir_ / "bad.json").string() + " --out " + dir_.string());
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("parse error"), std::string::npos) << r.err;
}

TEST_F(Cli, UnwritableOutputExitsFive) {
    write_text_file(dir_ / "blocker", "x");
    const auto r = run("simulate --scenario " + acbs("scenario.json") + " --out " + (dir_ / "blocker" / "x").string());
    EXPECT_EQ(r.code, 5) << r.err;
}

TEST_F(Cli, UsageErrorsExitOne) {
    EXPECT_EQ(run("").code, 1);
    EXPECT_EQ(run("simulate --scenario x.json").code, 1);
    EXPECT_EQ(run("frobnicate").code, 1);
}

TEST_F(Cli, CalibratePrintsTraceAndWritesParameters) {
    const auto out = dir_ / "params" / "calibrated.json";
    const auto r = run("calibrate --metrics " + acbs("metrics.json") + " --out " + out.string());
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("780 - (75 + 65 + 10) = 780 - 150 = 630"), std::string::npos) << r.out;
    const json j = pdyn::scenario::parse_json(read_text_file(out.string()), "calibrated");
    EXPECT_NEAR(j["parameters"]["nominal_potential_productivity"].get<double>(), 19.70, 0.05);
}

TEST_F(Cli, CalibrationErrorExitsTwo) {
    json m = pdyn::scenario::parse_json(read_text_file(acbs("metrics.json")), "metrics");
    m["testing_fraction"] = 1.0;
    write_text_file(dir_ / "m.json", m.dump());
    const auto r = run("calibrate --metrics " + (dir_ / "m.json").string() + " --out " + (dir_ / "p.json").string());
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("testing_fraction"), std::string::npos) << r.err;
}

TEST_F(Cli, CompareAgainstActuals) {
    ASSERT_EQ(run("simulate --scenario " + acbs("scenario.json") + " --out " + (dir_ / "run").string()).code, 0);
    const auto report = dir_ / "cmp.csv";
    const auto r = run("compare --sim " + (dir_ / "run" / "timeseries.csv").string() + " --actual " +
                       acbs("actuals.csv") + " --out " + report.string());
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("effort_total"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("scheduled_completion"), std::string::npos) << r.out;
    EXPECT_TRUE(fs::exists(report));

    write_text_file(dir_ / "bad.csv", "day,effort_total\n10,abc\n");
    const auto bad = run("compare --sim " + (dir_ / "run" / "timeseries.csv").string() + " --actual " +
                         (dir_ / "bad.csv").string());
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.err.find("line 2, column 2"), std::string::npos) << bad.err;
}

TEST_F(Cli, SweepWritesRowsAndRanking) {
    const auto r = run("sweep --scenario " + acbs("scenario.json") + " --volume-loc 2414 --window 40,301 --out " +
                       (dir_ / "sweep").string());
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("ranking:"), std::string::npos);
    const std::string text = read_text_file((dir_ / "sweep" / "sweep.csv").string());
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);
    EXPECT_TRUE(fs::exists(dir_ / "sweep" / "sweep.json"));
    EXPECT_EQ(run("sweep --scenario " + acbs("scenario.json") + " --volume-loc 10 --window 40 --out " +
                  (dir_ / "s2").string())
                  .code,
              1);
}
