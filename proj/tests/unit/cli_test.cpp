#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli/cli.hpp"
#include "cli/output.hpp"
#include "json.hpp"

namespace qkd::cli {
namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> v;
    std::stringstream ss(text);
    for (std::string l; std::getline(ss, l);) v.push_back(l);
    return v;
}

TEST(CsvNumber, SixSignificantDigits) {
    EXPECT_EQ(csv_number(0.35), "0.35");
    EXPECT_EQ(csv_number(0.065931944624508994), "0.0659319");
    EXPECT_EQ(csv_number(1.0), "1");
    EXPECT_EQ(csv_number(0.0), "0");
    EXPECT_EQ(csv_number(-0.0), "0");
    EXPECT_EQ(csv_number(1.2345678e-7), "1.23457e-07");
}

TEST(Analyze, SingleAlphaCsv) {
    const auto r = invoke({"analyze", "--scheme", "four-state", "--alpha", "0.25"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto l = lines(r.out);
    ASSERT_EQ(l.size(), 2u);
    EXPECT_EQ(l[0], "alpha,scheme,i_strong,i_weak,i_mean,p_b,p_bbar,qber,eve_info,info_qber_ratio");
    EXPECT_EQ(l[1], "0.25,four-state,0.4375,0.8125,0.625,0.35,0.65,0.05,0.0659319,1.31864");
}

TEST(Analyze, BothSchemesWithoutAttack) {
    const auto r = invoke({"analyze", "--scheme", "both", "--alpha", "1", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = nlohmann::json::parse(r.out);
    ASSERT_EQ(rows.size(), 2u);
    for (const auto& row : rows) {
        EXPECT_EQ(row["qber"].get<double>(), 0.0);
        EXPECT_EQ(row["eve_info"].get<double>(), 0.0);
    }
    EXPECT_EQ(rows[1]["scheme"], "breidbart");
}

TEST(Analyze, DenseSweep) {
    const auto r = invoke({"analyze", "--scheme", "breidbart", "--sweep", "0:1:0.01", "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto l = lines(r.out);
    ASSERT_EQ(l.size(), 102u);
    EXPECT_EQ(l[1].substr(0, 12), "0,breidbart,");
    EXPECT_EQ(l.back().substr(0, 12), "1,breidbart,");
}

TEST(Analyze, WritesToFile) {
    const std::string path = ::testing::TempDir() + "qkd_analyze_out.csv";
    const auto r = invoke({"analyze", "--scheme", "four-state", "--sweep", "0.2:0.3:0.05", "--out", path});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    EXPECT_EQ(lines(buf.str()).size(), 4u);
    std::remove(path.c_str());
}

TEST(Analyze, FlagErrors) {
    EXPECT_EQ(invoke({"analyze", "--scheme", "intercept", "--alpha", "0.5"}).code, 1);
    EXPECT_EQ(invoke({"analyze", "--scheme", "both", "--alpha", "1.5"}).code, 1);
    EXPECT_EQ(invoke({"analyze", "--scheme", "both", "--sweep", "0:1"}).code, 1);
    EXPECT_EQ(invoke({"analyze", "--scheme", "both", "--sweep", "0:1:-0.1"}).code, 1);
    EXPECT_EQ(invoke({"analyze", "--scheme", "both", "--sweep", "a:1:0.1"}).code, 1);
    EXPECT_EQ(invoke({"analyze", "--scheme", "both"}).code, 1);
    EXPECT_EQ(invoke({"analyze", "--scheme", "both", "--alpha", "0.5", "--sweep", "0:1:0.5"}).code, 1);
    EXPECT_EQ(invoke({"analyze", "--scheme", "both", "--alpha", "0.5", "--format", "xml"}).code, 1);
    EXPECT_EQ(invoke({"frobnicate"}).code, 1);
    EXPECT_EQ(invoke({}).code, 1);
}

TEST(Simulate, JsonReportRoundTrips) {
    const auto r = invoke({"simulate", "--scheme", "four-state", "--alpha", "0.25", "--pulses", "200000",
                           "--seed", "7"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = Json::parse(r.out);
    EXPECT_EQ(doc.dump(2) + "\n", r.out);
    const auto& q = doc["estimates"]["qber_hat"];
    EXPECT_LE(std::abs(q["value"].get<double>() - 0.05), 4 * q["standard_error"].get<double>());
    EXPECT_EQ(doc["analytic"]["p_b"].get<double>(), 0.35);
    EXPECT_EQ(doc["counts"]["pulses_sent"].get<std::uint64_t>(), 200000u);
    EXPECT_EQ(doc["per_axis"].size(), 4u);
}

TEST(Simulate, BaselineIsClean) {
    const auto r = invoke({"simulate", "--scheme", "no-attack", "--pulses", "100000", "--seed", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = Json::parse(r.out);
    EXPECT_EQ(doc["estimates"]["qber_hat"]["value"].get<double>(), 0.0);
    EXPECT_EQ(doc["estimates"]["transmission_hat"]["value"].get<double>(), 1.0);
    EXPECT_TRUE(doc["config"]["alpha"].is_null());
}

TEST(Simulate, DeterministicPerSeed) {
    const std::vector<std::string> cmd{"simulate", "--scheme", "breidbart", "--alpha", "0.3",
                                       "--pulses", "100000", "--seed", "9"};
    const auto a = invoke(cmd), b = invoke(cmd);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    auto other = cmd;
    other.back() = "10";
    EXPECT_NE(invoke(other).out, a.out);
}

TEST(Simulate, ThreadCapDoesNotChangeOutput) {
    const std::vector<std::string> cmd{"simulate", "--scheme", "four-state", "--alpha", "0.6",
                                       "--pulses", "300000", "--seed", "3"};
    ::setenv(kThreadsEnv, "1", 1);
    const auto one = invoke(cmd);
    ::setenv(kThreadsEnv, "4", 1);
    const auto four = invoke(cmd);
    ::setenv(kThreadsEnv, "zero", 1);
    const auto bad = invoke(cmd);
    ::unsetenv(kThreadsEnv);
    ASSERT_EQ(one.code, 0);
    EXPECT_EQ(one.out, four.out);
    EXPECT_EQ(bad.code, 1);
}

TEST(Simulate, CsvRow) {
    const auto r = invoke({"simulate", "--scheme", "breidbart", "--alpha", "0.25", "--pulses", "10000",
                           "--seed", "2", "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto l = lines(r.out);
    ASSERT_EQ(l.size(), 2u);
    EXPECT_EQ(l[0], "alpha,scheme,i_strong,i_weak,i_mean,p_b,p_bbar,qber,eve_info,info_qber_ratio,"
                    "qber_hat,qber_se,p_b_hat,p_b_se,transmission_hat,transmission_se,eve_info_hat,"
                    "sifted_count");
    EXPECT_EQ(std::count(l[1].begin(), l[1].end(), ','), 17);
}

TEST(Simulate, FlagErrors) {
    EXPECT_EQ(invoke({"simulate", "--scheme", "four-state", "--pulses", "10", "--seed", "1"}).code, 1);
    EXPECT_EQ(invoke({"simulate", "--scheme", "no-attack", "--alpha", "0.5", "--pulses", "10", "--seed", "1"}).code, 1);
    EXPECT_EQ(invoke({"simulate", "--scheme", "four-state", "--alpha", "2", "--pulses", "10", "--seed", "1"}).code, 1);
    EXPECT_EQ(invoke({"simulate", "--scheme", "four-state", "--alpha", "0.5", "--pulses", "0", "--seed", "1"}).code, 1);
    EXPECT_EQ(invoke({"simulate", "--scheme", "no-attack", "--pulses", "10"}).code, 1);
    EXPECT_EQ(invoke({"simulate", "--scheme", "no-attack", "--pulses", "10", "--seed", "1",
                      "--system-qber", "0.7"}).code, 1);
}

TEST(Feasibility, HeadlineNumbers) {
    const auto r = invoke({"feasibility", "--system-qber", "0.05"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = Json::parse(r.out);
    EXPECT_EQ(doc.dump(2) + "\n", r.out);
    EXPECT_NEAR(doc["alpha_max"].get<double>(), 0.25, 1e-12);
    EXPECT_NEAR(doc["equivalent_fiber_km"].get<double>(), 10.2, 0.1);
    EXPECT_NEAR(doc["schemes"][0]["adversary_info"].get<double>(), 0.066, 1e-3);
    EXPECT_TRUE(doc["feasible"].get<bool>());
    EXPECT_TRUE(doc["required_superchannel_transmission"].is_null());
}

TEST(Feasibility, LossBudgetTooSmall) {
    const auto r = invoke({"feasibility", "--system-qber", "0.05", "--system-loss-db", "1.0"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = Json::parse(r.out);
    EXPECT_FALSE(doc["feasible"].get<bool>());
    EXPECT_NEAR(doc["induced_loss_db"].get<double>(), 2.04, 0.005);
}

TEST(Feasibility, OutOfRange) {
    const auto r = invoke({"feasibility", "--system-qber", "0.3"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("0.25"), std::string::npos);
    EXPECT_EQ(invoke({"feasibility"}).code, 1);
}

TEST(Validate, TrivialAlphaPasses) {
    const auto r = invoke({"validate", "--pulses", "100000", "--alphas", "1.0"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("PASS"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Validate, AbsurdToleranceFails) {
    const auto r = invoke({"validate", "--pulses", "100", "--sigma", "0.001"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST(Validate, FlagErrors) {
    EXPECT_EQ(invoke({"validate", "--alphas", "0.5,abc"}).code, 1);
    EXPECT_EQ(invoke({"validate", "--alphas", "1.5"}).code, 1);
    EXPECT_EQ(invoke({"validate", "--sigma", "-1"}).code, 1);
    EXPECT_EQ(invoke({"validate", "--pulses", "0"}).code, 1);
}

TEST(Help, ExitsCleanly) {
    const auto r = invoke({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("simulate"), std::string::npos);
}

}  // namespace
}  // namespace qkd::cli
