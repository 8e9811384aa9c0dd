#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "robust_search/service/cli.hpp"

namespace svc = robust_search::service;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out;
    std::ostringstream err;
    const int code = svc::run_cli(args, in, out, err);
    return {code, out.str(), err.str()};
}

// Compares with tests/golden/<name>; ROBUST_SEARCH_UPDATE_GOLDEN=1 rewrites it.
void expect_golden(const std::string& name, const std::string& actual) {
    const std::string path = std::string(GOLDEN_DIR) + "/" + name;
    if (const char* u = std::getenv("ROBUST_SEARCH_UPDATE_GOLDEN"); u && std::string(u) == "1") {
        std::ofstream(path) << actual;
        return;
    }
    std::ifstream in(path);
    ASSERT_TRUE(in) << "missing golden file " << path;
    std::ostringstream want;
    want << in.rdbuf();
    EXPECT_EQ(actual, want.str()) << name;
}

}  // namespace

TEST(Cli, RuleEval) {
    const CliRun r = run({"rule", "eval", "--family", "constant", "--delta", "0.5", "--y", "0.7"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "0.333333\n");
    const CliRun p = run({"rule", "eval", "--params", R"({"family":"qstar","delta":0.9})", "--y",
                       "0.5", "--precision", "15"});
    EXPECT_EQ(p.code, 0);
    EXPECT_EQ(p.out.size(), 18u);  // "0." + 15 digits + newline
}

TEST(Cli, RhoTableGolden) {
    const CliRun r = run({"table1"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\n1/3,0.75\n"), std::string::npos);
    expect_golden("table1.csv", r.out);
}

TEST(Cli, RatioGolden) {
    const CliRun r = run({"ratio", "--rule", "constant", "--delta", "0.9", "--x0", "0.1", "--xbar", "inf"});
    ASSERT_EQ(r.code, 0) << r.err;
    expect_golden("ratio_constant.json", r.out);
    const CliRun csv = run({"ratio", "--rule", "pstar", "--delta", "0.9", "--x0", "0.2", "--xbar", "1",
                         "--format", "csv", "--y-points", "8", "--z-per-decade", "64"});
    ASSERT_EQ(csv.code, 0) << csv.err;
    expect_golden("ratio_pstar.csv", csv.out);
}

TEST(Cli, DeriveGolden) {
    const CliRun r = run({"derive", "--r", "0.75", "--delta", "0.9", "--grid", "4", "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    expect_golden("derive.csv", r.out);
}

TEST(Cli, SimulateGolden) {
    const std::vector<std::string> args = {"simulate", "--env", R"({"type":"binary","z":1,"sigma":0.3})",
                                           "--rule", "pstar", "--x0", "0.2", "--delta", "0.9",
                                           "--n", "1000", "--seed", "3"};
    const CliRun a = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, run(args).out);
    expect_golden("simulate.json", a.out);
}

TEST(Cli, AdvisePrintsSeedAndDraw) {
    const CliRun r = run({"advise", "--x0", "0.2", "--delta", "0.9", "--seed", "7"},
                      "0.3\n0.1\noops\n0.7\nquit\n0.9\n");
    ASSERT_EQ(r.code, 0);
    expect_golden("advise.txt", r.out);
    EXPECT_NE(r.err.find("error:"), std::string::npos);
    std::istringstream lines(r.out);
    std::string line;
    int n = 0;
    while (std::getline(lines, line)) {
        ++n;
        EXPECT_NE(line.find(" seed=7 "), std::string::npos);
        EXPECT_NE(line.find(" draw="), std::string::npos);
    }
    EXPECT_EQ(n, 4);
}

TEST(Cli, ValidationErrorsExitTwoWithOneLine) {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"rule", "eval", "--family", "constant", "--delta", "1.5", "--y", "0.7"},
             {"rule", "eval", "--family", "nope", "--y", "0.7"},
             {"rule", "eval", "--family", "constant", "--delta", "0.5"},
             {"ratio", "--rule", "constant", "--delta", "0.9", "--x0", "abc"},
             {"table1", "--precision", "20"},
             {"frobnicate"},
             {}}) {
        const CliRun r = run(args);
        EXPECT_EQ(r.code, 2) << r.out;
        EXPECT_EQ(r.err.rfind("error: ", 0), 0u) << r.err;
        EXPECT_EQ(r.err.find('\n'), r.err.size() - 1) << r.err;
    }
}
