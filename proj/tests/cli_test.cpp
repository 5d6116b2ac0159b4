#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include <json.hpp>

#include "l4cov/cli.hpp"

namespace {

namespace fs = std::filesystem;

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = l4cov::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() /
               ("l4cov_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

std::string slurp(const std::string& p)
{
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

TEST_F(CliTest, ConstructCaseD)
{
    const auto w = path("w.json");
    const auto r = run({"construct", "--epsilon", "+", "--p", "3", "--m", "2", "--profile", "2,1", "--out", w});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(slurp(w));
    EXPECT_EQ(j["case"], "D_QcongEps");
    EXPECT_EQ(j["case_d"]["a"], "1");
    EXPECT_EQ(j["case_d"]["b"], "2");
}

TEST_F(CliTest, ConstructCaseCToStdout)
{
    const auto r = run({"construct", "--epsilon", "-", "--p", "7", "--m", "2", "--profile", "2,1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["case"], "C_QcongMinusEps");
}

TEST_F(CliTest, ConstructUsageErrors)
{
    EXPECT_EQ(run({"construct", "--epsilon", "+", "--p", "4", "--m", "1", "--profile", "2"}).code, 2);
    EXPECT_EQ(run({"construct", "--epsilon", "*", "--p", "3", "--m", "1", "--profile", "2"}).code, 2);
    EXPECT_EQ(run({"construct", "--epsilon", "+", "--p", "3", "--m", "2", "--profile", "2"}).code, 2);
    EXPECT_EQ(run({"construct", "--epsilon", "+", "--p", "3", "--m", "1", "--profile", "4"}).code, 2);
    EXPECT_EQ(run({"construct", "--p", "3"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
}

TEST_F(CliTest, VerifyRoundTripAndTamper)
{
    const auto w = path("w.json");
    ASSERT_EQ(run({"construct", "--epsilon", "+", "--p", "3", "--m", "2", "--profile", "2,1", "--out", w}).code, 0);
    auto r = run({"verify", "--cert", w});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("V7 PASS"), std::string::npos);
    EXPECT_NE(r.out.find("overall PASS"), std::string::npos);

    auto j = nlohmann::ordered_json::parse(slurp(w));
    j["exponents"][2] = "11";
    const auto t = path("t.json");
    std::ofstream(t) << j.dump(2) << "\n";
    r = run({"verify", "--cert", t});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("V7 FAIL"), std::string::npos);
    EXPECT_NE(r.out.find("overall FAIL"), std::string::npos);

    EXPECT_EQ(run({"verify", "--cert", path("missing.json")}).code, 2);
}

TEST_F(CliTest, VerifyWithComputedSpectrum)
{
    const auto w = path("w.json");
    ASSERT_EQ(run({"construct", "--epsilon", "+", "--p", "3", "--m", "2", "--profile", "2,1", "--out", w}).code, 0);
    const auto r = run({"verify", "--cert", w, "--spectrum", "compute"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("oracle-confirmed"), std::string::npos);
}

TEST_F(CliTest, VerifyWithSpectrumFile)
{
    const auto w = path("w.json"), s = path("s.txt");
    ASSERT_EQ(run({"construct", "--epsilon", "+", "--p", "3", "--m", "1", "--profile", "1", "--out", w}).code, 0);
    ASSERT_EQ(run({"spectrum", "--epsilon", "+", "--q", "3", "--out", s}).code, 0);
    const auto r = run({"verify", "--cert", w, "--spectrum", s});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("oracle-confirmed"), std::string::npos);
}

TEST_F(CliTest, Sweep)
{
    auto r = run({"sweep", "--p-max", "5", "--m-max", "2"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("total             80"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("failures          0"), std::string::npos);

    r = run({"sweep", "--p-max", "3", "--m-max", "1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("C_QcongMinusEps   0"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("D_QcongEps        0"), std::string::npos);

    EXPECT_EQ(run({"sweep", "--p-max", "2", "--m-max", "1"}).code, 2);
    EXPECT_EQ(run({"sweep", "--p-max", "3", "--m-max", "1", "--epsilon", "x"}).code, 2);
}

TEST_F(CliTest, Spectrum)
{
    const auto r = run({"spectrum", "--epsilon", "+", "--q", "3", "--group", "PSL"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "# epsilon=+ q=3 group=PSL");
    std::vector<long> orders;
    for (long x; in >> x;)
        orders.push_back(x);
    auto has_multiple = [&](long x) {
        return std::any_of(orders.begin(), orders.end(), [&](long o) { return o % x == 0; });
    };
    EXPECT_TRUE(has_multiple(5));
    EXPECT_TRUE(has_multiple(13));
    EXPECT_TRUE(has_multiple(9));
    EXPECT_FALSE(has_multiple(15));
    EXPECT_FALSE(has_multiple(39));
    EXPECT_FALSE(has_multiple(24));

    EXPECT_EQ(run({"spectrum", "--epsilon", "+", "--q", "4"}).code, 2);
    EXPECT_EQ(run({"spectrum", "--epsilon", "+", "--q", "3", "--group", "GL"}).code, 2);
    EXPECT_EQ(run({"spectrum", "--epsilon", "+", "--q", "29"}).code, 2);
}

TEST_F(CliTest, Ppd)
{
    auto r = run({"ppd", "--a", "9", "--n", "4", "--epsilon", "+"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "41\n");
    EXPECT_EQ(run({"ppd", "--a", "2", "--n", "6", "--epsilon", "+"}).out, "none\n");
    EXPECT_EQ(run({"ppd", "--a", "3", "--n", "2", "--epsilon", "-"}).out, "none\n");
    EXPECT_EQ(run({"ppd", "--a", "1", "--n", "2", "--epsilon", "+"}).code, 2);
}

// The installed binary reports the same exit codes as the in-process runner.
TEST_F(CliTest, BinaryExitCodes)
{
    const std::string bin = L4COV_CLI_PATH;
    const std::string quiet = " > " + path("o.txt") + " 2>&1";
    auto status = [&](const std::string& args) {
        const int raw = std::system((bin + " " + args + quiet).c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    EXPECT_EQ(status("ppd --a 9 --n 4 --epsilon +"), 0);
    EXPECT_EQ(slurp(path("o.txt")), "41\n");
    EXPECT_EQ(status("construct --epsilon + --p 4 --m 1 --profile 2"), 2);
    EXPECT_EQ(status("--help"), 0);
    const auto w = path("w.json");
    EXPECT_EQ(status("construct --epsilon + --p 3 --m 2 --profile 2,1 --out " + w), 0);
    EXPECT_EQ(status("verify --cert " + w), 0);
}

} // namespace
