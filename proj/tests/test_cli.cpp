#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lhp/cli.hpp"

using namespace lhp;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class CliFiles : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() / ("lhp_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                           "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    std::string write(const std::string& name, const json& j) {
        const fs::path p = dir / name;
        std::ofstream(p) << j.dump(2);
        return p.string();
    }
    std::string path(const std::string& name) const { return (dir / name).string(); }

    fs::path dir;
};

json p1_config() {
    return json::parse(R"({
        "system": "lh_class",
        "params": {"class": "P1"},
        "coeffs": {"b1": {"kind": "trig", "amp": 1.0, "freq": 1.3, "phase": 0.2, "kind2": "sin"},
                   "b2": {"kind": "trig", "amp": 0.7, "freq": 0.9, "phase": 0.0, "kind2": "cos"},
                   "b3": 0.4}
    })");
}

}  // namespace

TEST(Cli, CatalogListAndShow) {
    const CliRun list = run({"catalog", "list"});
    EXPECT_EQ(list.code, 0);
    EXPECT_EQ(std::count(list.out.begin(), list.out.end(), '\n'), 12);
    const CliRun js = run({"--format", "json", "catalog", "list"});
    EXPECT_EQ(json::parse(js.out).size(), 12u);
    const CliRun show = run({"catalog", "show", "I14A:r=2"});
    EXPECT_EQ(show.code, 0);
    EXPECT_EQ(json::parse(show.out)["id"], "I14A:r=2:eta=exp(1x),exp(-1x)");
    EXPECT_EQ(run({"catalog", "show", "Q7"}).code, 2);
}

TEST(Cli, Verify) {
    const CliRun one = run({"verify", "--class", "P2"});
    EXPECT_EQ(one.code, 0);
    EXPECT_TRUE(json::parse(one.out)["pass"].get<bool>());
    const CliRun central = run({"verify", "--class", "P1", "--samples", "50"});
    EXPECT_EQ(central.code, 0);
    EXPECT_GT(json::parse(central.out)["bracket_residual_without_h0"].get<double>(), 1e-3);
    const CliRun all = run({"verify", "--samples", "40"});
    EXPECT_EQ(all.code, 0);
    EXPECT_EQ(json::parse(all.out).size(), 12u);
}

TEST(Cli, Classify) {
    const CliRun r = run({"classify", "--system", "milne-pinney", "--param", "c=-1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j["class"], "I4");
    EXPECT_EQ(j["invariant_sign"], -1);
    EXPECT_TRUE(j.contains("samples"));
    EXPECT_EQ(json::parse(run({"classify", "--system", "milne_pinney", "--param", "c=2"}).out)["class"], "P2");
    EXPECT_EQ(run({"classify", "--system", "lotka_volterra", "--param", "a=1", "--param", "b=1"}).code, 1);
    EXPECT_EQ(run({"classify", "--system", "nowhere"}).code, 2);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"verify", "--samples", "-3"}).code, 2);
    EXPECT_EQ(run({"classify"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliFiles, SimulateWritesTrajectory) {
    const std::string cfg = write("p1.json", p1_config());
    const CliRun r = run({"simulate", "--config", cfg, "--t1", "2", "--points", "11", "--x0", "0", "1", "--y0", "0", "0.5"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream is(r.out);
    const Trajectory tr = read_csv(is);
    EXPECT_EQ(tr.m, 2);
    EXPECT_EQ(tr.size(), 12u);
    EXPECT_DOUBLE_EQ(tr.t.back(), 2.0);

    EXPECT_EQ(run({"simulate", "--config", cfg, "--t0", "1", "--t1", "1", "--x0", "0", "--y0", "0"}).code, 2);
    EXPECT_EQ(run({"simulate", "--config", path("missing.json"), "--x0", "0", "--y0", "0"}).code, 2);

    const CliRun jl = run({"--format", "jsonl", "simulate", "--config", cfg, "--t1", "1", "--points", "4", "--x0", "0",
                        "--y0", "0", "--out", path("out.jsonl")});
    EXPECT_EQ(jl.code, 0);
    std::ifstream f(path("out.jsonl"));
    std::string line;
    int rows = 0;
    while (std::getline(f, line)) rows += json::parse(line).contains("t");
    EXPECT_EQ(rows, 5);
}

TEST_F(CliFiles, InvariantsReportDrift) {
    const std::string cfg = write("p1.json", p1_config());
    const CliRun r = run({"--seed", "5", "invariants", "--config", cfg, "--copies", "3", "--order", "2", "--t1", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_TRUE(j["pass"].get<bool>());
    EXPECT_EQ(j["seed"], 5);
    const CliRun swapped = run({"--seed", "5", "invariants", "--config", cfg, "--copies", "3", "--order", "2", "--swap",
                             "0", "2", "--t1", "3"});
    EXPECT_EQ(json::parse(swapped.out)["subset"], json({2, 1}));
    EXPECT_EQ(run({"invariants", "--config", cfg, "--copies", "2", "--order", "3"}).code, 2);
}

TEST_F(CliFiles, SuperposeAgainstDirectIntegration) {
    const std::string cfg = write("p1.json", p1_config());
    const std::vector<std::pair<std::string, std::string>> starts{{"1", "-0.5"}, {"0.7", "1.1"}};
    std::vector<std::string> files;
    for (std::size_t i = 0; i < starts.size(); ++i) {
        files.push_back(path("part" + std::to_string(i) + ".csv"));
        ASSERT_EQ(run({"simulate", "--config", cfg, "--t1", "4", "--points", "200", "--tol", "1e-11", "--x0",
                       starts[i].first, "--y0", starts[i].second, "--out", files.back()})
                      .code,
                  0);
    }
    const CliRun r = run({"superpose", "--config", cfg, "--particulars", files[0], files[1], "--x0", "0.1", "--y0", "0.2",
                       "--check", "direct", "--tol", "1e-11"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json report = json::parse(r.err);
    EXPECT_TRUE(report["pass"].get<bool>());
    EXPECT_LT(report["max_abs_error"].get<double>(), 1e-5);
    EXPECT_EQ(run({"superpose", "--config", cfg, "--particulars", files[0], "--x0", "0", "--y0", "0"}).code, 2);

    const std::string mp = write("mp.json", json::parse(R"({"system":"milne_pinney","params":{"c":1}})"));
    EXPECT_EQ(run({"superpose", "--config", mp, "--particulars", files[0], files[1], "--x0", "1", "--y0", "0"}).code, 2);
}

TEST_F(CliFiles, EnvironmentSeedOverridesFlag) {
    const std::string cfg = write("p1.json", p1_config());
    ::setenv("LHP_SEED", "77", 1);
    const CliRun r = run({"--seed", "3", "invariants", "--config", cfg, "--t1", "1"});
    ::unsetenv("LHP_SEED");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["seed"], 77);
}

TEST(Cli, Selftest) {
    const CliRun r = run({"selftest"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("all criteria passed"), std::string::npos);
}
