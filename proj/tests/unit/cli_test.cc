// Copyright 2026 The qtradeoff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Drives the qtradeoff executable (path in QTRADEOFF_CLI) through its
// subcommands and exit-code contract.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "qtradeoff/channels.h"
#include "qtradeoff/serialization.h"

namespace qtradeoff {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string &args) {
    std::string cmd = std::string(QTRADEOFF_CLI) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        return r;
    }
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) {
        r.out.append(buf, n);
    }
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<std::vector<double>> parse_csv(const std::string &text, std::string &header) {
    std::istringstream in(text);
    std::getline(in, header);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            row.push_back(std::stod(cell));
        }
        rows.push_back(row);
    }
    return rows;
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("qtradeoff_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override {
        fs::remove_all(dir_);
    }
    std::string write(const std::string &name, const std::string &text) {
        fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p.string();
    }
    fs::path dir_;
};

TEST_F(CliTest, CurveHfHasDomainEndpoints) {
    std::string out = (dir_ / "hf.csv").string();
    ASSERT_EQ(run("curve --pair HF --n 512 --out " + out).code, 0);
    std::ifstream file(out);
    std::stringstream text;
    text << file.rdbuf();
    std::string header;
    auto rows = parse_csv(text.str(), header);
    EXPECT_EQ(header, "disturbance,info_bound,envelope,x");
    ASSERT_EQ(rows.size(), 512u);
    EXPECT_NEAR(rows.front()[0], 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(rows.front()[1], 0.27865247955551831, 1e-12);
    for (std::size_t k = 1; k < rows.size(); k++) {
        EXPECT_LT(rows[k - 1][0], rows[k][0]);
    }
}

TEST_F(CliTest, CurveGbLastRow) {
    RunResult r = run("curve --pair GB --n 64");
    ASSERT_EQ(r.code, 0);
    std::string header;
    auto rows = parse_csv(r.out, header);
    ASSERT_EQ(rows.size(), 64u);
    EXPECT_EQ(rows.back()[0], 1.0);
    EXPECT_EQ(rows.back()[1], 0.5);
    EXPECT_EQ(rows.back()[2], 0.5);
    EXPECT_EQ(rows.back()[3], 0.0);
}

TEST_F(CliTest, CurveTwoPointsAndDeterminism) {
    RunResult a = run("curve --pair HF --n 2");
    ASSERT_EQ(a.code, 0);
    std::string header;
    EXPECT_EQ(parse_csv(a.out, header).size(), 2u);
    RunResult b = run("curve --pair HB --n 300");
    RunResult c = run("--workers 1 curve --pair HB --n 300");
    EXPECT_EQ(b.out, c.out);
}

TEST_F(CliTest, BadFlagsExitTwo) {
    EXPECT_EQ(run("curve --pair XY").code, 2);
    EXPECT_EQ(run("curve --n 1").code, 2);
    EXPECT_EQ(run("verify --suite all --trials 0").code, 2);
    EXPECT_EQ(run("verify --suite nope").code, 2);
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("eval /nonexistent/file.json").code, 2);
}

TEST_F(CliTest, VerifyAppendixBPasses) {
    RunResult r = run("verify --suite appendixB --trials 200");
    ASSERT_EQ(r.code, 0);
    json report = json::parse(r.out);
    EXPECT_EQ(report["suite"], "appendixB");
    EXPECT_EQ(report["trials"], 200);
    EXPECT_TRUE(report["pass"].get<bool>());
    bool found = false;
    for (const auto &d : report["details"]) {
        EXPECT_TRUE(d["pass"].get<bool>()) << d["name"];
        found = found || d["name"] == "appendixB/beta_maximum_at_zero";
    }
    EXPECT_TRUE(found);
}

TEST_F(CliTest, VerifyFailureExitsOne) {
    // The saturating checks land a few ulps below zero, so a zero tolerance fails them.
    RunResult r = run("verify --suite bound --trials 5 --tol 0");
    EXPECT_EQ(r.code, 1);
    json report = json::parse(r.out);
    EXPECT_FALSE(report["pass"].get<bool>());
    bool any_failed = false;
    for (const auto &d : report["details"]) {
        EXPECT_EQ(d["tolerance"], 0.0);
        any_failed = any_failed || !d["pass"].get<bool>();
    }
    EXPECT_TRUE(any_failed);
    EXPECT_EQ(run("verify --suite appendixA --trials 64 --tol -1").code, 2);
}

TEST_F(CliTest, EvalSaturatingOperation) {
    std::string path = write("sat.json", to_json(saturating_operation(0.5)).dump());
    RunResult r = run("eval " + path);
    ASSERT_EQ(r.code, 0);
    json report = json::parse(r.out);
    EXPECT_NEAR(report["measures"]["F"]["value"].get<double>(), 0.95534180126147955, 1e-12);
    EXPECT_NEAR(report["measures"]["H"]["value"].get<double>(), 0.061735292866819065, 1e-12);
    EXPECT_EQ(report["measures"]["H"]["method"], "quadrature");
    for (const auto &b : report["bounds"]) {
        EXPECT_LT(std::abs(b["margin"].get<double>()), 1e-7) << b["pairing"];
    }
}

TEST_F(CliTest, EvalIdentityAndPovm) {
    std::string id = write("id.json", R"({"dim": 2, "elements": [{"r": 0, "re": [[1, 0], [0, 1]]}]})");
    json report = json::parse(run("eval " + id).out);
    EXPECT_NEAR(report["measures"]["F"]["value"].get<double>(), 1, 1e-14);
    EXPECT_NEAR(report["measures"]["H"]["value"].get<double>(), 0, 1e-14);
    EXPECT_NEAR(report["measures"]["B"]["value"].get<double>(), 1, 1e-12);
    EXPECT_NEAR(report["measures"]["G"]["value"].get<double>(), 0.5, 1e-14);
    std::string povm = write("povm.json", to_json(induced_povm(saturating_operation(0.5))).dump());
    RunResult r = run("eval " + povm);
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(r.out)["operation"], "efficient");
}

TEST_F(CliTest, EvalLargeDimensionUsesMonteCarlo) {
    Rng rng(101);
    std::string path = write("d4.json", to_json(random_general_operation(random_povm(4, 2, rng), 2, rng)).dump());
    RunResult a = run("eval --samples 20000 --seed 5 " + path);
    RunResult b = run("--workers 1 eval --samples 20000 --seed 5 " + path);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    json report = json::parse(a.out);
    EXPECT_EQ(report["measures"]["H"]["method"], "monte_carlo");
    EXPECT_GT(report["measures"]["B"]["std_error"].get<double>(), 0);
    EXPECT_FALSE(report.contains("bounds"));
}

TEST_F(CliTest, EvalErrorCodes) {
    EXPECT_EQ(run("eval " + write("bad.json", "{not json")).code, 3);
    EXPECT_EQ(run("eval " + write("schema.json", R"({"dim": 2, "elements": 3})")).code, 3);
    EXPECT_EQ(run("eval " + write("incomplete.json", R"({"dim": 2, "elements": [{"r": 0, "re": [[1, 0], [0, 0.5]]}]})"))
                  .code,
              4);
}

}  // namespace
}  // namespace qtradeoff
