// Copyright 2026 The mmfl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Drives the mmfl binary through the shell and checks exit codes and output.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"
#include "mmfl/io.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliResult {
  int code;
  std::string out;
};

CliResult run(const std::string& args) {
  const std::string cmd = std::string(MMFL_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  while (const std::size_t got = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mmfl_cli_" + std::string(::testing::UnitTest::GetInstance()
                                          ->current_test_info()
                                          ->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& body) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << body;
    return p.string();
  }

  fs::path dir_;
};

constexpr const char* kExample =
    R"({"B":1.0,"delta":0.2,"agents":[{"a":0.12,"b":0.28},{"a":0.33,"b":0.47},{"a":0.81,"b":0.99}]})";

TEST_F(Cli, Solve) {
  const std::string inst = write("i.json", kExample);
  const CliResult r = run("solve --objective avg --instance " + inst);
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["p_opt"].get<double>(), 0.4, 1e-12);
  const CliResult m = run("solve --objective max --instance " + inst + " --oracle-step 0.02");
  ASSERT_EQ(m.code, 0);
  const json k = json::parse(m.out);
  EXPECT_NEAR(k["oracle_max_regret"].get<double>(), k["omv"].get<double>(), 1e-12);
}

TEST_F(Cli, OracleScaleExceededExitsWithFour) {
  const std::string inst = write(
      "wide.json",
      R"({"B":1,"delta":1,"agents":[{"a":0,"b":1},{"a":0,"b":1},{"a":0,"b":1},{"a":0,"b":1}]})");
  EXPECT_EQ(run("solve --instance " + inst + " --oracle-step 0.001").code, 4);
}

TEST_F(Cli, ValidationErrorsExitWithTwo) {
  const std::string bad =
      write("bad.json", R"({"B":1,"delta":0.2,"agents":[{"a":0.3,"b":0.2}]})");
  EXPECT_EQ(run("solve --instance " + bad).code, 2);
  EXPECT_EQ(run("solve --instance " + (dir_ / "missing.json").string()).code, 2);
  EXPECT_EQ(run("mechanism --kind nope --instance " + write("i.json", kExample)).code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST_F(Cli, Mechanism) {
  const CliResult r = run("mechanism --kind equispaced-median --instance " + write("i.json", kExample));
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["p"].get<double>(), 0.4, 1e-12);
  EXPECT_EQ(j["representatives"].size(), 3u);
}

TEST_F(Cli, AuditStrictExitCodes) {
  const std::string clean = write("i.json", kExample);
  EXPECT_EQ(run("audit --kind equispaced-median --instance " + clean +
                " --pitch 0.02 --strict")
                .code,
            0);
  const std::string attack = write(
      "a.json", R"({"B":1,"delta":0.2,"agents":[{"a":0.0225,"b":0.1725}]})");
  const CliResult r = run("audit --kind fine-equispaced-median:0.05 --instance " + attack +
                    " --pitch 0.01 --agent 0 --strict");
  EXPECT_EQ(r.code, 3);
  EXPECT_TRUE(json::parse(r.out)["violated"].get<bool>());
  EXPECT_EQ(run("audit --kind fine-equispaced-median:0.05 --instance " + attack +
                " --pitch 0.01")
                .code,
            0);
}

TEST_F(Cli, AttackFamilies) {
  const CliResult chain = run("attack --family vwd-chain --n 3 --B 1 --delta 0.2 --eps 0.05 "
                        "--eps1 0.01 --kind constant");
  ASSERT_EQ(chain.code, 0);
  const json c = json::parse(chain.out);
  EXPECT_GE(c["evaluation"].back()["gap"].get<double>(), 0.44);

  const CliResult ladder = run("attack --family finite-range --g 0.2,0.3,0.4,0.5 --gamma 0.002 "
                         "--n 21 --case one --delta 0.2 --kind equispaced-median");
  ASSERT_EQ(ladder.code, 0);
  for (const auto& e : json::parse(ladder.out)["evaluation"]) {
    EXPECT_NEAR(e["p"].get<double>(), 0.2, 1e-12);
  }
  EXPECT_EQ(run("attack --family onto --yj 0.2 --ell 0.3 --r 0.38 --eps 0.02 --n 4").code, 0);
  EXPECT_EQ(run("attack --family onto --yj 0.2 --ell 0.3 --r 0.6 --eps 0.02 --n 4").code, 2);
  EXPECT_EQ(run("attack --family fine-grid --delta 0.2").code, 0);
  EXPECT_EQ(run("attack --family nope").code, 2);
}

TEST_F(Cli, ExperimentIsDeterministic) {
  const std::string cfg = write("c.json", R"({"seed": 9, "trials": 5, "n_values": [2, 3],
      "B": 1.0, "delta_values": [0.1, 0.2], "objective": "avg",
      "mechanisms": ["equispaced-median", "constant"]})");
  const fs::path a = dir_ / "a.csv";
  const fs::path b = dir_ / "b.csv";
  ASSERT_EQ(run("experiment --config " + cfg + " --out " + a.string()).code, 0);
  ASSERT_EQ(run("experiment --config " + cfg + " --out " + b.string()).code, 0);
  const std::string x = mmfl::read_file(a.string());
  EXPECT_EQ(x, mmfl::read_file(b.string()));
  EXPECT_EQ(x.rfind("trial,n,delta,mechanism,p,max_regret,omv,gap,bound,within_bound\n", 0),
            0u);
  const std::string bad = write("bad.json", R"({"seed": 9, "trials": 0, "n_values": [2],
      "B": 1.0, "delta_values": [0.1], "objective": "avg", "mechanisms": ["constant"]})");
  EXPECT_EQ(run("experiment --config " + bad + " --out " + a.string()).code, 2);
}

TEST_F(Cli, GenIsSeeded) {
  const CliResult a = run("gen --n 3 --B 1 --delta 0.2 --seed 7");
  const CliResult b = run("gen --n 3 --B 1 --delta 0.2 --seed 7");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(mmfl::parse_instance_json(a.out).size(), 3u);
}

}  // namespace
