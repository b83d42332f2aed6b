//
// Copyright 2026 The SmoothCert Authors
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
//

#include "smoothcert/cli.hpp"

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace smoothcert {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("smoothcert_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path Write(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  // Runs the CLI through the shell; returns the exit status.
  int Run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + SMOOTHCERT_CLI + " " + args + " > " +
                            (dir_ / "stdout.txt").string() + " 2> " +
                            (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string Read(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  std::string Out(const std::string& sub) { return (dir_ / sub).string(); }

  fs::path dir_;
};

constexpr const char* kSmallCertify = R"({
  "family": {"kind": "gaussian", "dimension": 2, "scale": 0.5},
  "threat": {"norm": "l2", "radius": 0.2},
  "lambda_grid": {"start": 0.01, "end": 100, "count": 40},
  "samples": {"n1": 2000, "n2": 5000},
  "classifier": {"type": "ball", "norm": "l2", "radius": 1.0},
  "inputs": [{"id": "a", "x": [0, 0]}, {"id": "b", "x": [0.6, 0]}, {"id": "c", "x": [2, 2]}]
})";

TEST(ConfigParse, RejectsUnknownKeysAndBadTypes) {
  EXPECT_THROW(parse_config_text(R"({"command": "certify", "sed": 1})"), ConfigError);
  EXPECT_THROW(parse_config_text(R"({"command": "certify", "family": {"kind": "x"}})"),
               ConfigError);
  EXPECT_THROW(parse_config_text(R"({"command": "certify", "seed": "one"})"), ConfigError);
  EXPECT_THROW(parse_config_text(R"({"command": "launch"})"), ConfigError);
  EXPECT_THROW(parse_config_text("{"), ConfigError);
}

TEST(ConfigParse, DefaultsAndValidation) {
  auto cfg = parse_config_text(R"({"command": "certify"})");
  EXPECT_EQ(cfg.family.kind, FamilyKind::kGaussian);
  EXPECT_EQ(cfg.samples.n1, 100000u);
  EXPECT_NO_THROW(validate(cfg));
  cfg.family = {FamilyKind::kL2PowerTail, 3, 2.0, 1.0};
  try {
    validate(cfg);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("k < d - 1"), std::string::npos);
  }
  cfg.family = {FamilyKind::kLaplacian, 3, 0.0, 1.0};
  EXPECT_THROW(validate(cfg), ConfigError);  // l2 threat with laplacian
}

TEST(ConfigParse, ExternalCommandForms) {
  const auto a = parse_config_text(
      R"({"command": "certify", "classifier": {"type": "external", "command": "echo hi"}})");
  EXPECT_EQ(a.classifier.command, (std::vector<std::string>{"/bin/sh", "-c", "echo hi"}));
  const auto b = parse_config_text(
      R"({"command": "certify", "classifier": {"type": "external", "command": ["w", "1"]}})");
  EXPECT_EQ(b.classifier.command, (std::vector<std::string>{"w", "1"}));
}

TEST_F(CliTest, InputsFileParsing) {
  const auto p = Write("inputs.txt", "# comment\nx1 0.5 1\n\nx2, -1, 2e-3  # trailing\n");
  const auto inputs = read_inputs_file(p.string());
  ASSERT_EQ(inputs.size(), 2u);
  EXPECT_EQ(inputs[0].id, "x1");
  EXPECT_EQ(inputs[1].x, (std::vector<double>{-1.0, 2e-3}));
  Write("bad.txt", "x1 0.5 abc\n");
  EXPECT_THROW(read_inputs_file((dir_ / "bad.txt").string()), ConfigError);
}

TEST_F(CliTest, CertifyWritesOutputsAndIsDeterministic) {
  const auto cfg = Write("c.json", kSmallCertify);
  ASSERT_EQ(Run("certify -c " + cfg.string() + " --seed 5 --workers 2 --out " + Out("o1")), 0);
  ASSERT_EQ(Run("certify -c " + cfg.string() + " --seed 5 --workers 2 --out " + Out("o1b")), 0);
  const auto r1 = Read(dir_ / "o1" / "result.json");
  auto r1b = Read(dir_ / "o1b" / "result.json");
  // Only the echoed output directory differs.
  const auto pos = r1b.find("o1b");
  ASSERT_NE(pos, std::string::npos);
  r1b.erase(pos + 2, 1);
  EXPECT_EQ(r1, r1b);
  for (const char* f : {"summary.csv", "trace_a.csv", "trace_b.csv", "trace_c.csv"}) {
    EXPECT_TRUE(fs::exists(dir_ / "o1" / f)) << f;
  }
  const auto json = Json::parse(r1);
  ASSERT_EQ(json["certificates"].size(), 3u);
  EXPECT_EQ(json["certificates"][0]["status"], "certified");
  EXPECT_EQ(json["certificates"][2]["status"], "abstain");
  EXPECT_EQ(json["config"]["seed"], 5);
  const auto summary = Read(dir_ / "o1" / "summary.csv");
  EXPECT_NE(summary.find("input_id,p0_lower,radius,bound,certified\n"), std::string::npos);
}

TEST_F(CliTest, ParallelInputsMatchSequential) {
  const auto cfg = Write("c.json", kSmallCertify);
  ASSERT_EQ(Run("certify -c " + cfg.string() + " --workers 1 --out " + Out("w1")), 0);
  ASSERT_EQ(Run("certify -c " + cfg.string() + " --workers 3 --out " + Out("w3")), 0);
  const auto a = Json::parse(Read(dir_ / "w1" / "result.json"));
  const auto b = Json::parse(Read(dir_ / "w3" / "result.json"));
  EXPECT_EQ(a["certificates"], b["certificates"]);
}

TEST_F(CliTest, SeedPrecedence) {
  const auto cfg = Write("c.json", kSmallCertify);
  ASSERT_EQ(Run("certify -c " + cfg.string() + " --out " + Out("e"), "SMOOTHCERT_SEED=17"), 0);
  EXPECT_EQ(Json::parse(Read(dir_ / "e" / "result.json"))["config"]["seed"], 17);
  ASSERT_EQ(Run("certify -c " + cfg.string() + " --seed 3 --out " + Out("f"), "SMOOTHCERT_SEED=17"),
            0);
  EXPECT_EQ(Json::parse(Read(dir_ / "f" / "result.json"))["config"]["seed"], 3);
  EXPECT_EQ(Run("certify -c " + cfg.string() + " --out " + Out("g"), "SMOOTHCERT_SEED=abc"), 2);
}

TEST_F(CliTest, ClosedFormRadius) {
  ASSERT_EQ(Run("radius --closed-form cohen --p0 0.5 --out " + Out("r")), 0);
  const auto j = Json::parse(Read(dir_ / "r" / "result.json"));
  EXPECT_EQ(j["closed_form"]["radius"], 0.0);
  EXPECT_EQ(j["closed_form"]["certified"], false);
  ASSERT_EQ(Run("radius --closed-form cohen --p0 0.9 --out " + Out("r2")), 0);
  EXPECT_NEAR(Json::parse(Read(dir_ / "r2" / "result.json"))["closed_form"]["radius"].get<double>(),
              1.2815515655446004, 1e-12);
  EXPECT_EQ(Run("radius --closed-form teng --p0 0.9 --out " + Out("r3")), 2);  // gaussian family
  EXPECT_EQ(Run("radius --closed-form cohen --out " + Out("r4")), 2);          // no p0
}

TEST_F(CliTest, ExitCodes) {
  const auto bad_k =
      Write("k.json", R"({"family": {"kind": "l2_power_tail", "dimension": 3, "k": 2.5}})");
  EXPECT_EQ(Run("certify -c " + bad_k.string() + " --out " + Out("x")), 2);
  EXPECT_NE(Read(dir_ / "stderr.txt").find("k < d - 1"), std::string::npos);
  EXPECT_EQ(Run("certify -c " + Write("j.json", "{nope").string()), 2);
  EXPECT_EQ(Run("certify -c " + Write("u.json", R"({"bogus": 1})").string()), 2);
  EXPECT_EQ(Run("frobnicate"), 2);
  EXPECT_EQ(Run("certify -c /nonexistent.json"), 2);
  EXPECT_EQ(Run("--help"), 0);

  const std::string hang = std::string(R"({"classifier": {"type": "external", "command": [")") +
                           SMOOTHCERT_EVAL_WORKER +
                           R"(", "hang"], "timeout_ms": 300}, "samples": {"n1": 100, "n2": 100}})";
  EXPECT_EQ(Run("certify -c " + Write("h.json", hang).string() + " --out " + Out("h")), 3);

  const auto abort_cfg = Write(
      "a.json", R"({"family": {"kind": "mixed_norm", "dimension": 200, "k": 198}, "sample": {"n": 5}})");
  EXPECT_EQ(Run("sample -c " + abort_cfg.string() + " --out " + Out("a")), 4);
}

TEST_F(CliTest, ExternalClassifierEndToEnd) {
  const std::string ext = std::string(R"({"classifier": {"type": "external", "command": [")") +
                          SMOOTHCERT_EVAL_WORKER + R"(", "ball-l2", "1"]},
      "family": {"kind": "gaussian", "dimension": 2, "scale": 0.5},
      "threat": {"norm": "l2", "radius": 0.2}, "samples": {"n1": 2000, "n2": 5000}})";
  const std::string syn = R"({"classifier": {"type": "ball", "radius": 1},
      "family": {"kind": "gaussian", "dimension": 2, "scale": 0.5},
      "threat": {"norm": "l2", "radius": 0.2}, "samples": {"n1": 2000, "n2": 5000}})";
  ASSERT_EQ(Run("certify -c " + Write("e.json", ext).string() + " --out " + Out("e")), 0);
  ASSERT_EQ(Run("certify -c " + Write("s.json", syn).string() + " --out " + Out("s")), 0);
  const auto a = Json::parse(Read(dir_ / "e" / "result.json"))["certificates"][0];
  const auto b = Json::parse(Read(dir_ / "s" / "result.json"))["certificates"][0];
  EXPECT_EQ(a["successes"], b["successes"]);
  EXPECT_EQ(a["bound"], b["bound"]);
}

TEST_F(CliTest, StdinConfigAndFlagOverrides) {
  const std::string cmd = std::string("echo '{\"samples\": {\"n1\": 500, \"n2\": 500}}' | ") +
                          SMOOTHCERT_CLI + " certify -c - --n2 700 --alpha 0.01 " +
                          "--lambda-count 7 --mode practical --out " + Out("p");
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  const auto j = Json::parse(Read(dir_ / "p" / "result.json"));
  EXPECT_EQ(j["config"]["samples"]["n2"], 700);
  EXPECT_EQ(j["config"]["budget"]["alpha_mc"], 0.005);
  EXPECT_EQ(j["config"]["lambda_grid"]["count"], 7);
  EXPECT_TRUE(j["certificates"][0].contains("pilot"));
  EXPECT_TRUE(fs::exists(dir_ / "p" / "pilot_trace_0.csv"));
}

TEST_F(CliTest, OtherCommandsProduceOutputs) {
  const auto s = Write("s.json", R"({"family": {"kind": "l1_power_tail", "dimension": 3, "k": 1},
      "sample": {"n": 300}})");
  ASSERT_EQ(Run("sample -c " + s.string() + " --out " + Out("s")), 0);
  EXPECT_TRUE(fs::exists(dir_ / "s" / "samples.csv"));
  const auto p = Write("p.json", R"({"threat": {"norm": "linf", "radius": 0.65},
      "pareto": {"n": 500, "k_count": 2, "sigma_count": 3}})");
  ASSERT_EQ(Run("pareto -c " + p.string() + " --out " + Out("p")), 0);
  EXPECT_TRUE(fs::exists(dir_ / "p" / "pareto.csv"));
  const auto v = Write("v.json", R"({"verify": {"experiments": ["mean_variance", "thin_shell"],
      "thin_shell_dimensions": [1, 10]}})");
  ASSERT_EQ(Run("verify -c " + v.string() + " --out " + Out("v")), 0);
  EXPECT_TRUE(fs::exists(dir_ / "v" / "mean_variance.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "v" / "thin_shell.csv"));
  const auto b = Write("b.json", R"({"bench": {"n": 1000, "repeats": 1}})");
  ASSERT_EQ(Run("bench -c " + b.string() + " --out " + Out("b")), 0);
  EXPECT_TRUE(fs::exists(dir_ / "b" / "bench.csv"));
  const auto r = Write("r.json", R"({"classifier": {"type": "ball", "radius": 1.5},
      "samples": {"n1": 1000, "n2": 2000}, "radius": {"grid_count": 20}})");
  ASSERT_EQ(Run("radius -c " + r.string() + " --out " + Out("r")), 0);
  const auto j = Json::parse(Read(dir_ / "r" / "result.json"));
  EXPECT_EQ(j["certificates"][0]["status"], "certified");
}

}  // namespace
}  // namespace smoothcert
