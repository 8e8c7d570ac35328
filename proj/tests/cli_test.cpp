// Copyright 2026 The dworkbench Authors
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


#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(DWORKBENCH_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

nlohmann::json run_json(const std::string& args, int expected_code = 0) {
  const RunResult r = run(args);
  EXPECT_EQ(r.code, expected_code) << args << "\n" << r.out;
  return nlohmann::json::parse(r.out);
}

const std::string kX1 = "--p 7 --support 2,5";
const std::string kX1Params = " --sigma 5/12 --s 12 --ell 12 --k 4";
const std::string kX2 = "--p 5 --support 1,7";
const std::string kX2Params = " --sigma 5/12 --s 8 --ell 27 --k 8";

TEST(Cli, Bounds) {
  const auto j = run_json("bounds " + kX1 + " --from -2 --to 10");
  EXPECT_EQ(j["rows"][0]["min_weight"], "inf");
  EXPECT_EQ(j["rows"][7]["n"], 5);
  EXPECT_EQ(j["rows"][7]["min_weight"], "1");
  EXPECT_TRUE(j["closed_form_consistent"].get<bool>());
  const auto j2 = run_json("bounds " + kX2 + " --to 200");
  EXPECT_TRUE(j2["closed_form_consistent"].get<bool>());
  EXPECT_EQ(run("bounds --p 7").code, 1);
  EXPECT_EQ(run("bounds " + kX1 + " --to 200000").code, 1);
}

TEST(Cli, Certify) {
  const auto j = run_json("certify " + kX1 + kX1Params);
  EXPECT_EQ(j["result"], "Certified");
  EXPECT_EQ(j["certificate"]["delta"], "1/12");
  EXPECT_EQ(run_json("certify " + kX2 + kX2Params)["certificate"]["delta"], "7/24");
  const auto bad = run_json("certify " + kX1 + " --sigma 10 --s 12 --ell 12 --k 4", 2);
  EXPECT_EQ(bad["result"], "CertificateFailed");
  const auto found = run_json("certify " + kX1 + " --sigma 5/12 --search");
  EXPECT_EQ(found["result"], "Certified");
  EXPECT_EQ(run("certify " + kX1 + " --sigma 5/12 --s 12 --ell 12 --k 3").code, 1);
}

TEST(Cli, Decide) {
  EXPECT_EQ(run_json("decide " + kX1 + kX1Params)["decision"]["verdict"], "Certified");
  EXPECT_EQ(run_json("decide " + kX2 + kX2Params)["decision"]["verdict"], "Certified");
  const auto weak = run_json("decide " + kX1 + " --sigma 1/12 --s 12 --ell 12 --k 4", 2);
  EXPECT_EQ(weak["decision"]["verdict"], "Inconclusive");
  EXPECT_FALSE(weak["decision"]["witnesses"].empty());
}

TEST(Cli, Oracle) {
  const auto j = run_json("oracle --p 7 --a 1 --coeffs 5:1,2:1");
  EXPECT_TRUE(j["supersingular"].get<bool>());
  EXPECT_EQ(j["l_polynomial"]["valuations"][4], "2");
  const auto ext = run_json("oracle --p 5 --a 2 --coeffs \"7:1,1:[2 1]\"");
  EXPECT_TRUE(ext["supersingular"].get<bool>());
  const auto bc = run_json("oracle --p 5 --a 1 --coeffs 7:1,1:1 --base-change 8");
  EXPECT_EQ(bc["l_polynomial"]["valuations"][2], "17/16");
  EXPECT_EQ(run("oracle --p 7 --a 1 --coeffs 5=1").code, 1);
  EXPECT_EQ(run("oracle --p 7 --a 1 --coeffs \"5:[1 2]\"").code, 1);
  EXPECT_EQ(run("oracle --p 5 --a 8 --coeffs 7:1,1:1").code, 3);
}

TEST(Cli, Dwork) {
  const auto j = run_json("dwork --p 7 --a 4 --coeffs 5:1,2:1" + kX1Params);
  EXPECT_EQ(j["report"]["polygon"]["vertices"][1][1], "2");
  EXPECT_TRUE(j["report"]["certified_polygon"].get<bool>());
  EXPECT_EQ(run("dwork --p 7 --a 4 --coeffs 5:1,2:1").code, 3);
  const RunResult text = run("dwork --p 7 --a 4 --coeffs 5:1,2:1 --format text" + kX1Params);
  EXPECT_EQ(text.code, 0);
  EXPECT_NE(text.out.find("entry check: pass"), std::string::npos);
}

TEST(Cli, Plot) {
  const auto dir = std::filesystem::temp_directory_path() / "dworkbench_cli_test";
  std::filesystem::create_directories(dir);
  const auto in = dir / "np.json";
  std::ofstream(in) << R"({"vertices": [[0, "0"], [4, "2"]]})";
  const RunResult r = run("plot --in " + in.string() + " --out " + (dir / "np.svg").string());
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("slopes: 1/2 1/2 1/2 1/2"), std::string::npos);
  std::ifstream svg(dir / "np.svg");
  const std::string content((std::istreambuf_iterator<char>(svg)), std::istreambuf_iterator<char>());
  EXPECT_NE(content.find("(4, 2)"), std::string::npos);
  std::ofstream(dir / "empty.json") << "";
  EXPECT_EQ(run("plot --in " + (dir / "empty.json").string()).code, 1);
}

TEST(Cli, VerifyPaper) {
  const auto dir = std::filesystem::temp_directory_path() / "dworkbench_verify";
  const auto j = run_json("verify-paper --out " + dir.string());
  EXPECT_TRUE(j["ok"].get<bool>());
  EXPECT_TRUE(std::filesystem::exists(dir / "X1.svg"));
  EXPECT_TRUE(std::filesystem::exists(dir / "X2.svg"));
  const auto tampered = run_json("verify-paper --tamper-bound -1/2", 2);
  EXPECT_FALSE(tampered["ok"].get<bool>());
  EXPECT_EQ(tampered["first_failure"], "X1: certificate");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("certify --p 7 --support x").code, 1);
}

}  // namespace
