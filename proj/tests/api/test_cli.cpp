// Copyright 2026 The ifa Authors.
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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

const fs::path kTmp = IFA_TEST_TMP;

// Runs the CLI with `args`, stdout and stderr captured in `log`; returns the
// exit status.
int Run(const std::string& args, const std::string& log = "cli.log") {
  fs::create_directories(kTmp);
  const std::string cmd = std::string(IFA_CLI_PATH) + " " + args + " > " +
                          (kTmp / log).string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string Out(const std::string& dir) { return "--out " + (kTmp / dir).string(); }

// JSON body of a file whose first line may be a comment header.
Json JsonFile(const fs::path& path) { return Json::parse(Slurp(path)); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("solve writes profile, curve and metrics") {
  fs::remove_all(kTmp / "solve");
  REQUIRE(Run("solve --n 2 --dist uniform --cost linear:0.5 --s 0.462 " + Out("solve")) == 0);
  const auto metrics = JsonFile(kTmp / "solve" / "metrics.json");
  CHECK(std::abs(metrics.at("eu_a").get<double>() - 0.338) <= 0.003);
  CHECK(metrics.at("header").at("config").at("cost") == "linear:0.5");
  CHECK(metrics.at("header").at("command") == "solve");
  CHECK(metrics.begin().key() == "header");
  const auto profile = JsonFile(kTmp / "solve" / "profile.json");
  CHECK(std::abs(profile.at("p").get<double>() - 0.847) <= 0.002);
  const auto curve = Slurp(kTmp / "solve" / "curve.csv");
  CHECK(curve.rfind("# ifa ", 0) == 0);
  CHECK(curve.find("\nv,b\n") != std::string::npos);
  CHECK(curve.find('\r') == std::string::npos);
}

TEST_CASE("solve validation and boundary cases") {
  CHECK(Run("solve --cost linear:1.5 " + Out("bad")) == 2);
  CHECK(Slurp(kTmp / "cli.log").find("0 <= mu < 1") != std::string::npos);
  CHECK(Run("solve --n 1 " + Out("bad")) == 2);
  CHECK(Run("solve --s 2 " + Out("bad")) == 2);
  CHECK(Run("solve --unknown-flag") == 2);
  REQUIRE(Run("solve --s 1 --cost none --n 2 " + Out("none")) == 0);
  const auto m = JsonFile(kTmp / "none" / "metrics.json");
  CHECK(std::abs(m.at("eu_a").get<double>() - 1.0 / 3.0) <= 1e-3);
}

TEST_CASE("files rerun from their own headers") {
  REQUIRE(Run("solve --n 3 --cost exponential:0.3 --s 0.25 " + Out("orig")) == 0);
  REQUIRE(Run("solve --config " + (kTmp / "orig" / "metrics.json").string() + " " +
              Out("rerun_json")) == 0);
  REQUIRE(Run("solve --config " + (kTmp / "orig" / "curve.csv").string() + " " +
              Out("rerun_csv")) == 0);
  for (const char* f : {"metrics.json", "profile.json", "curve.csv"}) {
    CHECK(Slurp(kTmp / "orig" / f) == Slurp(kTmp / "rerun_json" / f));
    CHECK(Slurp(kTmp / "orig" / f) == Slurp(kTmp / "rerun_csv" / f));
  }
  // Explicit flags override the config file.
  REQUIRE(Run("solve --config " + (kTmp / "orig" / "metrics.json").string() +
              " --s 0.5 " + Out("override")) == 0);
  CHECK(JsonFile(kTmp / "override" / "metrics.json").at("s").get<double>() == 0.5);
  CHECK(JsonFile(kTmp / "override" / "metrics.json").at("header").at("config").at("n") == 3);
  // A header from another command is refused.
  REQUIRE(Run("sweep --mu 0.2 --n 2 " + Out("sw_hdr")) == 0);
  CHECK(Run("solve --config " + (kTmp / "sw_hdr" / "sweep.csv").string()) == 2);
}

TEST_CASE("config files are parsed strictly") {
  fs::create_directories(kTmp);
  {
    std::ofstream(kTmp / "good.json") << R"({"n": 2, "cost": "linear:0.5", "s": 0.462})";
    std::ofstream(kTmp / "unknown.json") << R"({"n": 2, "colour": "red"})";
    std::ofstream(kTmp / "broken.json") << R"({"n": 2,)";
    std::ofstream(kTmp / "wrongtype.json") << R"({"n": "two"})";
  }
  CHECK(Run("solve --config " + (kTmp / "good.json").string() + " " + Out("cfg")) == 0);
  CHECK(std::abs(JsonFile(kTmp / "cfg" / "metrics.json").at("eu_a").get<double>() - 0.338) <= 0.003);
  CHECK(Run("solve --config " + (kTmp / "unknown.json").string()) == 2);
  CHECK(Slurp(kTmp / "cli.log").find("colour") != std::string::npos);
  CHECK(Run("solve --config " + (kTmp / "broken.json").string()) == 2);
  CHECK(Run("solve --config " + (kTmp / "wrongtype.json").string()) == 2);
  CHECK(Run("solve --config " + (kTmp / "missing.json").string()) == 2);
}

TEST_CASE("optimize output formats") {
  REQUIRE(Run("optimize --objective auctioneer --n 2 --cost linear:0.5 " + Out("opt")) == 0);
  const auto j = JsonFile(kTmp / "opt" / "optimize.json");
  REQUIRE(j.at("results").size() == 1);
  CHECK(std::abs(j.at("results")[0].at("s_star").get<double>() - 0.462) <= 0.005);

  REQUIRE(Run("optimize --objective all --format csv --cost linear:0.5 " + Out("opt_csv")) == 0);
  const auto csv = Slurp(kTmp / "opt_csv" / "optimize.csv");
  int lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == 6);  // header comment, column names, four objectives
  CHECK(Run("optimize --objective revenue " + Out("bad")) == 2);
  CHECK(Run("optimize --format xml " + Out("bad")) == 2);
}

TEST_CASE("sweep produces one row per cell") {
  REQUIRE(Run("sweep --mu 0.1,0.7 --n 2,10 " + Out("sweep")) == 0);
  const auto csv = Slurp(kTmp / "sweep" / "sweep.csv");
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("# ifa ", 0) == 0);
  std::getline(in, line);
  CHECK(line == "mu,n,objective,s_star,p_star,s_tilde,eu_a_ratio,eu_b_ratio,eu_s_ratio,ed_ratio,flags");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 4);

  REQUIRE(Run("sweep --mu 0:0.2:0.1 --n 3 --objective all --format json " + Out("sweep_json")) == 0);
  const auto j = JsonFile(kTmp / "sweep_json" / "sweep.json");
  CHECK(j.at("rows").size() == 12);
  CHECK(j.at("header").at("config").at("mu").size() == 3);
  REQUIRE(Run("sweep --mu 0.3 --n 2:4 --format json " + Out("sweep_range")) == 0);
  const auto r = JsonFile(kTmp / "sweep_range" / "sweep.json");
  CHECK(r.at("header").at("config").at("n") == Json::parse("[2,3,4]"));
  CHECK(r.at("rows").size() == 3);
  CHECK(Run("sweep --n 5:3 " + Out("bad")) == 2);
  CHECK(Run("sweep --mu 0.5:0.1:0.1 " + Out("bad")) == 2);
  CHECK(Run("sweep --mu 1.2 " + Out("bad")) == 2);
}

TEST_CASE("simulate is byte-identical across runs and thread counts") {
  REQUIRE(Run("simulate --draws 1000 --seed 7 " + Out("sim_a")) == 0);
  REQUIRE(Run("simulate --draws 1000 --seed 7 --threads 3 " + Out("sim_b")) == 0);
  const auto a = Slurp(kTmp / "sim_a" / "simulation.csv");
  CHECK(a == Slurp(kTmp / "sim_b" / "simulation.csv"));
  CHECK(Slurp(kTmp / "sim_a" / "summary.json") == Slurp(kTmp / "sim_b" / "summary.json"));
  int lines = 0;
  for (char c : a) lines += c == '\n';
  CHECK(lines == 1002);
  REQUIRE(Run("simulate --draws 1000 --seed 8 " + Out("sim_c")) == 0);
  CHECK(a != Slurp(kTmp / "sim_c" / "simulation.csv"));
  CHECK(Run("simulate --tick 0 " + Out("bad")) == 2);
  CHECK(Run("simulate --n 21 --draws 10 " + Out("bad")) == 2);
}

TEST_CASE("reproduce reports and artifacts") {
  REQUIRE(Run("reproduce fig1 " + Out("rep"), "rep.log") == 0);
  CHECK(Slurp(kTmp / "rep.log").find("PASS") != std::string::npos);
  const auto fig = Slurp(kTmp / "rep" / "fig1.csv");
  CHECK(fig.rfind("# ifa ", 0) == 0);
  CHECK(fig.find("\nx,y,series\n") != std::string::npos);
  CHECK(Run("reproduce nothing") == 2);
  CHECK(Run("reproduce") == 2);
}

TEST_CASE("help shows defaults") {
  REQUIRE(Run("simulate --help", "help.log") == 0);
  const auto help = Slurp(kTmp / "help.log");
  CHECK(help.find("100000") != std::string::npos);
  CHECK(help.find("linear:0.5") != std::string::npos);
}

}  // TEST_SUITE
