// Copyright 2026 The cohrel Authors
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

#include "test_support.hpp"

#include "cohrel/sweep.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;
using Catch::Matchers::WithinAbs;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string("\"") + COHREL_CLI_PATH + "\" " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::map<std::string, std::string> fields(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    const auto pos = line.find(": ");
    if (pos != std::string::npos) out[line.substr(0, pos)] = line.substr(pos + 2);
  }
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("cohrel_cli_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("eval examples", "[cli]") {
  SECTION("flat GHZ") {
    const auto r = run("eval --subsystem ab1c1 --alpha 1 --rb 0 --rc 0");
    REQUIRE(r.code == 0);
    const auto f = fields(r.out);
    CHECK_THAT(std::stod(f.at("concurrence_sim")), WithinAbs(1.0, 1e-12));
    CHECK_THAT(std::stod(f.at("concurrence_paper")), WithinAbs(1.0, 1e-12));
    CHECK(f.at("x_shaped") == "true");
  }
  SECTION("inaccessible pair at maximal acceleration") {
    const auto r = run("eval --subsystem ab2c2 --alpha 0.5 --rb 0.7853981633974483 --rc 0.7853981633974483");
    REQUIRE(r.code == 0);
    const auto f = fields(r.out);
    CHECK_THAT(std::stod(f.at("concurrence_sim")), WithinAbs(0.25, 1e-12));
    CHECK_THAT(std::stod(f.at("concurrence_paper")), WithinAbs(0.25, 1e-12));
  }
  SECTION("phase flip at one half") {
    const auto r = run("eval --subsystem ab1c1 --channel phase-flip --pb 0.5 --pc 0.5 --alpha 0.7071067811865476");
    REQUIRE(r.code == 0);
    const auto f = fields(r.out);
    CHECK(std::stod(f.at("concurrence_sim")) == 0.0);
    CHECK(std::stod(f.at("concurrence_paper")) == 0.0);
  }
  SECTION("acceleration triple") {
    const auto f = fields(run("eval --subsystem ab1c1 --accel-b 1,6.283185307179586,1").out);
    CHECK_THAT(std::stod(f.at("r_b")), WithinAbs(0.545207623830583585, 1e-15));
  }
}

TEST_CASE("usage errors exit with 2", "[cli][error]") {
  CHECK(run("").code == 2);
  CHECK(run("eval --bogus").code == 2);
  CHECK(run("eval --alpha 1").code == 2);
  CHECK(run("eval --subsystem abc --alpha 1").code == 2);
  CHECK(run("eval --subsystem ab1c1 --alpha 1.5").code == 2);
  CHECK(run("eval --subsystem ab1c1 --rb 2").code == 2);
  CHECK(run("sweep --alphas x --out -").code == 2);
  CHECK(run("sweep --rb 0.1 --out -").code == 2);
  CHECK(run("verify --channels foo --out -").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("global options are accepted after the subcommand", "[cli]") {
  const auto before = run("--seed 3 --threads 1 sweep --subsystems ab1b2 --alphas 0.5 --r 0.3 --out -");
  const auto after = run("sweep --subsystems ab1b2 --alphas 0.5 --r 0.3 --out - --seed 3 --threads 1");
  REQUIRE(before.code == 0);
  REQUIRE(after.code == 0);
  CHECK(before.out == after.out);
}

TEST_CASE("unwritable output exits with 3", "[cli][error]") {
  const auto dir = scratch("io");
  std::ofstream(dir / "file") << "x";
  CHECK(run("sweep --r 0 --alphas 1 --out " + (dir / "file" / "sub.csv").string()).code == 3);
  CHECK(run("figures --dir " + (dir / "file").string()).code == 3);
}

TEST_CASE("sweep CSV", "[cli]") {
  const auto dir = scratch("sweep");
  const std::string args = "sweep --subsystems ab1c1,ab2c2 --channel phase-flip --alphas 0.5,1 --r 0:0.7853981633974483:5 "
                           "--p 0:1:5 --out ";
  REQUIRE(run("--threads 1 " + args + (dir / "a.csv").string()).code == 0);
  REQUIRE(run("--threads 4 " + args + (dir / "b.csv").string()).code == 0);
  const auto a = slurp(dir / "a.csv");
  CHECK(a == slurp(dir / "b.csv"));
  CHECK(a.starts_with(std::string(cohrel::kSweepHeader) + "\n"));
  CHECK(std::count(a.begin(), a.end(), '\n') == 1 + 2 * 2 * 5 * 5 * 2);
}

TEST_CASE("single-point sweep equals eval", "[cli]") {
  const auto f = fields(run("eval --subsystem ab2c1 --channel damping --alpha 0.7 --rb 0.2 --rc 0.2 --pb 0.3 --pc 0.3").out);
  const auto csv = run("sweep --subsystems ab2c1 --channel damping --alphas 0.7 --r 0.2 --p 0.3 --out -");
  REQUIRE(csv.code == 0);
  std::istringstream in(csv.out);
  std::string header, paper, sim;
  std::getline(in, header);
  std::getline(in, paper);
  std::getline(in, sim);
  CHECK(paper.ends_with("paper," + f.at("concurrence_paper") + "," + f.at("l1_paper")));
  CHECK(sim.ends_with("sim," + f.at("concurrence_sim") + "," + f.at("l1_sim")));
}

TEST_CASE("config file with flag override", "[cli]") {
  const auto dir = scratch("config");
  std::ofstream(dir / "cfg.json") << R"({"threads": 2, "sweep": {"subsystems": ["ab1c1"], "alphas": [0.5],
    "r": [0.0], "channel": "damping", "p": [0.0, 1.0]}})";
  const auto base = run("--config " + (dir / "cfg.json").string() + " sweep --out -");
  REQUIRE(base.code == 0);
  CHECK(std::count(base.out.begin(), base.out.end(), '\n') == 1 + 2 * 2);
  const auto over = run("--config " + (dir / "cfg.json").string() + " sweep --alphas 1 --out -");
  REQUIRE(over.code == 0);
  CHECK(over.out.find("ab1c1,damping,reduced_qubit,1,0,0,0,0,paper,1,") != std::string::npos);
  std::ofstream(dir / "bad.json") << "{nope";
  CHECK(run("--config " + (dir / "bad.json").string() + " sweep --out -").code == 2);
}

TEST_CASE("verify exit codes and report", "[cli]") {
  const auto dir = scratch("verify");
  const std::string grid = " --alphas 0.5,1 --rbs 0,0.5 --rcs 0.3";
  const auto clean = run("verify --subsystems ab1c1,ab1c2,ab2c1,ab2c2 --channels none,damping,phase-flip" + grid +
                         " --out " + (dir / "clean.json").string());
  CHECK(clean.code == 0);
  const auto j = nlohmann::json::parse(slurp(dir / "clean.json"));
  CHECK(j["summary"]["match"] == j["summary"]["records"]);

  const auto mixed = run("verify --subsystems ab1c1,ab1b2 --channels none,bit-flip" + grid + " --out " +
                         (dir / "mixed.json").string());
  CHECK(mixed.code == 0);
  CHECK(nlohmann::json::parse(slurp(dir / "mixed.json"))["summary"]["known_discrepancy"].get<int>() > 0);
  CHECK(run("verify --fail-on-known --subsystems ab1c1,ab1b2 --channels none,bit-flip" + grid + " --out -").code == 1);
}

TEST_CASE("output directory from the environment", "[cli]") {
  const auto dir = scratch("env");
  const std::string cmd = "COHREL_OUTPUT_DIR=" + dir.string() + " \"" + COHREL_CLI_PATH +
                          "\" sweep --subsystems ab1c1 --alphas 1 --r 0 >/dev/null 2>&1";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(dir / "sweep.csv"));
}
