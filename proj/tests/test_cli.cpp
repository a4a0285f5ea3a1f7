// Copyright 2026 The nonstop-carriers Authors
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

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "nonstop/cli.hpp"
#include "nonstop/io.hpp"

using nonstop::io::Json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "nonstop");
  std::ostringstream out, err;
  const int code = nonstop::cli::Run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Square() { return std::string(NONSTOP_CONFIG_DIR) + "/n4_square.json"; }

fs::path Scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("nonstop_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

Json Load(const fs::path& p) { return nonstop::io::ReadJson(p); }

std::string Slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

int Lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("cycles lists (n-1)!/2 tours") {
  const Outcome r = Invoke({"cycles", "--n", "4"});
  CHECK(r.code == 0);
  CHECK(Lines(r.out) == 3);
  CHECK(Lines(Invoke({"cycles", "--n", "5"}).out) == 12);
  CHECK(Invoke({"cycles", "--n", "2"}).code == 2);
  CHECK(Invoke({"cycles", "--n", "11"}).code == 2);
  CHECK(Invoke({"cycles", "--bogus"}).code == 2);
  CHECK(Invoke({}).code == 2);
}

TEST_CASE("cycles ranks the orthogonal square cycle first") {
  const Outcome r = Invoke({"cycles", "--load", Square(), "--json"});
  REQUIRE(r.code == 0);
  const Json rows = Json::parse(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0]["cycle"] == Json::array({1, 2, 3, 4}));
  CHECK(rows[0]["score"].get<double>() > rows[1]["score"].get<double>());
  for (const auto& row : rows) CHECK(row["admissible"] == true);
}

TEST_CASE("plan writes trajectory, bounds and manifest") {
  const fs::path dir = Scratch("plan");
  const Outcome r = Invoke({"plan", "--load", Square(), "--out", dir.string()});
  REQUIRE(r.code == 0);
  const Json bounds = Load(dir / "bounds.json");
  for (const auto& c : bounds["carriers"]) CHECK(c["speed_min_mps"].get<double>() > 0.0);
  CHECK(bounds["cycle"] == Json::array({1, 2, 3, 4}));
  CHECK(Load(dir / "verification.json")["passed"] == true);

  const Json manifest = Load(dir / "manifest.json");
  CHECK(manifest["outputs"] == Json::array({"trajectory.csv", "bounds.json", "verification.json"}));
  CHECK(manifest["config_hash"] == nonstop::io::ConfigHash(manifest["config"]));
  CHECK(manifest.contains("started_at"));
  CHECK(manifest.contains("finished_at"));
  CHECK(manifest["tool_version"].is_string());

  std::istringstream csv(Slurp(dir / "trajectory.csv"));
  const auto table = nonstop::io::ReadCsv(csv);
  CHECK(table.header.size() == 41);
  CHECK(table.rows.size() == 1001);
  fs::remove_all(dir);
}

TEST_CASE("doubling xi doubles the reported speed bound") {
  const fs::path slow = Scratch("xi2"), fast = Scratch("xi4");
  REQUIRE(Invoke({"plan", "--load", Square(), "--xi", "2", "--out", slow.string()}).code == 0);
  REQUIRE(Invoke({"plan", "--load", Square(), "--xi", "4", "--out", fast.string()}).code == 0);
  const Json a = Load(slow / "bounds.json")["carriers"];
  const Json b = Load(fast / "bounds.json")["carriers"];
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(b[i]["speed_min_mps"].get<double>() ==
          doctest::Approx(2.0 * a[i]["speed_min_mps"].get<double>()).epsilon(1e-9));
  }
  fs::remove_all(slow);
  fs::remove_all(fast);
}

TEST_CASE("plan input errors exit with code 2") {
  const fs::path dir = Scratch("bad");
  CHECK(Invoke({"plan", "--load", Square(), "--cycle", "1,2,3", "--out", dir.string()}).code == 2);
  CHECK(Invoke({"plan", "--load", "/nonexistent.json"}).code == 2);
  CHECK(Invoke({"plan", "--out", dir.string()}).code == 2);
  CHECK(Invoke({"plan", "--load", Square(), "--coloring", "rainbow"}).code == 2);
  CHECK(Invoke({"plan", "--load", Square(), "--amplitude", "-1", "--out", dir.string()}).code == 2);
  fs::remove_all(dir);
}

TEST_CASE("verify prints a report and signals failure with code 3") {
  const Outcome ok = Invoke({"verify", "--regular", "5"});
  REQUIRE(ok.code == 0);
  const Json j = Json::parse(ok.out);
  CHECK(j["passed"] == true);
  CHECK(j["nullspace_residual"].get<double>() <= 1e-10);

  // A zero amplitude makes every carrier hover, so the non-stop check fails.
  CHECK(Invoke({"verify", "--regular", "4", "--amplitude", "0"}).code == 3);
  const fs::path dir = Scratch("hover_plan");
  CHECK(Invoke({"plan", "--regular", "4", "--amplitude", "0", "--out", dir.string()}).code == 3);
  CHECK(Load(dir / "manifest.json")["outputs"].size() == 3);
  fs::remove_all(dir);
}

TEST_CASE("simulate writes series, metrics and manifest") {
  const fs::path dir = Scratch("sim");
  const Outcome r = Invoke({"simulate", "--load", Square(), "--duration", "30", "--out", dir.string()});
  REQUIRE(r.code == 0);
  const Json m = Load(dir / "metrics.json");
  for (const auto& v : m["min_speed_mps"]) CHECK(v.get<double>() > 0.0);
  CHECK(m["max_e_pl_m"].get<double>() < 0.08);
  const Json manifest = Load(dir / "manifest.json");
  CHECK(manifest["outputs"] == Json::array({"series.csv", "metrics.json"}));
  CHECK(manifest["seed"] == 1);
  std::istringstream csv(Slurp(dir / "series.csv"));
  const auto table = nonstop::io::ReadCsv(csv);
  CHECK(table.header.back() == "yaw");
  CHECK(table.header.size() == 47);
  fs::remove_all(dir);
}

TEST_CASE("simulate hover without noise settles at the static sag") {
  const fs::path dir = Scratch("hover");
  const Outcome r = Invoke({"simulate", "--load", Square(), "--noise-pos", "0", "--noise-vel", "0",
                            "--amplitude", "0", "--out", dir.string()});
  REQUIRE(r.code == 0);
  const Json m = Load(dir / "metrics.json");
  const double sag = 9.81 / 4.0 * (1.0 / 100.0 + 1.0 / 500.0);
  CHECK(m["final_e_pl_m"].get<double>() == doctest::Approx(sag).epsilon(1e-3));
  CHECK(m["max_e_rl_deg"].get<double>() < 0.1);
  fs::remove_all(dir);
}

TEST_CASE("simulate is reproducible from seed") {
  const fs::path a = Scratch("seed_a"), b = Scratch("seed_b");
  REQUIRE(Invoke({"simulate", "--load", Square(), "--seed", "7", "--duration", "5", "--out", a.string()}).code == 0);
  REQUIRE(Invoke({"simulate", "--load", Square(), "--seed", "7", "--duration", "5", "--out", b.string()}).code == 0);
  CHECK(Slurp(a / "metrics.json") == Slurp(b / "metrics.json"));
  CHECK(Slurp(a / "series.csv") == Slurp(b / "series.csv"));
  CHECK(Load(a / "manifest.json")["config_hash"] == Load(b / "manifest.json")["config_hash"]);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("simulate flags override the config file") {
  const fs::path dir = Scratch("override");
  const fs::path cfg = Scratch("override_cfg");
  fs::create_directories(cfg);
  std::ofstream(cfg / "sim.json") << R"({"kp_n_per_m": 50, "duration_s": 1, "seed": 3})";
  REQUIRE(Invoke({"simulate", "--load", Square(), "--sim-config", (cfg / "sim.json").string(),
                  "--seed", "4", "--out", dir.string()})
              .code == 0);
  const Json sim = Load(dir / "manifest.json")["config"]["sim"];
  CHECK(sim["kp_n_per_m"] == 50.0);
  CHECK(sim["duration_s"] == 1.0);
  CHECK(sim["seed"] == 4);
  fs::remove_all(dir);
  fs::remove_all(cfg);
}

TEST_CASE("divergence exits with code 4") {
  const fs::path dir = Scratch("diverge");
  CHECK(Invoke({"simulate", "--load", Square(), "--dt", "0.2", "--duration", "20", "--out", dir.string()})
            .code == 4);
  fs::remove_all(dir);
}

TEST_CASE("output directory defaults to the environment variable") {
  const fs::path dir = Scratch("env");
  ::setenv(nonstop::cli::kOutDirEnv, dir.string().c_str(), 1);
  const Outcome r = Invoke({"plan", "--regular", "4"});
  ::unsetenv(nonstop::cli::kOutDirEnv);
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "manifest.json"));
  fs::remove_all(dir);
}

TEST_CASE("square sweep favors the orthogonal cycle") {
  const fs::path dir = Scratch("sweep4");
  REQUIRE(Invoke({"sweep", "--load", Square(), "--out", dir.string()}).code == 0);
  const Json summary = Load(dir / "summary.json");
  REQUIRE(summary.size() == 3);
  auto min_speed = [](const Json& row) {
    const auto v = row["metrics"]["min_speed_mps"].get<std::vector<double>>();
    return *std::min_element(v.begin(), v.end());
  };
  CHECK(summary[0]["cycle"] == Json::array({1, 2, 3, 4}));
  CHECK(min_speed(summary[0]) > min_speed(summary[1]));
  CHECK(min_speed(summary[0]) > min_speed(summary[2]));
  const Json manifest = Load(dir / "manifest.json");
  CHECK(manifest["config"]["coloring"] == "universal");
  CHECK(manifest["skipped_cycles"].empty());
  CHECK(Lines(Slurp(dir / "sweep.csv")) == 4);
  fs::remove_all(dir);
}

TEST_CASE("five-carrier sweep runs all twelve cycles") {
  const fs::path dir = Scratch("sweep5");
  REQUIRE(Invoke({"sweep", "--sample-n", "5", "--sample-seed", "2", "--duration", "5", "--out", dir.string()})
              .code == 0);
  const Json summary = Load(dir / "summary.json");
  CHECK(summary.size() == 12);
  std::set<std::uint64_t> seeds;
  for (const auto& row : summary) {
    seeds.insert(row["seed"].get<std::uint64_t>());
    const Json q = row["e_pl_m"];
    CHECK(q["min"] <= q["q1"]);
    CHECK(q["q1"] <= q["median"]);
    CHECK(q["median"] <= q["q3"]);
    CHECK(q["q3"] <= q["max"]);
  }
  CHECK(seeds.size() == 12);
  fs::remove_all(dir);
}

TEST_CASE("sweeps are independent of thread count") {
  const fs::path one = Scratch("t1"), many = Scratch("t4");
  REQUIRE(Invoke({"sweep", "--regular", "4", "--duration", "2", "--threads", "1", "--out", one.string()}).code == 0);
  REQUIRE(Invoke({"sweep", "--regular", "4", "--duration", "2", "--threads", "4", "--out", many.string()}).code == 0);
  CHECK(Slurp(one / "sweep.csv") == Slurp(many / "sweep.csv"));
  CHECK(Slurp(one / "summary.json") == Slurp(many / "summary.json"));
  fs::remove_all(one);
  fs::remove_all(many);
}

TEST_CASE("sweep lists inadmissible cycles in the manifest") {
  const fs::path dir = Scratch("sweep_skip");
  const fs::path load = Scratch("sweep_skip_load");
  fs::create_directories(load);
  std::ofstream(load / "line.json")
      << R"({"mass_kg": 1, "attachments": [[-1,0,0],[0,0,0],[1,0,0],[0,1,0.5]]})";
  REQUIRE(Invoke({"sweep", "--load", (load / "line.json").string(), "--duration", "1", "--out", dir.string()})
              .code == 0);
  const Json manifest = Load(dir / "manifest.json");
  CHECK_FALSE(manifest["skipped_cycles"].empty());
  CHECK(Load(dir / "summary.json").size() + manifest["skipped_cycles"].size() == 3);
  fs::remove_all(dir);
  fs::remove_all(load);
}

TEST_CASE("the installed binary uses the same exit codes") {
  const std::string bin = NONSTOP_BINARY;
  CHECK(std::system((bin + " cycles --n 4 > /dev/null").c_str()) == 0);
  const int status = std::system((bin + " cycles --n 2 > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(status) == 2);
}
