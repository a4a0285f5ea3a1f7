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

#include "nonstop/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <iomanip>
#include <ostream>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "nonstop/geom.hpp"
#include "nonstop/graph.hpp"
#include "nonstop/io.hpp"
#include "nonstop/plan.hpp"
#include "nonstop/sim.hpp"
#include "nonstop/statics.hpp"
#include "nonstop/verify.hpp"

#ifndef NONSTOP_VERSION
#define NONSTOP_VERSION "0.0.0"
#endif

namespace nonstop::cli {

namespace fs = std::filesystem;
using io::Json;

namespace {

// Raised when verification of a produced plan fails.
struct VerificationFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LoadOptions {
  std::string file;
  int sample_n = 0;
  std::uint64_t sample_seed = 1;
  int regular_n = 0;
};

struct PlanOptions {
  std::string cycle = "auto";
  std::string coloring = "minimal";
  double amplitude = plan::kDefaultAmplitude;
  double xi = plan::kDefaultFrequency;
  double cable_length = plan::kDefaultCableLength;
};

struct SimOptions {
  std::string config_file;
  std::optional<double> noise_pos, noise_vel, kp, kd, dt, duration;
  std::optional<std::uint64_t> seed;
  std::optional<int> record_every;
  bool bilateral = false;
};

void AddLoadOptions(CLI::App* cmd, LoadOptions& o) {
  auto* file = cmd->add_option("--load", o.file, "Load config JSON");
  auto* sample = cmd->add_option("--sample-n", o.sample_n,
                                 "Random attachment layout with this many carriers");
  cmd->add_option("--sample-seed", o.sample_seed, "Seed for --sample-n");
  auto* regular = cmd->add_option("--regular", o.regular_n,
                                  "Regular planar polygon layout, radius 1.2 m");
  file->excludes(sample)->excludes(regular);
  sample->excludes(regular);
}

void AddPlanOptions(CLI::App* cmd, PlanOptions& o) {
  cmd->add_option("--cycle", o.cycle, "auto or a 1-based tour such as 1,2,3,4");
  cmd->add_option("--coloring", o.coloring, "minimal or universal")
      ->check(CLI::IsMember({"minimal", "universal"}));
  cmd->add_option("--amplitude", o.amplitude, "Coefficient amplitude A [N]");
  cmd->add_option("--xi", o.xi, "Angular frequency [rad/s]");
  cmd->add_option("--cable-length", o.cable_length, "Planner cable length [m]");
}

void AddSimOptions(CLI::App* cmd, SimOptions& o) {
  cmd->add_option("--sim-config", o.config_file, "Simulation config JSON");
  cmd->add_option("--noise-pos", o.noise_pos, "Position noise std [m]");
  cmd->add_option("--noise-vel", o.noise_vel, "Velocity noise std [m/s]");
  cmd->add_option("--kp", o.kp, "Proportional gain [N/m]");
  cmd->add_option("--kd", o.kd, "Derivative gain [N s/m]");
  cmd->add_option("--dt", o.dt, "Integrator step [s]");
  cmd->add_option("--duration", o.duration, "Simulated time [s]");
  cmd->add_option("--seed", o.seed, "Noise seed");
  cmd->add_option("--record-every", o.record_every, "Keep every k-th step in the series");
  cmd->add_flag("--bilateral-springs", o.bilateral, "Cables may push");
}

LoadModel ResolveLoad(const LoadOptions& o) {
  if (!o.file.empty()) return io::ReadLoadModel(o.file);
  sim::AttachmentSampler sampler;
  if (o.sample_n > 0) {
    sampler.n = o.sample_n;
    sampler.seed = o.sample_seed;
  } else if (o.regular_n > 0) {
    sampler.n = o.regular_n;
    sampler.max_jitter = 0.0;
    sampler.max_height = 0.0;
  } else {
    throw InputError("a load is required: --load, --sample-n or --regular");
  }
  return sim::MakeReferenceLoad(sim::SampleAttachments(sampler));
}

bool HasLoad(const LoadOptions& o) {
  return !o.file.empty() || o.sample_n > 0 || o.regular_n > 0;
}

sim::SimConfig ResolveSim(const SimOptions& o) {
  sim::SimConfig cfg;
  if (!o.config_file.empty()) cfg = io::SimConfigFromJson(io::ReadJson(o.config_file));
  if (o.noise_pos) cfg.noise_position_std = *o.noise_pos;
  if (o.noise_vel) cfg.noise_velocity_std = *o.noise_vel;
  if (o.kp) cfg.kp = *o.kp;
  if (o.kd) cfg.kd = *o.kd;
  if (o.dt) cfg.dt = *o.dt;
  if (o.duration) cfg.duration = *o.duration;
  if (o.seed) cfg.seed = *o.seed;
  if (o.record_every) cfg.record_every = *o.record_every;
  if (o.bilateral) cfg.bilateral_springs = true;
  cfg.Validate();
  return cfg;
}

graph::ColoringMode ParseColoring(const std::string& s) {
  return s == "universal" ? graph::ColoringMode::kUniversal
                          : graph::ColoringMode::kMinimal;
}

struct RankedCycle {
  graph::HamiltonianCycle cycle;
  statics::AdmissibilityReport report;
};

// Admissible cycles first, by descending score, ties broken by tour.
std::vector<RankedCycle> RankCycles(const LoadModel& load) {
  const statics::GraspMatrix grasp = statics::BuildGraspMatrix(load);
  const statics::EquilibriumOffset offset = statics::ComputeEquilibriumOffset(grasp, load);
  std::vector<RankedCycle> ranked;
  for (auto& cycle : graph::EnumerateCycles(load.size())) {
    const statics::NullspaceBasis basis = statics::BuildNullspaceBasis(cycle, load);
    ranked.push_back({cycle, statics::CheckAdmissibility(basis, offset.per_carrier)});
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const RankedCycle& a, const RankedCycle& b) {
    if (a.report.score != b.report.score) return a.report.score > b.report.score;
    return a.cycle < b.cycle;
  });
  return ranked;
}

graph::HamiltonianCycle SelectCycle(const LoadModel& load, const std::string& selector) {
  if (selector != "auto") {
    graph::HamiltonianCycle cycle = io::ParseCycle(selector);
    if (cycle.size() != load.size()) {
      throw InputError("--cycle must visit all " + std::to_string(load.size()) +
                       " carriers exactly once");
    }
    return cycle;
  }
  const std::vector<RankedCycle> ranked = RankCycles(load);
  if (ranked.empty() || !ranked.front().report.admissible) {
    throw InputError("no admissible Hamiltonian cycle for this load");
  }
  return ranked.front().cycle;
}

plan::ForcePlan MakePlan(const LoadModel& load, const PlanOptions& o) {
  const graph::HamiltonianCycle cycle = SelectCycle(load, o.cycle);
  const graph::EdgeColoring coloring = graph::ColorEdges(cycle, ParseColoring(o.coloring));
  return plan::BuildPlan(load, cycle, coloring, o.amplitude, o.xi, o.cable_length);
}

Json PlanConfigJson(const plan::ForcePlan& p, const PlanOptions& o) {
  return Json{{"cycle", io::CycleToJson(p.cycle)},
              {"coloring", o.coloring},
              {"amplitude_n", o.amplitude},
              {"xi_rad_per_s", o.xi},
              {"cable_length_m", o.cable_length},
              {"phases_rad", p.library.phases}};
}

std::string TourString(const graph::HamiltonianCycle& c) {
  std::string s;
  for (int v : c.OneBasedTour()) s += (s.empty() ? "" : "-") + std::to_string(v);
  return s;
}

std::string UtcNow() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

fs::path OutDir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
  return "nonstop_out";
}

std::string CommandLine(const std::vector<std::string>& args) {
  std::string s;
  for (const auto& a : args) s += (s.empty() ? "" : " ") + a;
  return s;
}

class Manifest {
 public:
  Manifest(const std::vector<std::string>& args, Json config, std::uint64_t seed)
      : started_(UtcNow()), command_(CommandLine(args)), config_(std::move(config)), seed_(seed) {}

  void AddOutput(const fs::path& p) { outputs_.push_back(p.filename().string()); }
  void Set(const std::string& key, Json value) { extra_[key] = std::move(value); }

  void Write(const fs::path& dir) const {
    Json j{{"config_hash", io::ConfigHash(config_)},
           {"seed", seed_},
           {"tool_version", NONSTOP_VERSION},
           {"command", command_},
           {"started_at", started_},
           {"finished_at", UtcNow()},
           {"outputs", outputs_},
           {"config", config_}};
    for (auto it = extra_.begin(); it != extra_.end(); ++it) j[it.key()] = it.value();
    io::WriteFileAtomic(dir / "manifest.json", j.dump(2) + "\n");
  }

 private:
  std::string started_;
  std::string command_;
  Json config_;
  std::uint64_t seed_;
  std::vector<std::string> outputs_;
  Json extra_ = Json::object();
};

void WriteOutput(Manifest& manifest, const fs::path& path, const std::string& contents) {
  io::WriteFileAtomic(path, contents);
  manifest.AddOutput(path);
}

std::string CsvString(const io::CsvTable& table) {
  std::ostringstream os;
  io::WriteCsv(os, table);
  return os.str();
}

// ---------------------------------------------------------------- commands

int CmdCycles(int n, const LoadOptions& lo, bool as_json, std::ostream& out) {
  if (!HasLoad(lo)) {
    const auto cycles = graph::EnumerateCycles(n);
    if (as_json) {
      Json rows = Json::array();
      for (const auto& c : cycles) rows.push_back(io::CycleToJson(c));
      out << rows.dump() << '\n';
      return kOk;
    }
    for (std::size_t k = 0; k < cycles.size(); ++k) {
      out << k + 1 << '\t' << TourString(cycles[k]) << '\n';
    }
    return kOk;
  }
  const LoadModel load = ResolveLoad(lo);
  if (n != 0 && n != load.size()) throw InputError("--n does not match the load");
  const auto ranked = RankCycles(load);
  if (as_json) {
    Json rows = Json::array();
    for (const auto& r : ranked) {
      Json row = io::ToJson(r.report);
      row["cycle"] = io::CycleToJson(r.cycle);
      rows.push_back(row);
    }
    out << rows.dump() << '\n';
    return kOk;
  }
  out << "rank\ttour\tadmissible\tscore\tflags\n";
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    const auto& r = ranked[k];
    std::string flags;
    for (std::size_t i = 0; i < r.report.carriers.size(); ++i) {
      const auto& c = r.report.carriers[i];
      if (c.aligned_triple) flags += "aligned@" + std::to_string(i + 1) + " ";
      if (c.f0_in_span) flags += "f0span@" + std::to_string(i + 1) + " ";
    }
    out << k + 1 << '\t' << TourString(r.cycle) << '\t'
        << (r.report.admissible ? "yes" : "no") << '\t' << std::setprecision(6)
        << r.report.score << '\t' << (flags.empty() ? "-" : flags) << '\n';
  }
  return kOk;
}

int CmdPlan(const std::vector<std::string>& args, const LoadOptions& lo, const PlanOptions& po,
            std::optional<double> duration, std::optional<double> dt, int samples,
            const std::string& out_flag, std::ostream& out) {
  const LoadModel load = ResolveLoad(lo);
  const plan::ForcePlan p = MakePlan(load, po);
  const double period = p.Period();
  const double horizon = duration.value_or(period);
  const double step = dt.value_or(period / 1000.0);
  const plan::PlanBounds bounds = plan::ComputeBounds(p, samples);
  const verify::VerificationReport report = verify::VerifyPlan(p, samples);

  const fs::path dir = OutDir(out_flag);
  Json config{{"load", io::ToJson(load)}, {"plan", PlanConfigJson(p, po)},
              {"duration_s", horizon}, {"dt_s", step}, {"samples_per_period", samples}};
  Manifest manifest(args, config, 0);
  WriteOutput(manifest, dir / "trajectory.csv",
              CsvString(io::TrajectoryTable(plan::SampleTrajectory(p, 0.0, horizon, step))));
  Json bounds_json = io::ToJson(bounds);
  bounds_json["cycle"] = io::CycleToJson(p.cycle);
  bounds_json["period_s"] = period;
  bounds_json["admissibility"] = io::ToJson(p.admissibility);
  WriteOutput(manifest, dir / "bounds.json", bounds_json.dump(2) + "\n");
  WriteOutput(manifest, dir / "verification.json", io::ToJson(report).dump(2) + "\n");
  manifest.Write(dir);

  out << "cycle " << TourString(p.cycle) << ", period " << period << " s\n";
  for (int i = 0; i < p.size(); ++i) {
    const auto& b = bounds.carriers[i];
    out << "carrier " << i + 1 << ": T in [" << b.tension_min << ", " << b.tension_max
        << "] N, speed >= " << b.speed_min << " m/s\n";
  }
  if (!report.passed()) throw VerificationFailed("plan verification failed");
  return kOk;
}

int CmdVerify(const LoadOptions& lo, const PlanOptions& po, int samples, std::ostream& out) {
  const LoadModel load = ResolveLoad(lo);
  const plan::ForcePlan p = MakePlan(load, po);
  const verify::VerificationReport report = verify::VerifyPlan(p, samples);
  Json j = io::ToJson(report);
  j["cycle"] = io::CycleToJson(p.cycle);
  j["nullspace_residual"] = verify::VerifyNullspace(load, p.cycle);
  out << j.dump(2) << '\n';
  return report.passed() ? kOk : kVerificationFailure;
}

int CmdSimulate(const std::vector<std::string>& args, const LoadOptions& lo,
                const PlanOptions& po, const SimOptions& so, const std::string& out_flag,
                std::ostream& out) {
  const LoadModel load = ResolveLoad(lo);
  const plan::ForcePlan p = MakePlan(load, po);
  const sim::SimConfig cfg = ResolveSim(so);
  const fs::path dir = OutDir(out_flag);
  Json config{{"load", io::ToJson(load)}, {"plan", PlanConfigJson(p, po)}, {"sim", io::ToJson(cfg)}};
  Manifest manifest(args, config, cfg.seed);
  const sim::SimResult result = sim::Run(p, cfg);
  WriteOutput(manifest, dir / "series.csv", CsvString(io::SimSeriesTable(result.series)));
  WriteOutput(manifest, dir / "metrics.json", io::ToJson(result.metrics).dump(2) + "\n");
  manifest.Write(dir);
  const auto& m = result.metrics;
  out << "max e_pL " << m.max_position_error << " m, max e_RL " << m.max_attitude_error_deg
      << " deg, min speed " << *std::min_element(m.min_speed.begin(), m.min_speed.end())
      << " m/s\n";
  return kOk;
}

struct Quartiles {
  double min, q1, median, q3, max;
};

Quartiles ComputeQuartiles(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  auto at = [&](double q) {
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
  };
  return {v.front(), at(0.25), at(0.5), at(0.75), v.back()};
}

Json ToJson(const Quartiles& q) {
  return Json{{"min", q.min}, {"q1", q.q1}, {"median", q.median}, {"q3", q.q3}, {"max", q.max}};
}

struct SweepRow {
  int index = 0;
  graph::HamiltonianCycle cycle;
  std::uint64_t seed = 0;
  sim::SimMetrics metrics;
  Quartiles position, attitude_deg;
  std::string error;
};

std::uint64_t DeriveSeed(std::uint64_t seed, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

int CmdSweep(const std::vector<std::string>& args, const LoadOptions& lo, const PlanOptions& po,
             const SimOptions& so, const std::string& cycle_list, unsigned threads,
             const std::string& out_flag, std::ostream& out) {
  const LoadModel load = ResolveLoad(lo);
  const sim::SimConfig base = ResolveSim(so);
  std::vector<graph::HamiltonianCycle> cycles;
  if (!cycle_list.empty()) {
    std::stringstream ss(cycle_list);
    std::string item;
    while (std::getline(ss, item, ';')) {
      cycles.push_back(io::ParseCycle(item));
      if (cycles.back().size() != load.size()) throw InputError("cycle size does not match the load");
    }
  } else {
    if (load.size() > 8) throw InputError("sweeps enumerate cycles only for n <= 8; pass --cycles");
    cycles = graph::EnumerateCycles(load.size());
  }

  Json skipped = Json::array();
  std::vector<SweepRow> rows;
  std::vector<plan::ForcePlan> plans;
  for (std::size_t k = 0; k < cycles.size(); ++k) {
    const auto coloring = graph::ColorEdges(cycles[k], ParseColoring(po.coloring));
    try {
      plans.push_back(plan::BuildPlan(load, cycles[k], coloring, po.amplitude, po.xi,
                                      po.cable_length));
      SweepRow row{static_cast<int>(k + 1), cycles[k], DeriveSeed(base.seed, static_cast<int>(k + 1)),
                   {}, {}, {}, {}};
      rows.push_back(std::move(row));
    } catch (const plan::InadmissibleCycleError& e) {
      skipped.push_back({{"index", k + 1}, {"cycle", io::CycleToJson(cycles[k])}, {"reason", e.what()}});
    }
  }

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::size_t next = 0;
  std::mutex mu;
  auto worker = [&] {
    for (;;) {
      std::size_t k;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next >= rows.size()) return;
        k = next++;
      }
      sim::SimConfig cfg = base;
      cfg.seed = rows[k].seed;
      try {
        const sim::SimResult r = sim::Run(plans[k], cfg);
        rows[k].metrics = r.metrics;
        std::vector<double> att(r.series.attitude_error);
        for (double& a : att) a *= 180.0 / std::numbers::pi;
        rows[k].position = ComputeQuartiles(r.series.position_error);
        rows[k].attitude_deg = ComputeQuartiles(att);
      } catch (const sim::DivergenceError& e) {
        rows[k].error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::min<std::size_t>(threads, rows.size()); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  const fs::path dir = OutDir(out_flag);
  Json config{{"load", io::ToJson(load)}, {"coloring", po.coloring}, {"amplitude_n", po.amplitude},
              {"xi_rad_per_s", po.xi}, {"cable_length_m", po.cable_length}, {"sim", io::ToJson(base)}};
  Manifest manifest(args, config, base.seed);
  manifest.Set("skipped_cycles", skipped);

  std::ostringstream csv;
  csv << "index,tour,seed,max_e_pl_m,mean_e_pl_m,max_e_rl_deg,min_speed_mps,status\n";
  Json summary = Json::array();
  bool diverged = false;
  for (const auto& r : rows) {
    const double min_speed =
        r.metrics.min_speed.empty() ? 0.0
                                    : *std::min_element(r.metrics.min_speed.begin(), r.metrics.min_speed.end());
    const std::string status = r.error.empty() ? "ok" : "diverged";
    diverged = diverged || !r.error.empty();
    csv << r.index << ',' << TourString(r.cycle) << ',' << r.seed << ','
        << io::FormatDouble(r.metrics.max_position_error) << ','
        << io::FormatDouble(r.metrics.mean_position_error) << ','
        << io::FormatDouble(r.metrics.max_attitude_error_deg) << ',' << io::FormatDouble(min_speed)
        << ',' << status << '\n';
    Json entry{{"index", r.index}, {"cycle", io::CycleToJson(r.cycle)}, {"seed", r.seed}, {"status", status}};
    if (r.error.empty()) {
      entry["e_pl_m"] = ToJson(r.position);
      entry["e_rl_deg"] = ToJson(r.attitude_deg);
      entry["metrics"] = io::ToJson(r.metrics);
    } else {
      entry["error"] = r.error;
    }
    summary.push_back(entry);
    out << r.index << '\t' << TourString(r.cycle) << '\t' << status << "\tmax e_pL "
        << r.metrics.max_position_error << " m\tmax e_RL " << r.metrics.max_attitude_error_deg
        << " deg\tmin speed " << min_speed << " m/s\n";
  }
  WriteOutput(manifest, dir / "sweep.csv", csv.str());
  WriteOutput(manifest, dir / "summary.json", summary.dump(2) + "\n");
  manifest.Write(dir);
  return diverged ? kSimulationDivergence : kOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Periodic non-stop carrier trajectories for a cable-suspended load", "nonstop"};
  app.require_subcommand(1);
  app.set_version_flag("--version", NONSTOP_VERSION);

  LoadOptions lo;
  PlanOptions po;
  SimOptions so;
  std::string out_flag;
  int samples = plan::kDefaultSamplesPerPeriod;

  int cycles_n = 0;
  bool cycles_json = false;
  auto* cycles = app.add_subcommand("cycles", "List Hamiltonian cycles, ranked when a load is given");
  cycles->add_option("--n", cycles_n, "Number of carriers");
  cycles->add_flag("--json", cycles_json, "Emit JSON");
  AddLoadOptions(cycles, lo);

  std::optional<double> plan_duration, plan_dt;
  auto* plan_cmd = app.add_subcommand("plan", "Build, verify and export a trajectory plan");
  AddLoadOptions(plan_cmd, lo);
  AddPlanOptions(plan_cmd, po);
  plan_cmd->add_option("--duration", plan_duration, "Exported horizon [s], default one period");
  plan_cmd->add_option("--dt", plan_dt, "Export step [s], default period/1000");
  plan_cmd->add_option("--samples-per-period", samples, "Verification sampling density");
  plan_cmd->add_option("--out", out_flag, "Output directory");

  auto* verify_cmd = app.add_subcommand("verify", "Verify a plan and print the report");
  AddLoadOptions(verify_cmd, lo);
  AddPlanOptions(verify_cmd, po);
  verify_cmd->add_option("--samples-per-period", samples, "Verification sampling density");

  auto* simulate = app.add_subcommand("simulate", "Closed-loop simulation of a plan");
  AddLoadOptions(simulate, lo);
  AddPlanOptions(simulate, po);
  AddSimOptions(simulate, so);
  simulate->add_option("--out", out_flag, "Output directory");

  std::string cycle_list;
  unsigned threads = 0;
  auto* sweep = app.add_subcommand("sweep", "Simulate every admissible cycle");
  AddLoadOptions(sweep, lo);
  AddPlanOptions(sweep, po);
  AddSimOptions(sweep, so);
  sweep->add_option("--cycles", cycle_list, "Explicit tours, e.g. 1,2,3,4;1,3,2,4");
  sweep->add_option("--threads", threads, "Worker threads (0 = hardware)");
  sweep->add_option("--out", out_flag, "Output directory");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    // Sweeps default to the n-phase library so one assignment fits every cycle.
    if (*sweep && sweep->count("--coloring") == 0) po.coloring = "universal";
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*cycles) return CmdCycles(cycles_n, lo, cycles_json, out);
    if (*plan_cmd) return CmdPlan(args, lo, po, plan_duration, plan_dt, samples, out_flag, out);
    if (*verify_cmd) return CmdVerify(lo, po, samples, out);
    if (*simulate) return CmdSimulate(args, lo, po, so, out_flag, out);
    if (*sweep) return CmdSweep(args, lo, po, so, cycle_list, threads, out_flag, out);
  } catch (const VerificationFailed& e) {
    err << "error: " << e.what() << '\n';
    return kVerificationFailure;
  } catch (const sim::DivergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kSimulationDivergence;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const statics::DegenerateLoadError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const plan::InadmissibleCycleError& e) {
    err << "error: inadmissible cycle: " << e.what() << '\n';
    return kInputError;
  } catch (const plan::VanishingTensionError& e) {
    err << "error: " << e.what() << '\n';
    return kVerificationFailure;
  } catch (const sim::GeometryError& e) {
    err << "error: " << e.what() << '\n';
    return kSimulationDivergence;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace nonstop::cli
