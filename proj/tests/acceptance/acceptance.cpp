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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <future>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "nonstop/verify.hpp"
#include "support.hpp"

using namespace nonstop;
using nonstop::testing::SampledLoad;
using nonstop::testing::SquareLoad;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

plan::ForcePlan Build(const LoadModel& load, const graph::HamiltonianCycle& cycle,
                      graph::ColoringMode mode, double xi = plan::kDefaultFrequency) {
  return plan::BuildPlan(load, cycle, graph::ColorEdges(cycle, mode), plan::kDefaultAmplitude, xi);
}

// Admissible plans over sampled loads (n = 3..7) and the square layout.
std::vector<plan::ForcePlan> Battery() {
  std::vector<plan::ForcePlan> plans;
  auto add = [&](const LoadModel& load, const graph::HamiltonianCycle& cycle) {
    for (auto mode : {graph::ColoringMode::kMinimal, graph::ColoringMode::kUniversal}) {
      try {
        plans.push_back(Build(load, cycle, mode));
      } catch (const plan::InadmissibleCycleError&) {
      }
    }
  };
  for (const auto& cycle : graph::EnumerateCycles(4)) add(SquareLoad(), cycle);
  for (int n = 3; n <= 7; ++n) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const LoadModel load = SampledLoad(n, 100 * n + seed);
      const auto cycles = graph::EnumerateCycles(n);
      for (std::size_t k = 0; k < cycles.size(); k += std::max<std::size_t>(1, cycles.size() / 4)) {
        add(load, cycles[k]);
      }
    }
  }
  return plans;
}

const std::vector<plan::ForcePlan>& SharedBattery() {
  static const std::vector<plan::ForcePlan> battery = Battery();
  return battery;
}

constexpr int kSamples = 10000;

Outcome NullspaceIdentity() {
  double worst = 0.0;
  int loads = 0, cycles = 0, rank_checks = 0, rank_failures = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + trial % 5;
    const LoadModel load = SampledLoad(n, 7000 + trial);
    const Mat g = verify::OracleGraspMatrix(load);
    const auto offsets =
        statics::ComputeEquilibriumOffset(statics::BuildGraspMatrix(load), load).per_carrier;
    ++loads;
    for (const auto& cycle : graph::EnumerateCycles(n)) {
      const statics::NullspaceBasis basis = statics::BuildNullspaceBasis(cycle, load);
      worst = std::max(worst, verify::NullspaceResidual(g, basis.matrix));
      worst = std::max(worst, verify::VerifyNullspace(load, cycle));
      const auto report = statics::CheckAdmissibility(basis, offsets);
      const bool no_aligned = std::none_of(report.carriers.begin(), report.carriers.end(),
                                           [](const auto& c) { return c.aligned_triple; });
      if (no_aligned) {
        ++rank_checks;
        if (Rank(basis.matrix) != n) ++rank_failures;
      }
      ++cycles;
    }
  }
  return {worst <= 1e-10 && rank_failures == 0,
          Fmt("%d loads, %d cycles, max |G N(:,i)| = %.3g, rank(N) = n in %d/%d cases", loads,
              cycles, worst, rank_checks - rank_failures, rank_checks)};
}

Outcome ExampleFidelity() {
  const auto cycle = graph::HamiltonianCycle::FromOneBased({1, 3, 4, 2});
  Eigen::MatrixXi h(4, 4);
  h << 1, 0, 0, -1, 0, 0, -1, 1, -1, 1, 0, 0, 0, -1, 1, 0;
  const bool incidence_ok = graph::Incidence(cycle) == h;
  const bool h_index_ok = cycle.IncomingEdge(0) == 3 && cycle.IncomingEdge(3) == 1;

  const LoadModel load = SampledLoad(4, 31);
  const Mat n = statics::BuildNullspaceBasis(cycle, load).matrix;
  auto b = [&](int i, int j) { return statics::AttachmentDifference(load, i - 1, j - 1); };
  const Vec3 z = Vec3::Zero();
  const Vec3 blocks[4][4] = {{b(1, 3), z, z, -b(2, 1)},
                             {z, z, -b(4, 2), b(2, 1)},
                             {-b(1, 3), b(3, 4), z, z},
                             {z, -b(3, 4), b(4, 2), z}};
  bool blocks_ok = true;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) blocks_ok = blocks_ok && n.block<3, 1>(3 * r, c) == blocks[r][c];
  }
  return {incidence_ok && h_index_ok && blocks_ok,
          Fmt("incidence %s, h-indices %s, nullspace blocks %s", incidence_ok ? "exact" : "WRONG",
              h_index_ok ? "exact" : "WRONG", blocks_ok ? "exact" : "WRONG")};
}

Outcome StaticsInvariance() {
  double worst = 0.0;
  for (const auto& p : SharedBattery()) {
    const Mat g = verify::OracleGraspMatrix(p.load);
    const Vec w0 = p.load.EquilibriumWrench();
    for (int k = 0; k < kSamples; ++k) {
      worst = std::max(worst, (g * plan::StackedForceAt(p, k * p.Period() / kSamples) - w0).norm());
    }
  }
  return {worst <= 1e-9,
          Fmt("%zu plans x %d samples, max |G f(t) - w0| = %.3g N", SharedBattery().size(), kSamples,
              worst)};
}

Outcome NonStopGuarantee() {
  double worst_ratio = 1e300, smallest_bound = 1e300, worst_scaling = 0.0;
  for (const auto& p : SharedBattery()) {
    const plan::PlanBounds bounds = plan::ComputeBounds(p, kSamples);
    for (int i = 0; i < p.size(); ++i) {
      double lowest = 1e300;
      for (int k = 0; k < kSamples; ++k) {
        lowest = std::min(lowest, plan::CarrierStateAt(p, i, k * p.Period() / kSamples).velocity.norm());
      }
      const double bound = bounds.carriers[i].speed_min;
      smallest_bound = std::min(smallest_bound, bound);
      worst_ratio = std::min(worst_ratio, lowest / bound);
    }
    plan::ForcePlan doubled = p;
    doubled.library.frequency *= 2.0;
    const plan::PlanBounds fast = plan::ComputeBounds(doubled, kSamples);
    for (int i = 0; i < p.size(); ++i) {
      const double rel = std::abs(fast.carriers[i].speed_min / (2.0 * bounds.carriers[i].speed_min) - 1.0);
      worst_scaling = std::max(worst_scaling, rel);
    }
  }
  return {smallest_bound > 0.0 && worst_ratio >= 0.99 && worst_scaling <= 1e-9,
          Fmt("min sampled speed / bound = %.4f, smallest bound %.4g m/s, doubling-xi error %.2g",
              worst_ratio, smallest_bound, worst_scaling)};
}

Outcome TensionBounds() {
  int violations = 0;
  double smallest_floor = 1e300;
  for (const auto& p : SharedBattery()) {
    const plan::PlanBounds bounds = plan::ComputeBounds(p, kSamples);
    for (int i = 0; i < p.size(); ++i) {
      const auto& b = bounds.carriers[i];
      smallest_floor = std::min(smallest_floor, b.tension_min);
      // Offset grid so the check does not reuse the bound's own samples.
      for (int k = 0; k < kSamples; ++k) {
        const double t = (k + 0.37) * p.Period() / kSamples;
        const double tension = plan::ForceAt(p, i, t).force.norm();
        if (tension < b.tension_min || tension > b.tension_max) ++violations;
      }
    }
  }
  return {violations == 0 && smallest_floor > 0.0,
          Fmt("%d samples outside [T_min, T_max], smallest T_min %.4g N", violations, smallest_floor)};
}

Outcome Smoothness() {
  const double h = 1e-6;
  double worst_force = 0.0, worst_velocity = 0.0;
  for (const auto& p : SharedBattery()) {
    for (int k = 0; k < kSamples; k += 7) {
      const double t = k * p.Period() / kSamples;
      for (int i = 0; i < p.size(); ++i) {
        const Vec3 fd = (plan::ForceAt(p, i, t + h).force - plan::ForceAt(p, i, t - h).force) / (2 * h);
        worst_force = std::max(worst_force, (fd - plan::ForceAt(p, i, t).rate).cwiseAbs().maxCoeff());
        const Vec3 vd = (plan::CarrierStateAt(p, i, t + h).position -
                         plan::CarrierStateAt(p, i, t - h).position) / (2 * h);
        worst_velocity = std::max(
            worst_velocity, (vd - plan::CarrierStateAt(p, i, t).velocity).cwiseAbs().maxCoeff());
      }
    }
  }
  return {worst_force <= 1e-6 && worst_velocity <= 1e-6,
          Fmt("max FD mismatch: force rate %.3g N/s, carrier velocity %.3g m/s", worst_force,
              worst_velocity)};
}

Outcome CycleCounts() {
  const std::size_t c3 = graph::EnumerateCycles(3).size(), c4 = graph::EnumerateCycles(4).size(),
                    c5 = graph::EnumerateCycles(5).size(), c6 = graph::EnumerateCycles(6).size();
  return {c3 == 1 && c4 == 3 && c5 == 12 && c6 == 60,
          Fmt("n=3..6 -> %zu/%zu/%zu/%zu", c3, c4, c5, c6)};
}

double MinSpeed(const sim::SimMetrics& m) { return *std::min_element(m.min_speed.begin(), m.min_speed.end()); }

Outcome CycleSpeedOrdering() {
  const LoadModel load = SquareLoad();
  double orthogonal = -1.0, best_other = -1.0;
  int orthogonal_count = 0;
  std::ostringstream detail;
  for (const auto& cycle : graph::EnumerateCycles(4)) {
    const plan::ForcePlan p = Build(load, cycle, graph::ColoringMode::kMinimal);
    bool all_orthogonal = true;
    for (const auto& c : p.carriers) {
      all_orthogonal = all_orthogonal && std::abs(c.delta.normalized().dot(c.delta_bar.normalized())) < 1e-9;
    }
    const double v = MinSpeed(sim::Run(p, sim::SimConfig{}).metrics);
    std::string tour;
    for (int x : cycle.OneBasedTour()) tour += std::to_string(x);
    detail << tour << (all_orthogonal ? "*" : "") << " " << Fmt("%.4f", v) << " m/s; ";
    if (all_orthogonal) {
      orthogonal = v;
      ++orthogonal_count;
    } else {
      best_other = std::max(best_other, v);
    }
  }
  detail << "(* = orthogonal pairs)";
  return {orthogonal_count == 1 && orthogonal > best_other, detail.str()};
}

Outcome ErrorEnvelope() {
  struct Job {
    std::uint64_t load_seed;
    int index;
    plan::ForcePlan plan;
  };
  std::vector<Job> jobs;
  int skipped = 0;
  for (std::uint64_t load_seed : {1, 2, 3}) {
    const LoadModel load = SampledLoad(5, load_seed);
    const auto cycles = graph::EnumerateCycles(5);
    for (std::size_t k = 0; k < cycles.size(); ++k) {
      try {
        jobs.push_back({load_seed, static_cast<int>(k + 1),
                        Build(load, cycles[k], graph::ColoringMode::kUniversal)});
      } catch (const plan::InadmissibleCycleError&) {
        ++skipped;
      }
    }
  }
  std::vector<std::future<sim::SimMetrics>> futures;
  for (const Job& job : jobs) {
    futures.push_back(std::async(std::launch::async, [&job] {
      sim::SimConfig cfg;
      cfg.seed = 1000 * job.load_seed + static_cast<std::uint64_t>(job.index);
      cfg.record_every = 1000;
      return sim::Run(job.plan, cfg).metrics;
    }));
  }
  double worst_p = 0.0, worst_r = 0.0;
  int over = 0;
  for (std::size_t k = 0; k < futures.size(); ++k) {
    const sim::SimMetrics m = futures[k].get();
    worst_p = std::max(worst_p, m.max_position_error);
    worst_r = std::max(worst_r, m.max_attitude_error_deg);
    if (m.max_position_error >= 0.08 || m.max_attitude_error_deg >= 6.0) ++over;
  }
  return {over == 0 && skipped == 0 && jobs.size() == 36,
          Fmt("%zu runs (%d inadmissible), worst e_pL %.4f m (< 0.08), worst e_RL %.2f deg (< 6), "
              "%d runs over the envelope",
              jobs.size(), skipped, worst_p, worst_r, over)};
}

Outcome HoverSanity() {
  const LoadModel load = SquareLoad();
  const plan::ForcePlan p = plan::BuildPlan(
      load, graph::EnumerateCycles(4).front(),
      graph::ColorEdges(graph::EnumerateCycles(4).front(), graph::ColoringMode::kMinimal), 0.0);
  sim::SimConfig cfg;
  cfg.noise_position_std = 0.0;
  cfg.noise_velocity_std = 0.0;
  cfg.duration = 30.0;
  const sim::SimMetrics m = sim::Run(p, cfg).metrics;
  const double tension = load.mass * load.gravity / 4.0;
  const double sag = tension / cfg.kp + tension / cfg.cable_stiffness;
  return {m.max_position_error <= 1e-3 && m.max_attitude_error_deg <= 0.1,
          Fmt("max e_pL %.5f m (<= 0.001), max e_RL %.4f deg (<= 0.1); steady offset %.5f m vs "
              "T/Kp + T/Kc = %.5f m",
              m.max_position_error, m.max_attitude_error_deg, m.final_position_error, sag)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "nullspace identity", NullspaceIdentity},
      {2, "example fidelity", ExampleFidelity},
      {3, "statics invariance", StaticsInvariance},
      {4, "non-stop guarantee", NonStopGuarantee},
      {5, "tension bounds", TensionBounds},
      {6, "smoothness", Smoothness},
      {7, "cycle counts", CycleCounts},
      {8, "cycle choice and carrier speed", CycleSpeedOrdering},
      {9, "closed-loop error envelope", ErrorEnvelope},
      {10, "hover", HoverSanity},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s [%2d] %-32s %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), seconds);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
