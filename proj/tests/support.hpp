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

#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "nonstop/geom.hpp"
#include "nonstop/graph.hpp"
#include "nonstop/plan.hpp"
#include "nonstop/sim.hpp"
#include "nonstop/statics.hpp"
#include "oracle/reference_values.hpp"

namespace nonstop::testing {

// Four attachments at 90 deg spacing on a 1.2 m circle, z = 0.
inline LoadModel SquareLoad() {
  sim::AttachmentSampler s;
  s.n = 4;
  s.max_jitter = 0.0;
  s.max_height = 0.0;
  return sim::MakeReferenceLoad(sim::SampleAttachments(s));
}

inline LoadModel SampledLoad(int n, std::uint64_t seed) {
  sim::AttachmentSampler s;
  s.n = n;
  s.seed = seed;
  return sim::MakeReferenceLoad(sim::SampleAttachments(s));
}

// Layout frozen in oracle/reference_values.hpp.
inline LoadModel FiveCarrierReferenceLoad() {
  std::vector<Vec3> points;
  for (int i = 0; i < 5; ++i) {
    const double angle = 2.0 * std::numbers::pi * (i + 1) / 5.0 + oracle::kJitter[i];
    points.emplace_back(1.2 * std::cos(angle), 1.2 * std::sin(angle), oracle::kHeight[i]);
  }
  return sim::MakeReferenceLoad(points);
}

inline plan::ForcePlan MinimalPlan(const LoadModel& load, const graph::HamiltonianCycle& cycle,
                                   double amplitude = plan::kDefaultAmplitude,
                                   double xi = plan::kDefaultFrequency) {
  return plan::BuildPlan(load, cycle, graph::ColorEdges(cycle, graph::ColoringMode::kMinimal),
                         amplitude, xi);
}

// Admissible plans over sampled loads, n = 3..7, used by property checks.
inline std::vector<plan::ForcePlan> PlanBattery(int loads_per_size = 2) {
  std::vector<plan::ForcePlan> plans;
  for (int n = 3; n <= 7; ++n) {
    for (int s = 0; s < loads_per_size; ++s) {
      const LoadModel load = SampledLoad(n, 1000 + 10 * n + s);
      const auto cycles = graph::EnumerateCycles(n);
      for (std::size_t k = 0; k < cycles.size() && k < 4; ++k) {
        for (auto mode : {graph::ColoringMode::kMinimal, graph::ColoringMode::kUniversal}) {
          try {
            plans.push_back(plan::BuildPlan(load, cycles[k], graph::ColorEdges(cycles[k], mode)));
          } catch (const plan::InadmissibleCycleError&) {
          } catch (const plan::VanishingTensionError&) {
          }
        }
      }
    }
  }
  return plans;
}

}  // namespace nonstop::testing
