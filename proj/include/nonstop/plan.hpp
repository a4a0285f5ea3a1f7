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

#include <stdexcept>
#include <string>
#include <vector>

#include "nonstop/geom.hpp"
#include "nonstop/graph.hpp"
#include "nonstop/statics.hpp"

namespace nonstop::plan {

inline constexpr double kDefaultAmplitude = 1.0;      // N
inline constexpr double kDefaultFrequency = 2.0;      // rad/s
inline constexpr double kDefaultCableLength = 0.8;    // m
inline constexpr int kDefaultSamplesPerPeriod = 10000;

// Sinusoids c_k(t) = A cos(xi t + phase_k), one per edge color.
struct CoefficientLibrary {
  double amplitude = kDefaultAmplitude;
  double frequency = kDefaultFrequency;
  std::vector<double> phases;

  // {0, pi/2} for two colors, {0, pi/3, 2pi/3} for three, k*pi/n for the
  // n-color library.
  static CoefficientLibrary ForColoring(const graph::EdgeColoring& coloring,
                                        double amplitude, double frequency);

  // amplitude >= 0 (zero means hover), frequency > 0, phases pairwise
  // distinct modulo pi.
  void Validate() const;
  double Period() const;
};

struct CarrierPlan {
  Vec3 f0;             // equilibrium force, N
  Vec3 delta;          // incoming-edge direction (scaled), m
  Vec3 delta_bar;      // outgoing-edge direction (scaled), m
  double phase_in = 0.0;   // phase of the incoming-edge coefficient
  double phase_out = 0.0;  // phase of the outgoing-edge coefficient
  double cable_length = kDefaultCableLength;
  Vec3 anchor;         // world position of the attachment at equilibrium
};

// Everything needed to evaluate the periodic cable forces and carrier
// trajectories. Plain value; evaluation functions never mutate it.
struct ForcePlan {
  LoadModel load;
  graph::HamiltonianCycle cycle;
  graph::EdgeColoring coloring;
  CoefficientLibrary library;
  std::vector<CarrierPlan> carriers;
  statics::AdmissibilityReport admissibility;

  int size() const { return static_cast<int>(carriers.size()); }
  double Period() const { return library.Period(); }
};

class InadmissibleCycleError : public std::runtime_error {
 public:
  explicit InadmissibleCycleError(statics::AdmissibilityReport report)
      : std::runtime_error(report.Describe()), report_(std::move(report)) {}
  const statics::AdmissibilityReport& report() const { return report_; }

 private:
  statics::AdmissibilityReport report_;
};

class VanishingTensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws InputError for inconsistent sizes, improper colorings or bad
// library parameters, DegenerateLoadError when rank(G) < 6 and
// InadmissibleCycleError when the cycle fails the admissibility test.
ForcePlan BuildPlan(const LoadModel& load, const graph::HamiltonianCycle& cycle,
                    const graph::EdgeColoring& coloring, double amplitude,
                    double frequency, const std::vector<double>& cable_lengths);

ForcePlan BuildPlan(const LoadModel& load, const graph::HamiltonianCycle& cycle,
                    const graph::EdgeColoring& coloring,
                    double amplitude = kDefaultAmplitude,
                    double frequency = kDefaultFrequency,
                    double cable_length = kDefaultCableLength);

struct ForceState {
  Vec3 force;  // f_i, on the load, N
  Vec3 rate;   // df_i/dt, N/s
};

ForceState ForceAt(const ForcePlan& plan, int carrier, double t);

// Same quantity parametrized by phase = xi * t; exact periodicity in phase.
ForceState ForceAtPhase(const ForcePlan& plan, int carrier, double phase);

// All n forces stacked into a 3n vector.
Vec StackedForceAt(const ForcePlan& plan, double t);

struct CarrierState {
  Vec3 position;        // m
  Vec3 velocity;        // m/s
  double tension = 0.0;  // N
  Vec3 direction;       // unit, from load anchor to carrier
  Vec3 direction_rate;  // 1/s
};

// Throws VanishingTensionError if the tension is at or below kTensionFloor.
CarrierState CarrierStateAt(const ForcePlan& plan, int carrier, double t);
CarrierState CarrierStateAtPhase(const ForcePlan& plan, int carrier,
                                 double phase);

struct CarrierBounds {
  double gamma_min = 0.0;    // force-rate ellipse semi-axes at unit xi, N
  double gamma_max = 0.0;
  double alpha = 0.0;        // min |df_perp| / |df| over a period
  double tension_min = 0.0;  // N
  double tension_max = 0.0;
  double speed_min = 0.0;    // lower bound on |dp_R/dt|, m/s
  double speed_max = 0.0;    // upper bound on |dp_R/dt|, m/s
  bool near_collinear = false;
};

struct PlanBounds {
  std::vector<CarrierBounds> carriers;
  int samples_per_period = kDefaultSamplesPerPeriod;
  std::vector<std::string> warnings;
};

// Ellipse axes come from the SVD of [delta delta_bar] * M; alpha and the
// tension extrema come from uniform sampling of one period. The tension range
// is widened by a curvature bound on the inter-sample gap so that it
// encloses the continuous-time extrema.
PlanBounds ComputeBounds(const ForcePlan& plan,
                         int samples_per_period = kDefaultSamplesPerPeriod);

struct TrajectorySample {
  double t = 0.0;
  std::vector<Vec3> force;
  std::vector<double> tension;
  std::vector<Vec3> direction;
  std::vector<Vec3> position;
  std::vector<Vec3> velocity;
};

// Samples at t0, t0 + dt, ... up to and including t1 (when it falls on the
// grid within 1e-9 relative).
std::vector<TrajectorySample> SampleTrajectory(const ForcePlan& plan, double t0,
                                               double t1, double dt);

}  // namespace nonstop::plan
