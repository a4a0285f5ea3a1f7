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

#include "nonstop/plan.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace nonstop::plan {

using std::numbers::pi;

CoefficientLibrary CoefficientLibrary::ForColoring(
    const graph::EdgeColoring& coloring, double amplitude, double frequency) {
  CoefficientLibrary lib;
  lib.amplitude = amplitude;
  lib.frequency = frequency;
  const int k = coloring.num_colors;
  if (k < 2) throw InputError("an edge coloring needs at least two colors");
  // Two colors: quarter-period offset. Otherwise k phases spaced by pi/k,
  // which gives {0, pi/3, 2pi/3} for three colors.
  const double spacing = (k == 2) ? pi / 2.0 : pi / k;
  lib.phases.resize(k);
  for (int c = 0; c < k; ++c) lib.phases[c] = spacing * c;
  lib.Validate();
  return lib;
}

void CoefficientLibrary::Validate() const {
  if (!(std::isfinite(amplitude) && amplitude >= 0.0)) {
    throw InputError("amplitude must be finite and non-negative");
  }
  if (!(std::isfinite(frequency) && frequency > 0.0)) {
    throw InputError("frequency must be finite and positive");
  }
  for (std::size_t a = 0; a < phases.size(); ++a) {
    if (!std::isfinite(phases[a])) throw InputError("phase is not finite");
    for (std::size_t b = a + 1; b < phases.size(); ++b) {
      const double d = std::fmod(std::abs(phases[a] - phases[b]), pi);
      if (std::min(d, pi - d) < 1e-12) {
        throw InputError("library phases must be distinct modulo pi");
      }
    }
  }
}

double CoefficientLibrary::Period() const { return 2.0 * pi / frequency; }

ForcePlan BuildPlan(const LoadModel& load, const graph::HamiltonianCycle& cycle,
                    const graph::EdgeColoring& coloring, double amplitude,
                    double frequency, const std::vector<double>& cable_lengths) {
  load.Validate();
  const int n = load.size();
  if (cycle.size() != n) {
    throw InputError("cycle size does not match the number of attachments");
  }
  if (static_cast<int>(coloring.colors.size()) != n) {
    throw InputError("coloring size does not match the cycle");
  }
  if (!coloring.IsProper()) {
    throw InputError("edge coloring assigns one color to two adjacent edges");
  }
  if (static_cast<int>(cable_lengths.size()) != n) {
    throw InputError("one cable length per carrier is required");
  }
  for (double l : cable_lengths) {
    if (!(std::isfinite(l) && l > 0.0)) {
      throw InputError("cable lengths must be positive");
    }
  }
  CoefficientLibrary library =
      CoefficientLibrary::ForColoring(coloring, amplitude, frequency);
  for (int c : coloring.colors) {
    if (c < 0 || c >= static_cast<int>(library.phases.size())) {
      throw InputError("edge color outside the function library");
    }
  }

  const statics::GraspMatrix grasp = statics::BuildGraspMatrix(load);
  const statics::EquilibriumOffset offset =
      statics::ComputeEquilibriumOffset(grasp, load);
  const statics::NullspaceBasis basis = statics::BuildNullspaceBasis(cycle, load);
  statics::AdmissibilityReport report =
      statics::CheckAdmissibility(basis, offset.per_carrier);
  if (!report.admissible) throw InadmissibleCycleError(std::move(report));

  std::vector<CarrierPlan> carriers(n);
  for (int i = 0; i < n; ++i) {
    CarrierPlan& c = carriers[i];
    c.f0 = offset.per_carrier[i];
    c.delta = basis.delta[i];
    c.delta_bar = basis.delta_bar[i];
    c.phase_in = library.phases[coloring.colors[basis.incoming_edge[i]]];
    c.phase_out = library.phases[coloring.colors[basis.outgoing_edge[i]]];
    c.cable_length = cable_lengths[i];
    c.anchor = load.equilibrium_position +
               load.equilibrium_rotation * load.attachments[i];
  }
  return ForcePlan{load,   cycle, coloring, std::move(library),
                   std::move(carriers), std::move(report)};
}

ForcePlan BuildPlan(const LoadModel& load, const graph::HamiltonianCycle& cycle,
                    const graph::EdgeColoring& coloring, double amplitude,
                    double frequency, double cable_length) {
  return BuildPlan(load, cycle, coloring, amplitude, frequency,
                   std::vector<double>(load.attachments.size(), cable_length));
}

ForceState ForceAtPhase(const ForcePlan& plan, int carrier, double phase) {
  const CarrierPlan& c = plan.carriers.at(carrier);
  const double a = plan.library.amplitude;
  const double xi = plan.library.frequency;
  const double mu = a * std::cos(phase + c.phase_in);
  const double mu_bar = a * std::cos(phase + c.phase_out);
  const double mu_dot = -a * xi * std::sin(phase + c.phase_in);
  const double mu_bar_dot = -a * xi * std::sin(phase + c.phase_out);
  return ForceState{c.f0 + mu * c.delta + mu_bar * c.delta_bar,
                    mu_dot * c.delta + mu_bar_dot * c.delta_bar};
}

ForceState ForceAt(const ForcePlan& plan, int carrier, double t) {
  return ForceAtPhase(plan, carrier, plan.library.frequency * t);
}

Vec StackedForceAt(const ForcePlan& plan, double t) {
  const int n = plan.size();
  Vec f(3 * n);
  for (int i = 0; i < n; ++i) f.segment<3>(3 * i) = ForceAt(plan, i, t).force;
  return f;
}

CarrierState CarrierStateAtPhase(const ForcePlan& plan, int carrier,
                                 double phase) {
  const ForceState fs = ForceAtPhase(plan, carrier, phase);
  const CarrierPlan& c = plan.carriers.at(carrier);
  CarrierState s;
  s.tension = fs.force.norm();
  if (!(s.tension > statics::kTensionFloor)) {
    throw VanishingTensionError("cable " + std::to_string(carrier + 1) +
                                " tension fell to " + std::to_string(s.tension) +
                                " N");
  }
  s.direction = fs.force / s.tension;
  const Vec3 rate_perp = fs.rate - s.direction * s.direction.dot(fs.rate);
  s.direction_rate = rate_perp / s.tension;
  s.position = c.anchor + c.cable_length * s.direction;
  s.velocity = c.cable_length * s.direction_rate;
  return s;
}

CarrierState CarrierStateAt(const ForcePlan& plan, int carrier, double t) {
  return CarrierStateAtPhase(plan, carrier, plan.library.frequency * t);
}

PlanBounds ComputeBounds(const ForcePlan& plan, int samples_per_period) {
  if (samples_per_period < 16) {
    throw InputError("at least 16 samples per period are required");
  }
  const int n = plan.size();
  const double a = plan.library.amplitude;
  const double xi = plan.library.frequency;
  const double step = 2.0 * pi / samples_per_period;

  PlanBounds bounds;
  bounds.samples_per_period = samples_per_period;
  bounds.carriers.resize(n);
  for (int i = 0; i < n; ++i) {
    const CarrierPlan& c = plan.carriers[i];
    CarrierBounds& b = bounds.carriers[i];

    Eigen::Matrix<double, 3, 2> delta;
    delta << c.delta, c.delta_bar;
    Eigen::Matrix2d m;
    m << -std::sin(c.phase_in), -std::cos(c.phase_in),
        -std::sin(c.phase_out), -std::cos(c.phase_out);
    m *= a;
    const Eigen::Vector2d sigma =
        Eigen::JacobiSVD<Eigen::Matrix<double, 3, 2>>(delta * m).singularValues();
    b.gamma_max = sigma(0);
    b.gamma_min = sigma(1);

    double t_min = std::numeric_limits<double>::infinity();
    double t_max = 0.0;
    double alpha = std::numeric_limits<double>::infinity();
    for (int k = 0; k < samples_per_period; ++k) {
      const ForceState fs = ForceAtPhase(plan, i, step * k);
      const double tension = fs.force.norm();
      t_min = std::min(t_min, tension);
      t_max = std::max(t_max, tension);
      const double rate = fs.rate.norm();
      if (rate > 0.0 && tension > 0.0) {
        const Vec3 q = fs.force / tension;
        const Vec3 perp = fs.rate - q * q.dot(fs.rate);
        alpha = std::min(alpha, perp.norm() / rate);
      }
    }
    if (!std::isfinite(alpha)) alpha = 0.0;
    b.alpha = std::min(alpha, 1.0);

    // In phase units |f'| <= gamma_max and |f''| <= gamma_max, so
    // |T''| <= gamma_max + gamma_max^2 / T. The true extremum lies within half
    // a step of a sample, where T' = 0.
    const double t_floor = std::max(t_min, statics::kTensionFloor);
    const double curvature = b.gamma_max + b.gamma_max * b.gamma_max / (0.5 * t_floor);
    const double margin = 0.5 * curvature * (0.5 * step) * (0.5 * step);
    b.tension_min = std::max(t_min - margin, 0.0);
    b.tension_max = t_max + margin;

    b.speed_min = c.cable_length / b.tension_max * xi * b.alpha * b.gamma_min;
    b.speed_max = b.tension_min > 0.0
                      ? c.cable_length / b.tension_min * xi * b.gamma_max
                      : std::numeric_limits<double>::infinity();
    b.near_collinear = b.alpha < 1e-9;
    const std::string who = "carrier " + std::to_string(i + 1) + ": ";
    if (a == 0.0) {
      bounds.warnings.push_back(who + "zero amplitude, carrier hovers");
    } else if (b.near_collinear) {
      bounds.warnings.push_back(who + "force and force rate nearly collinear");
    }
    if (!(b.tension_min > statics::kTensionFloor)) {
      bounds.warnings.push_back(who + "tension reaches the slack floor");
    }
  }
  return bounds;
}

std::vector<TrajectorySample> SampleTrajectory(const ForcePlan& plan, double t0,
                                               double t1, double dt) {
  if (!(dt > 0.0) || !(t1 > t0)) {
    throw InputError("sampling needs t1 > t0 and dt > 0");
  }
  const double span = (t1 - t0) / dt;
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9 * std::max(1.0, span))) + 1;
  const int n = plan.size();
  std::vector<TrajectorySample> samples(count);
  for (std::size_t k = 0; k < count; ++k) {
    TrajectorySample& s = samples[k];
    s.t = t0 + static_cast<double>(k) * dt;
    s.force.resize(n);
    s.tension.resize(n);
    s.direction.resize(n);
    s.position.resize(n);
    s.velocity.resize(n);
    for (int i = 0; i < n; ++i) {
      const CarrierState cs = CarrierStateAt(plan, i, s.t);
      s.force[i] = cs.tension * cs.direction;
      s.tension[i] = cs.tension;
      s.direction[i] = cs.direction;
      s.position[i] = cs.position;
      s.velocity[i] = cs.velocity;
    }
  }
  return samples;
}

}  // namespace nonstop::plan
