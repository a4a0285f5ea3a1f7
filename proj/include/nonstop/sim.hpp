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

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "nonstop/geom.hpp"
#include "nonstop/plan.hpp"
#include "nonstop/statics.hpp"

// Closed-loop validation: rigid load on elastic cables pulled by
// PD-controlled point-mass carriers tracking the planned trajectories.
namespace nonstop::sim {

struct SimConfig {
  double carrier_mass = 0.1;            // kg
  double kp = 100.0;                    // N/m
  double kd = 10.0;                     // N s/m
  double noise_position_std = 0.005;    // m
  double noise_velocity_std = 0.01;     // m/s
  double load_linear_damping = 0.1;     // N s/m
  double load_angular_damping = 0.1;    // N m s/rad
  double cable_stiffness = 500.0;       // N/m
  double cable_damping = 1.0;           // N s/m
  double cable_rest_length = 0.8;       // m
  // Literal linear springs that can also push.
  bool bilateral_springs = false;
  double dt = 1e-3;                     // s
  double duration = 30.0;               // s
  std::uint64_t seed = 1;
  // Keep every k-th step in the returned series (aggregates use all steps).
  int record_every = 1;

  // Harness switches used by consistency checks.
  bool pin_carriers = false;          // carriers follow references exactly
  bool apply_planned_forces = false;  // load feels planned forces, not springs

  void Validate() const;
};

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

struct CableParams {
  double stiffness = 500.0;
  double damping = 1.0;
  double rest_length = 0.8;
  bool bilateral = false;
};

struct CableForce {
  Vec3 on_load;
  Vec3 on_carrier;  // always -on_load
  double tension = 0.0;
  double length = 0.0;
};

// Spring-damper cable from the load anchor to the carrier. Tension is
// K s + B ds/dt with s the stretch, clamped at zero unless bilateral.
// Throws GeometryError when the anchor and carrier coincide.
CableForce ComputeCableForce(const Vec3& carrier_position,
                             const Vec3& carrier_velocity,
                             const Vec3& anchor_position,
                             const Vec3& anchor_velocity,
                             const CableParams& params);

struct SimState {
  double time = 0.0;
  Vec3 load_position = Vec3::Zero();
  Vec3 load_velocity = Vec3::Zero();
  Rot3 load_rotation;
  Vec3 load_angular_velocity = Vec3::Zero();  // body frame
  std::vector<Vec3> carrier_position;
  std::vector<Vec3> carrier_velocity;
  std::mt19937_64 noise;
};

// Load at rest in its equilibrium pose, carriers on their references at t=0.
SimState InitialState(const plan::ForcePlan& plan, const SimConfig& cfg);

// One RK4 step of length cfg.dt. Rotation is integrated on SO(3) through
// R = R0 exp(theta) with a truncated inverse-dexp correction, then
// re-orthonormalized. Measurement noise is drawn once per step.
// Throws DivergenceError on non-finite state.
SimState Step(const SimState& state, const plan::ForcePlan& plan,
              const SimConfig& cfg);

// Kinetic + gravitational + elastic energy (J).
double MechanicalEnergy(const SimState& state, const plan::ForcePlan& plan,
                        const SimConfig& cfg);

// Cable forces in the given state (on the load).
std::vector<CableForce> CableForces(const SimState& state,
                                    const plan::ForcePlan& plan,
                                    const SimConfig& cfg);

// |yaw| + |pitch| + |roll| of R_eq^T R (ZYX), radians.
double AttitudeError(const Rot3& equilibrium, const Rot3& rotation);

struct SimSeries {
  std::vector<double> time;
  std::vector<Vec3> load_position;
  std::vector<EulerZYX> load_attitude;  // relative to equilibrium
  std::vector<double> position_error;   // m
  std::vector<double> attitude_error;   // rad
  std::vector<std::vector<Vec3>> carrier_position;  // [sample][carrier]
  std::vector<std::vector<Vec3>> carrier_velocity;
  std::vector<std::vector<Vec3>> cable_force;
  std::vector<std::vector<double>> tension;
};

struct SimMetrics {
  double max_position_error = 0.0;      // m
  double mean_position_error = 0.0;     // m
  double max_attitude_error_deg = 0.0;  // deg
  double mean_tracking_error = 0.0;     // m, carriers vs references
  double max_tracking_error = 0.0;
  double max_orthonormality_defect = 0.0;
  std::vector<double> min_speed;    // m/s per carrier
  std::vector<double> max_speed;
  std::vector<double> min_tension;  // N per carrier
  std::vector<double> max_tension;
  double final_position_error = 0.0;
  int steps = 0;
};

struct SimResult {
  SimMetrics metrics;
  SimSeries series;
};

// Integrates for cfg.duration from InitialState.
SimResult Run(const plan::ForcePlan& plan, const SimConfig& cfg);

// Random attachment layout: point i (1-based) at angle 2 pi i / n + jitter on
// a circle of the given radius, at a random height.
struct AttachmentSampler {
  int n = 5;
  std::uint64_t seed = 1;
  double radius = 1.2;      // m
  double max_jitter = 0.2;  // rad, jitter uniform in [0, max_jitter]
  double max_height = 1.0;  // m, height uniform in [0, max_height]
};

std::vector<Vec3> SampleAttachments(const AttachmentSampler& sampler);

// 1 kg load with diagonal inertia 0.01 kg m^2, equilibrium at the origin.
LoadModel MakeReferenceLoad(std::vector<Vec3> attachments);

}  // namespace nonstop::sim
