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

#include "nonstop/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace nonstop::sim {

namespace {

const Vec3 kUp = Vec3::UnitZ();

void RequirePositive(double value, const char* name) {
  if (!(std::isfinite(value) && value > 0.0)) {
    throw InputError(std::string(name) + " must be positive and finite");
  }
}

void RequireNonNegative(double value, const char* name) {
  if (!(std::isfinite(value) && value >= 0.0)) {
    throw InputError(std::string(name) + " must be non-negative and finite");
  }
}

struct Stage {
  Vec3 p, v, theta, omega;
  std::vector<Vec3> pc, vc;
};

struct Measurement {
  std::vector<Vec3> position_noise;
  std::vector<Vec3> velocity_noise;
};

CableParams ParamsFrom(const SimConfig& cfg) {
  return CableParams{cfg.cable_stiffness, cfg.cable_damping,
                     cfg.cable_rest_length, cfg.bilateral_springs};
}

// Everything the right-hand side needs besides the stage variables.
struct Context {
  const plan::ForcePlan& plan;
  const SimConfig& cfg;
  const Mat3& r0;
  const Measurement& noise;
};

Mat3 StageRotation(const Mat3& r0, const Vec3& theta) {
  return r0 * Rot3::Exp(theta).matrix();
}

// Overwrites carrier states with their references when pinned.
void ApplyPinning(const Context& ctx, double t, Stage& s) {
  if (!ctx.cfg.pin_carriers) return;
  for (int i = 0; i < ctx.plan.size(); ++i) {
    const plan::CarrierState ref = plan::CarrierStateAt(ctx.plan, i, t);
    s.pc[i] = ref.position;
    s.vc[i] = ref.velocity;
  }
}

std::vector<Vec3> LoadForces(const plan::ForcePlan& plan, const SimConfig& cfg,
                             double t, const Vec3& p, const Vec3& v,
                             const Mat3& r, const Vec3& omega,
                             const std::vector<Vec3>& pc,
                             const std::vector<Vec3>& vc,
                             std::vector<double>* tensions) {
  const int n = plan.size();
  std::vector<Vec3> forces(n);
  if (tensions) tensions->assign(n, 0.0);
  const CableParams params = ParamsFrom(cfg);
  for (int i = 0; i < n; ++i) {
    if (cfg.apply_planned_forces) {
      forces[i] = plan::ForceAt(plan, i, t).force;
      if (tensions) (*tensions)[i] = forces[i].norm();
      continue;
    }
    const Vec3& b = plan.load.attachments[i];
    const Vec3 anchor = p + r * b;
    const Vec3 anchor_vel = v + r * omega.cross(b);
    const CableForce cf = ComputeCableForce(pc[i], vc[i], anchor, anchor_vel, params);
    forces[i] = cf.on_load;
    if (tensions) (*tensions)[i] = cf.tension;
  }
  return forces;
}

Stage Derivative(const Context& ctx, double t, const Stage& s) {
  const plan::ForcePlan& plan = ctx.plan;
  const SimConfig& cfg = ctx.cfg;
  const LoadModel& load = plan.load;
  const int n = plan.size();
  const Mat3 r = StageRotation(ctx.r0, s.theta);
  const std::vector<Vec3> forces =
      LoadForces(plan, cfg, t, s.p, s.v, r, s.omega, s.pc, s.vc, nullptr);

  Stage d;
  Vec3 total = Vec3::Zero();
  Vec3 moment = Vec3::Zero();
  for (int i = 0; i < n; ++i) {
    total += forces[i];
    moment += load.attachments[i].cross(r.transpose() * forces[i]);
  }
  d.p = s.v;
  d.v = (total - cfg.load_linear_damping * s.v) / load.mass - load.gravity * kUp;
  const Vec3 jw = load.inertia * s.omega;
  d.omega = load.inertia.ldlt().solve(moment - s.omega.cross(jw) -
                                      cfg.load_angular_damping * s.omega);
  d.theta = s.omega + 0.5 * s.theta.cross(s.omega) +
            s.theta.cross(s.theta.cross(s.omega)) / 12.0;

  d.pc.assign(n, Vec3::Zero());
  d.vc.assign(n, Vec3::Zero());
  if (cfg.pin_carriers) return d;
  const double m = cfg.carrier_mass;
  for (int i = 0; i < n; ++i) {
    const plan::CarrierState ref = plan::CarrierStateAt(plan, i, t);
    const Vec3 measured_p = s.pc[i] + ctx.noise.position_noise[i];
    const Vec3 measured_v = s.vc[i] + ctx.noise.velocity_noise[i];
    const Vec3 u = cfg.kp * (ref.position - measured_p) +
                   cfg.kd * (ref.velocity - measured_v) + m * load.gravity * kUp;
    d.pc[i] = s.vc[i];
    d.vc[i] = (u - forces[i]) / m - load.gravity * kUp;
  }
  return d;
}

Stage Advance(const Stage& s, const Stage& d, double h) {
  Stage out;
  out.p = s.p + h * d.p;
  out.v = s.v + h * d.v;
  out.theta = s.theta + h * d.theta;
  out.omega = s.omega + h * d.omega;
  const std::size_t n = s.pc.size();
  out.pc.resize(n);
  out.vc.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.pc[i] = s.pc[i] + h * d.pc[i];
    out.vc[i] = s.vc[i] + h * d.vc[i];
  }
  return out;
}

bool Finite(const SimState& s) {
  if (!s.load_position.allFinite() || !s.load_velocity.allFinite() ||
      !s.load_angular_velocity.allFinite() ||
      !s.load_rotation.matrix().allFinite()) {
    return false;
  }
  for (std::size_t i = 0; i < s.carrier_position.size(); ++i) {
    if (!s.carrier_position[i].allFinite() || !s.carrier_velocity[i].allFinite()) {
      return false;
    }
  }
  return true;
}

Vec3 GaussianVec(std::mt19937_64& rng, double stddev) {
  if (stddev == 0.0) return Vec3::Zero();
  std::normal_distribution<double> dist(0.0, stddev);
  Vec3 v;
  for (int k = 0; k < 3; ++k) v(k) = dist(rng);
  return v;
}

}  // namespace

void SimConfig::Validate() const {
  RequirePositive(carrier_mass, "carrier mass");
  RequirePositive(kp, "proportional gain");
  RequirePositive(kd, "derivative gain");
  RequireNonNegative(noise_position_std, "position noise std");
  RequireNonNegative(noise_velocity_std, "velocity noise std");
  RequireNonNegative(load_linear_damping, "load linear damping");
  RequireNonNegative(load_angular_damping, "load angular damping");
  RequirePositive(cable_stiffness, "cable stiffness");
  RequireNonNegative(cable_damping, "cable damping");
  RequirePositive(cable_rest_length, "cable rest length");
  RequirePositive(dt, "time step");
  RequireNonNegative(duration, "duration");
  if (record_every < 1) throw InputError("record_every must be >= 1");
}

CableForce ComputeCableForce(const Vec3& carrier_position,
                             const Vec3& carrier_velocity,
                             const Vec3& anchor_position,
                             const Vec3& anchor_velocity,
                             const CableParams& params) {
  const Vec3 d = carrier_position - anchor_position;
  const double length = d.norm();
  if (!(length >= 1e-9)) {
    throw GeometryError("cable anchor and carrier coincide");
  }
  const Vec3 dir = d / length;
  const double stretch = length - params.rest_length;
  const double stretch_rate = dir.dot(carrier_velocity - anchor_velocity);
  double tension = params.stiffness * stretch + params.damping * stretch_rate;
  if (!params.bilateral) tension = std::max(tension, 0.0);
  CableForce out;
  out.on_load = tension * dir;
  out.on_carrier = -out.on_load;
  out.tension = tension;
  out.length = length;
  return out;
}

SimState InitialState(const plan::ForcePlan& plan, const SimConfig& cfg) {
  SimState s;
  s.time = 0.0;
  s.load_position = plan.load.equilibrium_position;
  s.load_rotation = plan.load.equilibrium_rotation;
  const int n = plan.size();
  s.carrier_position.resize(n);
  s.carrier_velocity.resize(n);
  for (int i = 0; i < n; ++i) {
    const plan::CarrierState ref = plan::CarrierStateAt(plan, i, 0.0);
    s.carrier_position[i] = ref.position;
    s.carrier_velocity[i] = ref.velocity;
  }
  s.noise.seed(cfg.seed);
  return s;
}

SimState Step(const SimState& state, const plan::ForcePlan& plan,
              const SimConfig& cfg) {
  const int n = plan.size();
  SimState next = state;

  Measurement noise;
  noise.position_noise.resize(n);
  noise.velocity_noise.resize(n);
  for (int i = 0; i < n; ++i) {
    noise.position_noise[i] = GaussianVec(next.noise, cfg.noise_position_std);
    noise.velocity_noise[i] = GaussianVec(next.noise, cfg.noise_velocity_std);
  }

  const Mat3 r0 = state.load_rotation.matrix();
  const Context ctx{plan, cfg, r0, noise};
  const double h = cfg.dt;
  const double t = state.time;

  Stage y{state.load_position, state.load_velocity, Vec3::Zero(),
          state.load_angular_velocity, state.carrier_position,
          state.carrier_velocity};
  ApplyPinning(ctx, t, y);

  Stage y2 = y, y3 = y, y4 = y;
  const Stage k1 = Derivative(ctx, t, y);
  y2 = Advance(y, k1, 0.5 * h);
  ApplyPinning(ctx, t + 0.5 * h, y2);
  const Stage k2 = Derivative(ctx, t + 0.5 * h, y2);
  y3 = Advance(y, k2, 0.5 * h);
  ApplyPinning(ctx, t + 0.5 * h, y3);
  const Stage k3 = Derivative(ctx, t + 0.5 * h, y3);
  y4 = Advance(y, k3, h);
  ApplyPinning(ctx, t + h, y4);
  const Stage k4 = Derivative(ctx, t + h, y4);

  Stage sum = k1;
  sum.p += 2.0 * k2.p + 2.0 * k3.p + k4.p;
  sum.v += 2.0 * k2.v + 2.0 * k3.v + k4.v;
  sum.theta += 2.0 * k2.theta + 2.0 * k3.theta + k4.theta;
  sum.omega += 2.0 * k2.omega + 2.0 * k3.omega + k4.omega;
  for (int i = 0; i < n; ++i) {
    sum.pc[i] += 2.0 * k2.pc[i] + 2.0 * k3.pc[i] + k4.pc[i];
    sum.vc[i] += 2.0 * k2.vc[i] + 2.0 * k3.vc[i] + k4.vc[i];
  }
  Stage y_next = Advance(y, sum, h / 6.0);
  ApplyPinning(ctx, t + h, y_next);

  next.time = t + h;
  next.load_position = y_next.p;
  next.load_velocity = y_next.v;
  next.load_angular_velocity = y_next.omega;
  next.carrier_position = std::move(y_next.pc);
  next.carrier_velocity = std::move(y_next.vc);
  const Mat3 r1 = StageRotation(r0, y_next.theta);
  if (!r1.allFinite()) {
    throw DivergenceError("load rotation became non-finite", next.time);
  }
  next.load_rotation = Rot3::Orthonormalized(r1);
  if (!Finite(next)) {
    throw DivergenceError(
        "simulation diverged at t = " + std::to_string(next.time) + " s",
        next.time);
  }
  return next;
}

std::vector<CableForce> CableForces(const SimState& state,
                                    const plan::ForcePlan& plan,
                                    const SimConfig& cfg) {
  const int n = plan.size();
  const Mat3& r = state.load_rotation.matrix();
  const CableParams params = ParamsFrom(cfg);
  std::vector<CableForce> out(n);
  for (int i = 0; i < n; ++i) {
    if (cfg.apply_planned_forces) {
      const Vec3 f = plan::ForceAt(plan, i, state.time).force;
      out[i] = CableForce{f, -f, f.norm(),
                          (state.carrier_position[i] -
                           (state.load_position + r * plan.load.attachments[i]))
                              .norm()};
      continue;
    }
    const Vec3& b = plan.load.attachments[i];
    out[i] = ComputeCableForce(
        state.carrier_position[i], state.carrier_velocity[i],
        state.load_position + r * b,
        state.load_velocity + r * state.load_angular_velocity.cross(b), params);
  }
  return out;
}

double MechanicalEnergy(const SimState& state, const plan::ForcePlan& plan,
                        const SimConfig& cfg) {
  const LoadModel& load = plan.load;
  const Vec3& w = state.load_angular_velocity;
  double e = 0.5 * load.mass * state.load_velocity.squaredNorm() +
             0.5 * w.dot(load.inertia * w) +
             load.mass * load.gravity * state.load_position.z();
  const Mat3& r = state.load_rotation.matrix();
  for (int i = 0; i < plan.size(); ++i) {
    e += 0.5 * cfg.carrier_mass * state.carrier_velocity[i].squaredNorm() +
         cfg.carrier_mass * load.gravity * state.carrier_position[i].z();
    const Vec3 anchor = state.load_position + r * load.attachments[i];
    const double stretch =
        (state.carrier_position[i] - anchor).norm() - cfg.cable_rest_length;
    if (stretch > 0.0 || cfg.bilateral_springs) {
      e += 0.5 * cfg.cable_stiffness * stretch * stretch;
    }
  }
  return e;
}

double AttitudeError(const Rot3& equilibrium, const Rot3& rotation) {
  const EulerZYX e =
      ToEulerZYX(equilibrium.transpose() * rotation.matrix());
  return std::abs(e.yaw) + std::abs(e.pitch) + std::abs(e.roll);
}

SimResult Run(const plan::ForcePlan& plan, const SimConfig& cfg) {
  cfg.Validate();
  const int n = plan.size();
  const LoadModel& load = plan.load;
  SimResult result;
  SimMetrics& m = result.metrics;
  SimSeries& series = result.series;
  m.min_speed.assign(n, std::numeric_limits<double>::infinity());
  m.max_speed.assign(n, 0.0);
  m.min_tension.assign(n, std::numeric_limits<double>::infinity());
  m.max_tension.assign(n, -std::numeric_limits<double>::infinity());

  const auto steps = static_cast<long long>(std::llround(cfg.duration / cfg.dt));
  SimState state = InitialState(plan, cfg);
  double sum_position_error = 0.0;
  double sum_tracking_error = 0.0;

  for (long long k = 0; k <= steps; ++k) {
    if (k > 0) state = Step(state, plan, cfg);
    const double e_p = (state.load_position - load.equilibrium_position).norm();
    const EulerZYX att = ToEulerZYX(load.equilibrium_rotation.transpose() *
                                    state.load_rotation.matrix());
    const double e_r = std::abs(att.yaw) + std::abs(att.pitch) + std::abs(att.roll);
    const std::vector<CableForce> cables = CableForces(state, plan, cfg);

    m.max_position_error = std::max(m.max_position_error, e_p);
    sum_position_error += e_p;
    m.max_attitude_error_deg =
        std::max(m.max_attitude_error_deg, e_r * 180.0 / std::numbers::pi);
    m.max_orthonormality_defect = std::max(
        m.max_orthonormality_defect,
        OrthonormalityDefect(state.load_rotation.matrix()));
    for (int i = 0; i < n; ++i) {
      const double speed = state.carrier_velocity[i].norm();
      m.min_speed[i] = std::min(m.min_speed[i], speed);
      m.max_speed[i] = std::max(m.max_speed[i], speed);
      m.min_tension[i] = std::min(m.min_tension[i], cables[i].tension);
      m.max_tension[i] = std::max(m.max_tension[i], cables[i].tension);
      const Vec3 ref = plan::CarrierStateAt(plan, i, state.time).position;
      const double tracking = (state.carrier_position[i] - ref).norm();
      sum_tracking_error += tracking;
      m.max_tracking_error = std::max(m.max_tracking_error, tracking);
    }

    if (k % cfg.record_every == 0) {
      series.time.push_back(state.time);
      series.load_position.push_back(state.load_position);
      series.load_attitude.push_back(att);
      series.position_error.push_back(e_p);
      series.attitude_error.push_back(e_r);
      series.carrier_position.push_back(state.carrier_position);
      series.carrier_velocity.push_back(state.carrier_velocity);
      std::vector<Vec3> f(n);
      std::vector<double> tension(n);
      for (int i = 0; i < n; ++i) {
        f[i] = cables[i].on_load;
        tension[i] = cables[i].tension;
      }
      series.cable_force.push_back(std::move(f));
      series.tension.push_back(std::move(tension));
    }
    m.final_position_error = e_p;
  }
  const double samples = static_cast<double>(steps + 1);
  m.mean_position_error = sum_position_error / samples;
  m.mean_tracking_error = sum_tracking_error / (samples * n);
  m.steps = static_cast<int>(steps);
  return result;
}

std::vector<Vec3> SampleAttachments(const AttachmentSampler& sampler) {
  if (sampler.n < 3) throw InputError("attachment sampler needs n >= 3");
  std::mt19937_64 rng(sampler.seed);
  std::uniform_real_distribution<double> jitter(0.0, sampler.max_jitter);
  std::uniform_real_distribution<double> height(0.0, sampler.max_height);
  std::vector<Vec3> points;
  points.reserve(sampler.n);
  for (int i = 1; i <= sampler.n; ++i) {
    const double angle = 2.0 * std::numbers::pi * i / sampler.n + jitter(rng);
    const double z = height(rng);
    points.emplace_back(sampler.radius * std::cos(angle),
                        sampler.radius * std::sin(angle), z);
  }
  return points;
}

LoadModel MakeReferenceLoad(std::vector<Vec3> attachments) {
  LoadModel load;
  load.mass = 1.0;
  load.inertia = Mat3::Identity() * 0.01;
  load.attachments = std::move(attachments);
  load.Validate();
  return load;
}

}  // namespace nonstop::sim
