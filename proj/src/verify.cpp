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

#include "nonstop/verify.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace nonstop::verify {

Mat OracleGraspMatrix(const LoadModel& load) {
  const int n = load.size();
  const Mat3 rt = load.equilibrium_rotation.transpose();
  Mat g = Mat::Zero(6, 3 * n);
  for (int i = 0; i < n; ++i) {
    for (int axis = 0; axis < 3; ++axis) {
      const Vec3 f = Vec3::Unit(axis);
      g.block<3, 1>(0, 3 * i + axis) = f;
      g.block<3, 1>(3, 3 * i + axis) = load.attachments[i].cross(rt * f);
    }
  }
  return g;
}

Vec OracleEquilibriumForces(const LoadModel& load) {
  const Mat g = OracleGraspMatrix(load);
  Eigen::Matrix<double, 6, 1> w0 = Eigen::Matrix<double, 6, 1>::Zero();
  w0(2) = load.mass * load.gravity;
  const Mat ggt = g * g.transpose();
  return g.transpose() * ggt.ldlt().solve(w0);
}

Mat OracleNullspace(const LoadModel& load, const graph::HamiltonianCycle& cycle) {
  const int n = cycle.size();
  Mat nmat = Mat::Zero(3 * n, n);
  const std::vector<int>& tour = cycle.tour();
  for (int k = 0; k < n; ++k) {
    const int from = tour[k];
    const int to = tour[(k + 1) % n];
    const Vec3 b = load.equilibrium_rotation.matrix() *
                   (load.attachments[to] - load.attachments[from]);
    for (int axis = 0; axis < 3; ++axis) {
      nmat(3 * from + axis, k) += b(axis);
      nmat(3 * to + axis, k) -= b(axis);
    }
  }
  return nmat;
}

double NullspaceResidual(const Mat& grasp, const Mat& nullspace) {
  const Mat product = grasp * nullspace;
  double worst = 0.0;
  for (Eigen::Index k = 0; k < product.cols(); ++k) {
    worst = std::max(worst, product.col(k).norm());
  }
  return worst;
}

double VerifyNullspace(const LoadModel& load, const graph::HamiltonianCycle& cycle) {
  return NullspaceResidual(OracleGraspMatrix(load), OracleNullspace(load, cycle));
}

VerificationReport VerifyPlan(const plan::ForcePlan& plan, int samples_per_period,
                              const Tolerances& tol) {
  if (samples_per_period < 1000) {
    throw InputError("verification needs at least 1000 samples per period");
  }
  const LoadModel& load = plan.load;
  const int n = plan.size();
  const Mat g = OracleGraspMatrix(load);
  Eigen::Matrix<double, 6, 1> w0 = Eigen::Matrix<double, 6, 1>::Zero();
  w0(2) = load.mass * load.gravity;

  VerificationReport report;
  report.carriers.resize(n);
  const Vec f0 = OracleEquilibriumForces(load);
  for (int i = 0; i < n; ++i) {
    report.offset_mismatch = std::max(
        report.offset_mismatch, (plan.carriers[i].f0 - f0.segment<3>(3 * i)).norm());
  }

  const plan::PlanBounds bounds = plan::ComputeBounds(plan, samples_per_period);
  for (int i = 0; i < n; ++i) {
    CarrierCheck& c = report.carriers[i];
    c.tension_min = std::numeric_limits<double>::infinity();
    c.speed_min = std::numeric_limits<double>::infinity();
    c.speed_bound = bounds.carriers[i].speed_min;
  }

  const double period = plan.Period();
  const double dt = period / samples_per_period;
  const double h = tol.finite_difference_step;
  bool tension_lost = false;
  for (int k = 0; k < samples_per_period; ++k) {
    const double t = k * dt;
    Vec f(3 * n);
    for (int i = 0; i < n; ++i) {
      const plan::ForceState fs = plan::ForceAt(plan, i, t);
      f.segment<3>(3 * i) = fs.force;
      CarrierCheck& c = report.carriers[i];
      const double tension = fs.force.norm();
      c.tension_min = std::min(c.tension_min, tension);
      c.tension_max = std::max(c.tension_max, tension);

      const plan::ForceState ahead = plan::ForceAt(plan, i, t + h);
      const plan::ForceState behind = plan::ForceAt(plan, i, t - h);
      const Vec3 fd_force = (ahead.force - behind.force) / (2.0 * h);
      report.smoothness_defect =
          std::max(report.smoothness_defect, (fd_force - fs.rate).cwiseAbs().maxCoeff());

      if (!(tension > statics::kTensionFloor)) {
        tension_lost = true;
        c.speed_min = 0.0;
        continue;
      }
      try {
        const plan::CarrierState cs = plan::CarrierStateAt(plan, i, t);
        const plan::CarrierState cs_ahead = plan::CarrierStateAt(plan, i, t + h);
        const plan::CarrierState cs_behind = plan::CarrierStateAt(plan, i, t - h);
        const Vec3 fd_vel = (cs_ahead.position - cs_behind.position) / (2.0 * h);
        report.smoothness_defect = std::max(
            report.smoothness_defect, (fd_vel - cs.velocity).cwiseAbs().maxCoeff());
        const double speed = cs.velocity.norm();
        c.speed_min = std::min(c.speed_min, speed);
        c.speed_max = std::max(c.speed_max, speed);
      } catch (const plan::VanishingTensionError&) {
        tension_lost = true;
        c.speed_min = 0.0;
      }
    }
    report.statics_residual = std::max(report.statics_residual, (g * f - w0).norm());
  }

  report.statics_ok = report.statics_residual <= tol.statics_residual &&
                      report.offset_mismatch <= tol.statics_residual;
  report.smoothness_ok = report.smoothness_defect <= tol.smoothness;
  report.tension_ok = !tension_lost;
  report.speed_ok = !tension_lost;
  for (const CarrierCheck& c : report.carriers) {
    if (!(c.tension_min > statics::kTensionFloor) || !std::isfinite(c.tension_max)) {
      report.tension_ok = false;
    }
    if (!(c.speed_min > tol.speed_floor) || !(c.speed_bound > 0.0) ||
        c.speed_bound > (1.0 + tol.bound_slack) * c.speed_min) {
      report.speed_ok = false;
    }
  }
  return report;
}

}  // namespace nonstop::verify
