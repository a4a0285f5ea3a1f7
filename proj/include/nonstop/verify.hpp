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

#include <vector>

#include "nonstop/geom.hpp"
#include "nonstop/graph.hpp"
#include "nonstop/plan.hpp"

// Independent checks of a plan against the three trajectory requirements
// (statics, bounded non-vanishing tension, non-stop carriers) plus C1
// smoothness. Grasp matrix, equilibrium force and internal-force basis are
// rebuilt here from first principles; only geom is shared with the planner.
namespace nonstop::verify {

struct Tolerances {
  double statics_residual = 1e-9;     // N and N m
  double smoothness = 1e-6;           // abs. finite-difference mismatch
  double finite_difference_step = 1e-6;  // s
  double speed_floor = 1e-9;          // m/s
  double bound_slack = 0.01;          // v_min may exceed sampled min by 1%
};

struct CarrierCheck {
  double tension_min = 0.0;
  double tension_max = 0.0;
  double speed_min = 0.0;
  double speed_max = 0.0;
  double speed_bound = 0.0;  // analytic lower bound from ComputeBounds
};

struct VerificationReport {
  double statics_residual = 0.0;   // max |G f(t) - w0| over samples
  double offset_mismatch = 0.0;    // |f0(plan) - f0(normal equations)|
  double smoothness_defect = 0.0;  // max FD mismatch of df/dt and dp/dt
  std::vector<CarrierCheck> carriers;

  bool statics_ok = false;
  bool tension_ok = false;
  bool speed_ok = false;
  bool smoothness_ok = false;

  bool passed() const { return statics_ok && tension_ok && speed_ok && smoothness_ok; }
};

// Requires samples_per_period >= 1000; throws InputError otherwise.
VerificationReport VerifyPlan(const plan::ForcePlan& plan,
                              int samples_per_period = plan::kDefaultSamplesPerPeriod,
                              const Tolerances& tol = {});

// First-principles grasp matrix: column block i maps f_i to
// [f_i; b_i x (R^T f_i)].
Mat OracleGraspMatrix(const LoadModel& load);

// Minimum-norm equilibrium forces through G^T (G G^T)^-1 w0.
Vec OracleEquilibriumForces(const LoadModel& load);

// Internal-force basis assembled edge by edge from the cycle.
Mat OracleNullspace(const LoadModel& load, const graph::HamiltonianCycle& cycle);

// max_i |G N(:, i)|.
double NullspaceResidual(const Mat& grasp, const Mat& nullspace);

double VerifyNullspace(const LoadModel& load, const graph::HamiltonianCycle& cycle);

}  // namespace nonstop::verify
