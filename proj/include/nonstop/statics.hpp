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

namespace nonstop {

inline constexpr double kStandardGravity = 9.81;

// Rigid load held in a fixed pose by n cables.
struct LoadModel {
  double mass = 1.0;                     // kg
  Mat3 inertia = Mat3::Identity() * 0.01;  // kg m^2, body frame
  std::vector<Vec3> attachments;         // body-frame cable anchors, m
  Vec3 equilibrium_position = Vec3::Zero();
  Rot3 equilibrium_rotation;
  double gravity = kStandardGravity;     // m/s^2

  int size() const { return static_cast<int>(attachments.size()); }

  // Throws InputError unless mass > 0, n >= 3, inertia symmetric positive
  // definite, gravity > 0 and all values finite.
  void Validate() const;

  // Wrench that the cables must supply at equilibrium, [m g e3; 0].
  Eigen::Matrix<double, 6, 1> EquilibriumWrench() const;
};

}  // namespace nonstop

namespace nonstop::statics {

// Tension below which a cable is considered slack in the planner.
inline constexpr double kTensionFloor = 1e-6;

class DegenerateLoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// 6 x 3n map from stacked world-frame cable forces to the load wrench
// (world force; body-frame moment about the center of mass).
struct GraspMatrix {
  Mat matrix;
  Mat pseudo_inverse;
  int rank = 0;
};

GraspMatrix BuildGraspMatrix(const LoadModel& load);

struct EquilibriumOffset {
  Vec stacked;                    // 3n
  std::vector<Vec3> per_carrier;  // f0_i
};

// Minimum-norm cable forces balancing gravity at the equilibrium pose.
// Throws DegenerateLoadError if rank(G) < 6.
EquilibriumOffset ComputeEquilibriumOffset(const GraspMatrix& grasp,
                                           const LoadModel& load);

// b_ij = R (b_j - b_i), world frame.
Vec3 AttachmentDifference(const LoadModel& load, int i, int j);

// Internal-force basis N(H) = (H kron I3) diag(b_{e_1}, ..., b_{e_n}).
// Carrier i's force moves in span{delta[i], delta_bar[i]}:
//   delta[i]     = -b along its incoming edge,
//   delta_bar[i] = +b along its outgoing edge.
struct NullspaceBasis {
  Mat matrix;  // 3n x n
  std::vector<Vec3> delta;
  std::vector<Vec3> delta_bar;
  std::vector<int> incoming_edge;
  std::vector<int> outgoing_edge;

  int size() const { return static_cast<int>(delta.size()); }
};

NullspaceBasis BuildNullspaceBasis(const graph::HamiltonianCycle& cycle,
                                   const LoadModel& load);

struct CarrierAdmissibility {
  bool aligned_triple = false;  // delta, delta_bar linearly dependent
  bool f0_in_span = false;      // rank([f0 delta delta_bar]) < 3
  double sin_delta_angle = 0.0;   // |sin angle(delta, delta_bar)|
  double cos_normal_angle = 0.0;  // |cos angle(f0, delta x delta_bar)|
};

struct AdmissibilityReport {
  std::vector<CarrierAdmissibility> carriers;
  bool admissible = false;
  double score = 0.0;  // see ScoreCycle

  std::string Describe() const;
};

AdmissibilityReport CheckAdmissibility(const NullspaceBasis& basis,
                                       const std::vector<Vec3>& offsets);

// Ranking heuristic in [0, 1]: min over carriers of
// |sin angle(delta, delta_bar)| * |cos angle(f0, span normal)|.
// Zero for inadmissible cycles.
double ScoreCycle(const NullspaceBasis& basis,
                  const std::vector<Vec3>& offsets);

// True iff the three columns have full rank under kRankTolerance.
bool SpansSpace(const Vec3& a, const Vec3& b, const Vec3& c);

}  // namespace nonstop::statics
