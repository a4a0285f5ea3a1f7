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

#include "nonstop/statics.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nonstop {

void LoadModel::Validate() const {
  if (!(std::isfinite(mass) && mass > 0.0)) {
    throw InputError("load mass must be positive and finite");
  }
  if (size() < 3) {
    throw InputError("at least 3 attachment points are required, got " +
                     std::to_string(size()));
  }
  for (const Vec3& b : attachments) {
    if (!b.allFinite()) throw InputError("attachment point is not finite");
  }
  if (!inertia.allFinite()) throw InputError("inertia is not finite");
  if ((inertia - inertia.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw InputError("inertia is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat3> eig(inertia);
  if (eig.eigenvalues().minCoeff() <= 0.0) {
    throw InputError("inertia is not positive definite");
  }
  if (!equilibrium_position.allFinite()) {
    throw InputError("equilibrium position is not finite");
  }
  if (!(std::isfinite(gravity) && gravity > 0.0)) {
    throw InputError("gravity must be positive and finite");
  }
}

Eigen::Matrix<double, 6, 1> LoadModel::EquilibriumWrench() const {
  Eigen::Matrix<double, 6, 1> w = Eigen::Matrix<double, 6, 1>::Zero();
  w(2) = mass * gravity;
  return w;
}

}  // namespace nonstop

namespace nonstop::statics {

GraspMatrix BuildGraspMatrix(const LoadModel& load) {
  load.Validate();
  const int n = load.size();
  const Mat3 rt = load.equilibrium_rotation.transpose();
  GraspMatrix g;
  g.matrix = Mat::Zero(6, 3 * n);
  for (int i = 0; i < n; ++i) {
    g.matrix.block<3, 3>(0, 3 * i) = Mat3::Identity();
    g.matrix.block<3, 3>(3, 3 * i) = Skew(load.attachments[i]) * rt;
  }
  g.pseudo_inverse = PseudoInverse(g.matrix);
  g.rank = Rank(g.matrix);
  return g;
}

EquilibriumOffset ComputeEquilibriumOffset(const GraspMatrix& grasp,
                                           const LoadModel& load) {
  if (grasp.rank < 6) {
    throw DegenerateLoadError(
        "grasp matrix has rank " + std::to_string(grasp.rank) +
        " < 6: the equilibrium wrench is unreachable or ambiguous");
  }
  EquilibriumOffset out;
  out.stacked = grasp.pseudo_inverse * load.EquilibriumWrench();
  const int n = load.size();
  out.per_carrier.reserve(n);
  for (int i = 0; i < n; ++i) out.per_carrier.push_back(out.stacked.segment<3>(3 * i));
  return out;
}

Vec3 AttachmentDifference(const LoadModel& load, int i, int j) {
  return load.equilibrium_rotation * (load.attachments[j] - load.attachments[i]);
}

NullspaceBasis BuildNullspaceBasis(const graph::HamiltonianCycle& cycle,
                                   const LoadModel& load) {
  const int n = load.size();
  if (cycle.size() != n) {
    throw InputError("cycle has " + std::to_string(cycle.size()) +
                     " vertices but the load has " + std::to_string(n) +
                     " attachments");
  }
  // Column k of (H kron I3) diag(b_e) holds +b_e at e.from and -b_e at e.to.
  std::vector<Vec3> edge_vectors(n);
  NullspaceBasis basis;
  basis.matrix = Mat::Zero(3 * n, n);
  for (int k = 0; k < n; ++k) {
    const graph::Edge e = cycle.edge(k);
    edge_vectors[k] = AttachmentDifference(load, e.from, e.to);
    basis.matrix.block<3, 1>(3 * e.from, k) = edge_vectors[k];
    basis.matrix.block<3, 1>(3 * e.to, k) = -edge_vectors[k];
  }
  basis.delta.resize(n);
  basis.delta_bar.resize(n);
  basis.incoming_edge.resize(n);
  basis.outgoing_edge.resize(n);
  for (int i = 0; i < n; ++i) {
    basis.incoming_edge[i] = cycle.IncomingEdge(i);
    basis.outgoing_edge[i] = cycle.OutgoingEdge(i);
    basis.delta[i] = -edge_vectors[basis.incoming_edge[i]];
    basis.delta_bar[i] = edge_vectors[basis.outgoing_edge[i]];
  }
  return basis;
}

bool SpansSpace(const Vec3& a, const Vec3& b, const Vec3& c) {
  Mat3 m;
  m << a, b, c;
  return Rank(m) == 3;
}

namespace {

bool Independent(const Vec3& a, const Vec3& b) {
  Eigen::Matrix<double, 3, 2> m;
  m << a, b;
  return Rank(m) == 2;
}

}  // namespace

AdmissibilityReport CheckAdmissibility(const NullspaceBasis& basis,
                                       const std::vector<Vec3>& offsets) {
  const int n = basis.size();
  if (static_cast<int>(offsets.size()) != n) {
    throw InputError("offset count does not match the nullspace basis");
  }
  AdmissibilityReport report;
  report.carriers.resize(n);
  report.admissible = true;
  double score = 1.0;
  for (int i = 0; i < n; ++i) {
    const Vec3& d = basis.delta[i];
    const Vec3& db = basis.delta_bar[i];
    const Vec3& f0 = offsets[i];
    CarrierAdmissibility& c = report.carriers[i];
    c.aligned_triple = !Independent(d, db);
    c.f0_in_span = !SpansSpace(f0, d, db);
    const Vec3 normal = d.cross(db);
    const double dd = d.norm() * db.norm();
    c.sin_delta_angle = dd > 0.0 ? normal.norm() / dd : 0.0;
    const double nf = normal.norm() * f0.norm();
    c.cos_normal_angle = nf > 0.0 ? std::abs(normal.dot(f0)) / nf : 0.0;
    if (c.aligned_triple || c.f0_in_span) report.admissible = false;
    score = std::min(score, c.sin_delta_angle * c.cos_normal_angle);
  }
  report.score = report.admissible ? std::clamp(score, 0.0, 1.0) : 0.0;
  return report;
}

double ScoreCycle(const NullspaceBasis& basis,
                  const std::vector<Vec3>& offsets) {
  return CheckAdmissibility(basis, offsets).score;
}

std::string AdmissibilityReport::Describe() const {
  std::ostringstream os;
  os << (admissible ? "admissible" : "inadmissible");
  for (std::size_t i = 0; i < carriers.size(); ++i) {
    const CarrierAdmissibility& c = carriers[i];
    if (c.aligned_triple) os << "; carrier " << i + 1 << ": aligned attachment triple";
    if (c.f0_in_span) os << "; carrier " << i + 1 << ": equilibrium force in the internal-force plane";
  }
  return os.str();
}

}  // namespace nonstop::statics
