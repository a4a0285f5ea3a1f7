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

#include "nonstop/geom.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace nonstop {

Rot3::Rot3(const Mat3& m) : m_(m) {
  if (!m.allFinite()) throw InputError("rotation matrix has non-finite entries");
  if (OrthonormalityDefect(m) > kOrthonormalTolerance) {
    throw InputError("rotation matrix is not orthonormal");
  }
  if (std::abs(m.determinant() - 1.0) > kOrthonormalTolerance) {
    throw InputError("rotation matrix determinant is not +1");
  }
}

Rot3 Rot3::Orthonormalized(const Mat3& m) {
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 u = svd.matrixU();
  const Mat3& v = svd.matrixV();
  if ((u * v.transpose()).determinant() < 0.0) u.col(2) *= -1.0;
  return Rot3(u * v.transpose(), Unchecked{});
}

Rot3 Rot3::AboutZ(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Mat3 m;
  m << c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0;
  return Rot3(m, Unchecked{});
}

Rot3 Rot3::Exp(const Vec3& rotation_vector) {
  const double angle = rotation_vector.norm();
  if (angle < 1e-300) return Rot3();
  const Eigen::AngleAxisd aa(angle, rotation_vector / angle);
  return Rot3(aa.toRotationMatrix(), Unchecked{});
}

Mat3 Skew(const Vec3& v) {
  Mat3 s;
  s << 0.0, -v.z(), v.y(), v.z(), 0.0, -v.x(), -v.y(), v.x(), 0.0;
  return s;
}

Mat PseudoInverse(const Mat& m, double relative_tolerance) {
  if (m.size() == 0) return Mat::Zero(m.cols(), m.rows());
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vec& sigma = svd.singularValues();
  const double cutoff = relative_tolerance * sigma(0);
  Vec inv = Vec::Zero(sigma.size());
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (sigma(k) > cutoff && sigma(k) > 0.0) inv(k) = 1.0 / sigma(k);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

Vec SingularValues(const Mat& m) {
  if (m.size() == 0) return Vec();
  return Eigen::JacobiSVD<Mat>(m).singularValues();
}

int Rank(const Mat& m, double relative_tolerance) {
  const Vec sigma = SingularValues(m);
  if (sigma.size() == 0 || sigma(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (sigma(k) > relative_tolerance * sigma(0)) ++rank;
  }
  return rank;
}

EulerZYX ToEulerZYX(const Mat3& r) {
  EulerZYX e;
  e.pitch = std::asin(std::clamp(-r(2, 0), -1.0, 1.0));
  e.yaw = std::atan2(r(1, 0), r(0, 0));
  e.roll = std::atan2(r(2, 1), r(2, 2));
  return e;
}

double OrthonormalityDefect(const Mat3& r) {
  return (r.transpose() * r - Mat3::Identity()).norm();
}

bool AllFinite(const Vec3& v) { return v.allFinite(); }

}  // namespace nonstop
