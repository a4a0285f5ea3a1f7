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

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <stdexcept>
#include <string>

namespace nonstop {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Relative singular-value cutoff shared by every rank decision in the
// project (pseudoinverse, admissibility, nullspace rank).
inline constexpr double kRankTolerance = 1e-10;

// Thrown for malformed user input (bad sizes, non-finite values, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Rotation matrix guaranteed to lie on SO(3) within kOrthonormalTolerance.
class Rot3 {
 public:
  static constexpr double kOrthonormalTolerance = 1e-9;

  Rot3() : m_(Mat3::Identity()) {}

  // Validates orthonormality and det = +1; throws InputError otherwise.
  explicit Rot3(const Mat3& m);

  // Projects an arbitrary near-rotation onto SO(3) (closest in Frobenius norm).
  static Rot3 Orthonormalized(const Mat3& m);
  static Rot3 AboutZ(double angle);
  // exp of the skew matrix of `rotation_vector`.
  static Rot3 Exp(const Vec3& rotation_vector);

  const Mat3& matrix() const { return m_; }
  Mat3 transpose() const { return m_.transpose(); }

  Vec3 operator*(const Vec3& v) const { return m_ * v; }
  Rot3 operator*(const Rot3& other) const {
    return Orthonormalized(m_ * other.m_);
  }

 private:
  struct Unchecked {};
  Rot3(const Mat3& m, Unchecked) : m_(m) {}

  Mat3 m_;
};

// skew(v) * w == v.cross(w).
Mat3 Skew(const Vec3& v);

// Moore-Penrose pseudoinverse via SVD; singular values below
// kRankTolerance * sigma_max are treated as zero.
Mat PseudoInverse(const Mat& m, double relative_tolerance = kRankTolerance);

// Numerical rank with the same relative cutoff.
int Rank(const Mat& m, double relative_tolerance = kRankTolerance);

// Singular values in descending order.
Vec SingularValues(const Mat& m);

// Yaw (about z), pitch (about y), roll (about x) such that
// R = Rz(yaw) * Ry(pitch) * Rx(roll).
struct EulerZYX {
  double yaw = 0.0;
  double pitch = 0.0;
  double roll = 0.0;
};
EulerZYX ToEulerZYX(const Mat3& r);

// Frobenius norm of R^T R - I.
double OrthonormalityDefect(const Mat3& r);

bool AllFinite(const Vec3& v);

}  // namespace nonstop
