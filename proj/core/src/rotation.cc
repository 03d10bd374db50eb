// Copyright 2026 The egoscene Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "egoscene/rotation.h"

#include <cmath>
#include <numbers>

#include <Eigen/Geometry>

#include "egoscene/errors.h"

namespace egoscene {
namespace {

constexpr double kPi = std::numbers::pi;

// Below this |cos(beta)| the Z and Y rotations act about the same axis and
// gamma is pinned to zero.
constexpr double kGimbalLockCos = 1e-12;

double WrapPi(double a) {
  // Canonical (-pi, pi].
  a = std::remainder(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

}  // namespace

Mat3 RotZ(double t) {
  const double c = std::cos(t), s = std::sin(t);
  Mat3 m;
  m << c, -s, 0, s, c, 0, 0, 0, 1;
  return m;
}

Mat3 RotX(double t) {
  const double c = std::cos(t), s = std::sin(t);
  Mat3 m;
  m << 1, 0, 0, 0, c, -s, 0, s, c;
  return m;
}

Mat3 RotY(double t) {
  const double c = std::cos(t), s = std::sin(t);
  Mat3 m;
  m << c, 0, s, 0, 1, 0, -s, 0, c;
  return m;
}

Mat3 EulerToMatrix(const EulerZXY& e) {
  if (!std::isfinite(e.alpha) || !std::isfinite(e.beta) ||
      !std::isfinite(e.gamma)) {
    throw InvalidArgument("EulerToMatrix: non-finite angle");
  }
  return RotZ(e.alpha) * RotX(e.beta) * RotY(e.gamma);
}

EulerJacobian EulerToMatrixJacobian(const EulerZXY& e) {
  auto dz = [](double t) {
    const double c = std::cos(t), s = std::sin(t);
    Mat3 m;
    m << -s, -c, 0, c, -s, 0, 0, 0, 0;
    return m;
  };
  auto dx = [](double t) {
    const double c = std::cos(t), s = std::sin(t);
    Mat3 m;
    m << 0, 0, 0, 0, -s, -c, 0, c, -s;
    return m;
  };
  auto dy = [](double t) {
    const double c = std::cos(t), s = std::sin(t);
    Mat3 m;
    m << -s, 0, c, 0, 0, 0, -c, 0, -s;
    return m;
  };
  const Mat3 rz = RotZ(e.alpha), rx = RotX(e.beta), ry = RotY(e.gamma);
  return {dz(e.alpha) * rx * ry, rz * dx(e.beta) * ry, rz * rx * dy(e.gamma)};
}

bool IsRotation(const Mat3& r, double tol) {
  if (!r.allFinite()) return false;
  if ((r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff() > tol) {
    return false;
  }
  return std::abs(r.determinant() - 1.0) <= tol;
}

EulerZXY MatrixToEuler(const Mat3& r) {
  if (!IsRotation(r)) {
    throw InvalidArgument("MatrixToEuler: input is not a rotation matrix");
  }
  // R = Rz(a) Rx(b) Ry(g) has
  //   row 0 = [ca cg - sa sb sg, -sa cb, ca sg + sa sb cg]
  //   row 1 = [sa cg + ca sb sg,  ca cb, sa sg - ca sb cg]
  //   row 2 = [-cb sg,            sb,    cb cg]
  // alpha comes from column 1; beta and gamma are then read off
  // Rz(alpha)^T R = Rx(b) Ry(g), which absorbs any error in alpha so the
  // reconstruction stays accurate right up to the lock.
  EulerZXY e;
  const double cb = std::hypot(r(0, 1), r(1, 1));
  if (cb > kGimbalLockCos) {
    e.alpha = std::atan2(-r(0, 1), r(1, 1));
    const Mat3 n = RotZ(e.alpha).transpose() * r;
    e.beta = std::atan2(n(2, 1), n(1, 1));
    e.gamma = std::atan2(n(0, 2), n(0, 0));
  } else {
    e.alpha = std::atan2(r(1, 0), r(0, 0));
    e.beta = std::copysign(kPi / 2.0, r(2, 1));
    e.gamma = 0.0;
  }
  e.alpha = WrapPi(e.alpha);
  e.gamma = WrapPi(e.gamma);
  return e;
}

EulerZXY NormalizeEuler(const EulerZXY& e) {
  return MatrixToEuler(EulerToMatrix(e));
}

Mat3 Rot6DDecode(const Rot6D& v) {
  const double na = v.a.norm();
  if (!(na > 1e-12)) {
    throw DegenerateInput("Rot6DDecode: first column has zero length");
  }
  const Vec3 c1 = v.a / na;
  const Vec3 ortho = v.b - v.b.dot(c1) * c1;
  const double no = ortho.norm();
  if (!(no > 1e-12 * std::max(1.0, v.b.norm()))) {
    throw DegenerateInput("Rot6DDecode: columns are parallel");
  }
  const Vec3 c2 = ortho / no;
  Mat3 m;
  m.col(0) = c1;
  m.col(1) = c2;
  m.col(2) = c1.cross(c2);
  return m;
}

Rot6D Rot6DEncode(const Mat3& r) { return {r.col(0), r.col(1)}; }

}  // namespace egoscene
