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

#ifndef EGOSCENE_ROTATION_H_
#define EGOSCENE_ROTATION_H_

#include "egoscene/types.h"

namespace egoscene {

// Intrinsic Z-X-Y Euler angles in radians:
//   R = Rz(alpha) * Rx(beta) * Ry(gamma).
// Canonical range after normalization: alpha in (-pi, pi],
// beta in [-pi/2, pi/2], gamma in (-pi, pi].
struct EulerZXY {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  friend bool operator==(const EulerZXY&, const EulerZXY&) = default;
};

// Continuous 6D rotation parameterization: the first two columns of a
// rotation matrix before orthonormalization.
struct Rot6D {
  Vec3 a = Vec3::UnitX();
  Vec3 b = Vec3::UnitY();
};

Mat3 RotZ(double angle);
Mat3 RotX(double angle);
Mat3 RotY(double angle);

// Throws InvalidArgument on non-finite angles.
Mat3 EulerToMatrix(const EulerZXY& e);

// Partial derivatives of EulerToMatrix with respect to alpha, beta, gamma.
struct EulerJacobian {
  Mat3 d_alpha;
  Mat3 d_beta;
  Mat3 d_gamma;
};
EulerJacobian EulerToMatrixJacobian(const EulerZXY& e);

// Inverse of EulerToMatrix at the matrix level. At gimbal lock
// (|beta| = pi/2) the solution with gamma = 0 is returned. Throws
// InvalidArgument when `r` is not a rotation within 1e-9.
EulerZXY MatrixToEuler(const Mat3& r);

// Maps any finite angles to the canonical representative of the same
// rotation.
EulerZXY NormalizeEuler(const EulerZXY& e);

// Throws DegenerateInput when |a| <= 1e-12 or b is parallel to a.
Mat3 Rot6DDecode(const Rot6D& v);
Rot6D Rot6DEncode(const Mat3& r);

// True when r^T r = I and det(r) = +1 within `tol`.
bool IsRotation(const Mat3& r, double tol = 1e-9);

}  // namespace egoscene

#endif  // EGOSCENE_ROTATION_H_
