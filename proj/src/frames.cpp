#include "skylink/frames.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/LU>

namespace skylink {

namespace {

bool all_finite(double a, double b, double c) {
  return std::isfinite(a) && std::isfinite(b) && std::isfinite(c);
}

// Pitch within this of +-pi/2 is treated as gimbal lock by the extraction.
constexpr double kGimbalLockMargin = 1e-5;

}  // namespace

EulerAngles::EulerAngles(double roll_rad, double pitch_rad, double yaw_rad) {
  if (!all_finite(roll_rad, pitch_rad, yaw_rad)) {
    throw std::invalid_argument("EulerAngles: components must be finite");
  }
  roll = wrap_angle(roll_rad);
  pitch = wrap_angle(pitch_rad);
  yaw = wrap_angle(yaw_rad);
}

RotationMatrix3 RotationMatrix3::identity() {
  return RotationMatrix3(Eigen::Matrix3d::Identity());
}

RotationMatrix3 RotationMatrix3::from_matrix(const Eigen::Matrix3d& m) {
  constexpr double kTol = 1e-12;
  const Eigen::Matrix3d gram = m.transpose() * m - Eigen::Matrix3d::Identity();
  if (!m.allFinite() || gram.cwiseAbs().maxCoeff() > kTol) {
    throw std::invalid_argument("RotationMatrix3: matrix is not orthonormal");
  }
  if (std::abs(m.determinant() - 1.0) > kTol) {
    throw std::invalid_argument("RotationMatrix3: determinant is not +1");
  }
  return RotationMatrix3(m);
}

RotationMatrix3 RotationMatrix3::transpose() const {
  return RotationMatrix3(m_.transpose());
}

RotationMatrix3 RotationMatrix3::operator*(const RotationMatrix3& rhs) const {
  return RotationMatrix3(m_ * rhs.m_);
}

RotationMatrix3 rotation_from_euler(const EulerAngles& angles) {
  const double cr = std::cos(angles.roll), sr = std::sin(angles.roll);
  const double cp = std::cos(angles.pitch), sp = std::sin(angles.pitch);
  const double cy = std::cos(angles.yaw), sy = std::sin(angles.yaw);

  // parent<-child composition Rz(yaw) * Ry(-pitch) * Rx(roll); the returned
  // matrix is its transpose (child<-parent). Written out entrywise.
  Eigen::Matrix3d parent_from_child;
  parent_from_child << cy * cp, -cy * sp * sr - sy * cr, -cy * sp * cr + sy * sr,
      sy * cp, -sy * sp * sr + cy * cr, -sy * sp * cr - cy * sr,
      sp, cp * sr, cp * cr;
  return RotationMatrix3::from_matrix(parent_from_child.transpose());
}

std::optional<EulerAngles> euler_from_rotation(const RotationMatrix3& r) {
  const double sp = r(0, 2);
  if (std::abs(sp) >= std::cos(kGimbalLockMargin)) {
    return std::nullopt;
  }
  const double pitch = std::asin(sp);
  const double roll = std::atan2(r(1, 2), r(2, 2));
  const double yaw = std::atan2(r(0, 1), r(0, 0));
  return EulerAngles(roll, pitch, yaw);
}

RotationMatrix3 inverse(const RotationMatrix3& r) { return r.transpose(); }

Position3 rotate(const RotationMatrix3& r, const Position3& v) {
  if (!finite(v)) {
    throw std::invalid_argument("rotate: vector must be finite");
  }
  return r.matrix() * v;
}

}  // namespace skylink
