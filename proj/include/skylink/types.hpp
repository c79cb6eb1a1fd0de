#pragma once

#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Core>

namespace skylink {

/// 3-vector in meters. ENU inertial frame unless stated otherwise.
using Position3 = Eigen::Vector3d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double rad) {
  double w = std::remainder(rad, kTwoPi);
  if (w <= -kPi) w += kTwoPi;
  return w;
}

inline bool finite(const Eigen::Vector3d& v) { return v.allFinite(); }

/// Placeholder position for not-yet-initialized estimates.
inline Position3 nan_position() {
  return Position3::Constant(std::numeric_limits<double>::quiet_NaN());
}

}  // namespace skylink
