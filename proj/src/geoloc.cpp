#include "skylink/geoloc.hpp"

#include <cmath>
#include <stdexcept>

namespace skylink {

CameraFov::CameraFov(double horizontal_rad, double vertical_rad)
    : horizontal_fov(horizontal_rad), vertical_fov(vertical_rad) {
  if (!(horizontal_fov > 0.0 && horizontal_fov < kPi) ||
      !(vertical_fov > 0.0 && vertical_fov < kPi)) {
    throw std::invalid_argument("CameraFov: fields must lie in (0, pi)");
  }
}

BearingPair::BearingPair(double azimuth_rad, double elevation_rad)
    : azimuth(azimuth_rad), elevation(elevation_rad) {
  if (!std::isfinite(azimuth) || !std::isfinite(elevation) ||
      std::abs(azimuth) >= kPi / 2.0 || std::abs(elevation) >= kPi / 2.0) {
    throw std::invalid_argument(
        "BearingPair: angles must lie in (-pi/2, pi/2)");
  }
}

UavPose::UavPose(const Position3& position_m, const EulerAngles& attitude_angles,
                 const EulerAngles& gimbal_angles)
    : position(position_m), attitude(attitude_angles), gimbal(gimbal_angles) {
  if (!finite(position)) {
    throw std::invalid_argument("UavPose: position must be finite");
  }
  if (position.z() < 0.0) {
    throw std::invalid_argument("UavPose: altitude must be >= 0");
  }
}

BearingPair pixel_to_bearings(double u, double v, const CameraFov& fov) {
  if (!std::isfinite(u) || !std::isfinite(v) || std::abs(u) > 1.0 ||
      std::abs(v) > 1.0) {
    throw std::invalid_argument(
        "pixel_to_bearings: (u, v) must be finite and within [-1, 1]");
  }
  const double azimuth = -std::atan(u * std::tan(fov.horizontal_fov / 2.0));
  const double elevation = -std::atan(v * std::tan(fov.vertical_fov / 2.0));
  return BearingPair(azimuth, elevation);
}

Position3 bearings_range_to_camera_point(const BearingPair& bearing,
                                         double range_m) {
  if (!(range_m > 0.0) || !std::isfinite(range_m)) {
    throw std::invalid_argument(
        "bearings_range_to_camera_point: range must be > 0");
  }
  const double ta = std::tan(bearing.azimuth);
  const double te = std::tan(bearing.elevation);
  const Position3 direction{1.0, ta, te};
  return direction * (range_m / direction.norm());
}

RotationMatrix3 camera_from_inertial(const UavPose& pose) {
  return rotation_from_euler(pose.gimbal) * rotation_from_euler(pose.attitude);
}

Position3 inertial_to_camera(const Position3& p_world, const UavPose& pose) {
  return rotate(camera_from_inertial(pose), p_world - pose.position);
}

Position3 camera_to_inertial(const Position3& p_camera, const UavPose& pose) {
  return pose.position + rotate(inverse(camera_from_inertial(pose)), p_camera);
}

Position3 geometric_solve(double u, double v, double range_m,
                          const CameraFov& fov, const UavPose& pose) {
  return geometric_solve(pixel_to_bearings(u, v, fov), range_m, pose);
}

Position3 geometric_solve(const BearingPair& bearing, double range_m,
                          const UavPose& pose) {
  return camera_to_inertial(bearings_range_to_camera_point(bearing, range_m),
                            pose);
}

}  // namespace skylink
