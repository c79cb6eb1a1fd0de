#pragma once

#include "skylink/frames.hpp"
#include "skylink/types.hpp"

namespace skylink {

/// Camera field of view; both half-planes must be open: (0, pi).
struct CameraFov {
  double horizontal_fov;  // radians
  double vertical_fov;    // radians

  CameraFov(double horizontal_rad, double vertical_rad);
};

/// Target bearing in the camera FLU frame. Azimuth is positive toward the
/// camera +y (left), elevation positive toward +z (up). Both restricted to
/// (-pi/2, pi/2): targets must lie in the front hemisphere.
struct BearingPair {
  double azimuth;    // radians
  double elevation;  // radians

  BearingPair(double azimuth_rad, double elevation_rad);
};

/// UAV pose: position in ENU (z is altitude above the takeoff plane),
/// attitude of the body in the inertial frame, gimbal angles of the camera
/// in the body frame.
struct UavPose {
  Position3 position{0.0, 0.0, 0.0};
  EulerAngles attitude;
  EulerAngles gimbal;

  UavPose() = default;
  UavPose(const Position3& position_m, const EulerAngles& attitude_angles,
          const EulerAngles& gimbal_angles);
};

/// Converts normalized pixel errors (u, v) in [-1, 1] to bearing angles:
///   azimuth  = -atan(u * tan(hfov / 2))
///   elevation = -atan(v * tan(vfov / 2))
/// u > 0 means the target is right of the image center (toward camera -y),
/// v > 0 below center, hence the leading minus signs.
BearingPair pixel_to_bearings(double u, double v, const CameraFov& fov);

/// Point at distance `range_m` along the bearing direction, camera FLU frame:
///   p_c = [1, tan(az), tan(el)]^T * r / sqrt(1 + tan^2(az) + tan^2(el))
/// |p_c| equals the range by construction and p_c.x > 0.
Position3 bearings_range_to_camera_point(const BearingPair& bearing,
                                         double range_m);

/// Combined camera<-inertial rotation for a pose (gimbal chain after body
/// attitude).
RotationMatrix3 camera_from_inertial(const UavPose& pose);

/// Forward chain: p_c = R_cam<-body * R_body<-inertial * (p - p_uav).
Position3 inertial_to_camera(const Position3& p_world, const UavPose& pose);

/// Inverse chain: p = p_uav + R_inertial<-body * R_body<-cam * p_c.
Position3 camera_to_inertial(const Position3& p_camera, const UavPose& pose);

/// Single-frame geometric position estimate: pixel errors + datalink range
/// through the full transform chain.
Position3 geometric_solve(double u, double v, double range_m,
                          const CameraFov& fov, const UavPose& pose);

/// Same solve when the bearings are already known (e.g. rebuilt from a
/// measurement vector).
Position3 geometric_solve(const BearingPair& bearing, double range_m,
                          const UavPose& pose);

}  // namespace skylink
