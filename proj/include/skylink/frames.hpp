#pragma once

#include <optional>

#include <Eigen/Core>

#include "skylink/types.hpp"

namespace skylink {

/// Coordinate frames used for pose estimation: ENU inertial (origin at the
/// UAV takeoff point), FLU body (x front, y left, z up) and FLU camera pod.
enum class FrameTag { kInertial, kBody, kCamera };

/// Roll/pitch/yaw in radians, normalized to (-pi, pi] on construction.
///
/// Convention: intrinsic Z-Y-X (yaw, then pitch, then roll). Yaw is CCW
/// positive about the parent +z (up) axis; pitch is positive nose-up, so a
/// camera gimbal pitched to -pi/2 looks straight down; roll is positive
/// right-side-down. The same convention is used for the UAV attitude
/// (body in inertial) and the gimbal (camera in body).
struct EulerAngles {
  double roll = 0.0;
  double pitch = 0.0;
  double yaw = 0.0;

  EulerAngles() = default;
  EulerAngles(double roll_rad, double pitch_rad, double yaw_rad);
};

/// Proper rotation matrix. Construction validates orthonormality
/// (|R^T R - I|_max <= 1e-12) and det(R) = 1 within 1e-12.
class RotationMatrix3 {
 public:
  static RotationMatrix3 identity();
  /// Validates the invariants; throws std::invalid_argument on failure.
  static RotationMatrix3 from_matrix(const Eigen::Matrix3d& m);

  const Eigen::Matrix3d& matrix() const { return m_; }
  double operator()(int row, int col) const { return m_(row, col); }

  RotationMatrix3 transpose() const;
  RotationMatrix3 operator*(const RotationMatrix3& rhs) const;

 private:
  explicit RotationMatrix3(const Eigen::Matrix3d& m) : m_(m) {}
  Eigen::Matrix3d m_;
};

/// Builds the matrix mapping parent-frame coordinates into the child frame
/// described by `angles` (see EulerAngles for the axis conventions).
RotationMatrix3 rotation_from_euler(const EulerAngles& angles);

/// Recovers the Euler angles from rotation_from_euler's output. Returns
/// nullopt near gimbal lock (|pitch| within ~1e-5 rad of pi/2), where the
/// roll/yaw split is not observable.
std::optional<EulerAngles> euler_from_rotation(const RotationMatrix3& r);

/// Inverse rotation; for an orthonormal matrix this is the transpose.
RotationMatrix3 inverse(const RotationMatrix3& r);

/// Matrix-vector product. Preserves the Euclidean norm.
Position3 rotate(const RotationMatrix3& r, const Position3& v);

}  // namespace skylink
