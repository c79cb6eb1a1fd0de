#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "skylink/frames.hpp"
#include "skylink/geoloc.hpp"
#include "skylink/types.hpp"

namespace skylink {

/// Normalized pixel errors of a detected target relative to the image center.
struct PixelError {
  double u;  // in [-1, 1], positive = right of center
  double v;  // in [-1, 1], positive = below center
};

/// Simulated detector output: the geometric payload of a bounding box plus a
/// synthetic confidence.
struct Detection {
  double u;
  double v;
  double confidence;
  double time_s;

  Detection(double u_norm, double v_norm, double confidence_val, double time);
};

/// Noise model of the simulated detector and datalink ranger.
struct SensorNoise {
  double pixel_sigma = 0.0;       // normalized units, std of u and v
  double range_sigma_m = 0.0;     // meters
  double miss_probability = 0.0;  // in [0, 1)
  double confidence_floor = 1.0;  // detections get confidence in [floor, 1]
  std::uint64_t seed = 0;

  SensorNoise() = default;
  SensorNoise(double pixel_sigma_norm, double range_sigma, double miss_prob,
              double conf_floor, std::uint64_t seed_val);
};

/// Proportional gimbal pointing law with deadband and axis saturation.
/// Stability bound for a static target: the loop contracts per axis while
/// gain < 2 * tan(fov_half_angle); at the default 0.2 rad per unit error that
/// holds for any fov wider than ~23 degrees.
struct GimbalController {
  double gain_azimuth;    // rad per unit pixel error per step
  double gain_elevation;  // rad per unit pixel error per step
  double pitch_min;       // radians
  double pitch_max;
  double yaw_min;
  double yaw_max;
  double deadband = 0.0;  // normalized units

  GimbalController(double gain_az, double gain_el, double pitch_min_rad,
                   double pitch_max_rad, double yaw_min_rad, double yaw_max_rad,
                   double deadband_norm);
};

/// Forward camera model. Transforms the world point into the camera frame;
/// returns nullopt when it lies behind the camera (x_c <= 0) or projects
/// outside the frame (|u| > 1 or |v| > 1).
std::optional<PixelError> project(const Position3& p_world, const UavPose& pose,
                                  const CameraFov& fov);

/// Simulated detection of the true target: project, drop with
/// miss_probability, add Gaussian pixel noise (clamped back into [-1, 1]) and
/// draw a confidence uniformly in [confidence_floor, 1]. Draw order per
/// visible target: miss, u noise, v noise, confidence.
std::optional<Detection> simulate_detection(const Position3& p_target_true,
                                            const UavPose& pose,
                                            const CameraFov& fov,
                                            const SensorNoise& noise,
                                            std::mt19937_64& rng,
                                            double time_s);

/// Simulated datalink range: Euclidean distance plus Gaussian noise, floored
/// at a small positive epsilon (the floor also covers the degenerate
/// coincident-points case).
double simulate_range(const Position3& p_target_true, const Position3& p_uav,
                      const SensorNoise& noise, std::mt19937_64& rng);

/// One step of the centering loop: steps yaw by gain_azimuth * (-u) and pitch
/// by gain_elevation * (-v) (no change within the deadband), clamped to the
/// controller limits. The signs drive both pixel errors toward zero for a
/// static in-view target.
EulerAngles gimbal_control_step(const EulerAngles& gimbal, const Detection& det,
                                const GimbalController& ctrl);

}  // namespace skylink
