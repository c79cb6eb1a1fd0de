#include "skylink/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace skylink {

namespace {
constexpr double kRangeFloor = 1e-3;  // meters
}

Detection::Detection(double u_norm, double v_norm, double confidence_val,
                     double time)
    : u(u_norm), v(v_norm), confidence(confidence_val), time_s(time) {
  if (!std::isfinite(u) || !std::isfinite(v) || std::abs(u) > 1.0 ||
      std::abs(v) > 1.0) {
    throw std::invalid_argument("Detection: (u, v) must be within [-1, 1]");
  }
  if (!(confidence >= 0.0 && confidence <= 1.0)) {
    throw std::invalid_argument("Detection: confidence must be in [0, 1]");
  }
}

SensorNoise::SensorNoise(double pixel_sigma_norm, double range_sigma,
                         double miss_prob, double conf_floor,
                         std::uint64_t seed_val)
    : pixel_sigma(pixel_sigma_norm),
      range_sigma_m(range_sigma),
      miss_probability(miss_prob),
      confidence_floor(conf_floor),
      seed(seed_val) {
  if (pixel_sigma < 0.0 || range_sigma_m < 0.0 || miss_probability < 0.0 ||
      miss_probability >= 1.0 || confidence_floor < 0.0 ||
      confidence_floor > 1.0) {
    throw std::invalid_argument("SensorNoise: parameters out of range");
  }
}

GimbalController::GimbalController(double gain_az, double gain_el,
                                   double pitch_min_rad, double pitch_max_rad,
                                   double yaw_min_rad, double yaw_max_rad,
                                   double deadband_norm)
    : gain_azimuth(gain_az),
      gain_elevation(gain_el),
      pitch_min(pitch_min_rad),
      pitch_max(pitch_max_rad),
      yaw_min(yaw_min_rad),
      yaw_max(yaw_max_rad),
      deadband(deadband_norm) {
  if (!(gain_azimuth > 0.0) || !(gain_elevation > 0.0)) {
    throw std::invalid_argument("GimbalController: gains must be > 0");
  }
  if (pitch_min > pitch_max || yaw_min > yaw_max || deadband < 0.0) {
    throw std::invalid_argument("GimbalController: limits out of order");
  }
}

std::optional<PixelError> project(const Position3& p_world, const UavPose& pose,
                                  const CameraFov& fov) {
  if (!finite(p_world)) {
    throw std::invalid_argument("project: point must be finite");
  }
  const Position3 pc = inertial_to_camera(p_world, pose);
  if (!(pc.x() > 0.0)) {
    return std::nullopt;
  }
  const double azimuth = std::atan(pc.y() / pc.x());
  const double elevation = std::atan(pc.z() / pc.x());
  const double u = -std::tan(azimuth) / std::tan(fov.horizontal_fov / 2.0);
  const double v = -std::tan(elevation) / std::tan(fov.vertical_fov / 2.0);
  if (std::abs(u) > 1.0 || std::abs(v) > 1.0) {
    return std::nullopt;
  }
  return PixelError{u, v};
}

std::optional<Detection> simulate_detection(const Position3& p_target_true,
                                            const UavPose& pose,
                                            const CameraFov& fov,
                                            const SensorNoise& noise,
                                            std::mt19937_64& rng,
                                            double time_s) {
  const auto pixel = project(p_target_true, pose, fov);
  if (!pixel) {
    return std::nullopt;
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (unit(rng) < noise.miss_probability) {
    return std::nullopt;
  }
  std::normal_distribution<double> pixel_noise(0.0, 1.0);
  double u = pixel->u;
  double v = pixel->v;
  if (noise.pixel_sigma > 0.0) {
    u += noise.pixel_sigma * pixel_noise(rng);
    v += noise.pixel_sigma * pixel_noise(rng);
  }
  u = std::clamp(u, -1.0, 1.0);
  v = std::clamp(v, -1.0, 1.0);
  const double confidence =
      noise.confidence_floor + (1.0 - noise.confidence_floor) * unit(rng);
  return Detection(u, v, confidence, time_s);
}

double simulate_range(const Position3& p_target_true, const Position3& p_uav,
                      const SensorNoise& noise, std::mt19937_64& rng) {
  double range = (p_target_true - p_uav).norm();
  if (noise.range_sigma_m > 0.0) {
    std::normal_distribution<double> range_noise(0.0, noise.range_sigma_m);
    range += range_noise(rng);
  }
  return std::max(range, kRangeFloor);
}

EulerAngles gimbal_control_step(const EulerAngles& gimbal, const Detection& det,
                                const GimbalController& ctrl) {
  if (std::max(std::abs(det.u), std::abs(det.v)) <= ctrl.deadband) {
    return gimbal;
  }
  const double yaw = std::clamp(gimbal.yaw + ctrl.gain_azimuth * (-det.u),
                                ctrl.yaw_min, ctrl.yaw_max);
  const double pitch =
      std::clamp(gimbal.pitch + ctrl.gain_elevation * (-det.v), ctrl.pitch_min,
                 ctrl.pitch_max);
  return EulerAngles(gimbal.roll, pitch, yaw);
}

}  // namespace skylink
