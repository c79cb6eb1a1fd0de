#pragma once

#include <optional>
#include <span>

#include <Eigen/Core>

#include "skylink/geoloc.hpp"
#include "skylink/types.hpp"

namespace skylink {

/// Filter state: target position estimate in ENU, 3x3 covariance, and the
/// timestamp of the last valid measurement consumed.
struct EkfState {
  Position3 x{0.0, 0.0, 0.0};
  Eigen::Matrix3d P = Eigen::Matrix3d::Identity();
  double last_update_time = 0.0;
};

/// True when P is symmetric within `sym_tol` per entry and all eigenvalues
/// are >= `eig_floor`.
bool covariance_healthy(const Eigen::Matrix3d& P, double sym_tol = 1e-10,
                        double eig_floor = -1e-9);

/// Measurement vector z = [r, alpha, epsilon, h]: datalink range (m), camera
/// azimuth and elevation (rad, wrapped into (-pi, pi] on construction) and
/// the UAV altitude (m).
struct Measurement {
  double range_m;
  double azimuth;
  double elevation;
  double uav_height_m;
  double time_s;

  Measurement(double range, double azimuth_rad, double elevation_rad,
              double uav_height, double time);

  Eigen::Vector4d vector() const {
    return {range_m, azimuth, elevation, uav_height_m};
  }
};

/// Measurement variances (diagonal of R: m^2, rad^2, rad^2, m^2) and the
/// process-noise scale sigma_a. Defaults follow the reference tuning
/// R = diag(1, 0.5, 0.5, 5), sigma_a = 1.
struct NoiseConfig {
  Eigen::Vector4d r_diag{1.0, 0.5, 0.5, 5.0};
  double sigma_a = 1.0;

  NoiseConfig() = default;
  NoiseConfig(const Eigen::Vector4d& r_diagonal, double sigma_a_scale);
};

/// UAV pose at measurement time; the measurement model and Jacobian need the
/// full rotation chain and the UAV position.
struct FilterContext {
  UavPose pose;
};

/// Prediction stage. The target is modeled as stationary (F = I), so the mean
/// is unchanged and P grows by Q = I * sigma_a * T^4 / 3 for gap time T.
/// Throws on T <= 0 or non-finite T.
EkfState predict(const EkfState& state, double gap_time_s,
                 const NoiseConfig& cfg);

/// Predicted measurement for a target position:
///   p_c = camera chain applied to (x - p_uav)
///   z_hat = [ |p_c|, atan(y_c/x_c), atan(z_c/x_c), x.z + z_uav ]
/// Returns nullopt when the target maps behind the camera (x_c <= 0).
std::optional<Eigen::Vector4d> measurement_model(const Position3& x,
                                                 const FilterContext& ctx);

/// Measurement Jacobian H (4x3). Rows 1-3 chain the camera-coordinate
/// partials through the camera<-inertial rotation; row 4 is [0, 0, 1].
/// Note the elevation-row denominators are x_c^2 + z_c^2, the analytic
/// derivative of atan(z_c/x_c). Returns nullopt behind the camera or when
/// x_c^2 + y_c^2 or x_c^2 + z_c^2 underflow below 1e-12.
std::optional<Eigen::Matrix<double, 4, 3>> jacobian(const Position3& x,
                                                    const FilterContext& ctx);

/// Measurement update. Angle components of the innovation are wrapped into
/// (-pi, pi] before applying the gain; the covariance update uses the Joseph
/// form, which equals (I - KH) * P_pred at the optimal gain but preserves
/// symmetry numerically. Returns nullopt when the predicted target is behind
/// the camera or the innovation covariance is not invertible (the update is
/// skipped, not clamped).
std::optional<EkfState> update(const EkfState& predicted, const Measurement& z,
                               const FilterContext& ctx,
                               const NoiseConfig& cfg);

/// One recursion step. Without a prior state the estimate is initialized
/// geometrically from the measurement's bearings and range with P = I.
/// Otherwise predicts over the gap time since the last valid measurement and
/// updates. Returns nullopt when the measurement cannot be applied (bearings
/// outside the front hemisphere on the first frame, or predicted target
/// behind the camera); the caller keeps its previous state in that case so
/// the gap time keeps accumulating. Throws on non-monotonic timestamps.
std::optional<EkfState> ekf_step(const std::optional<EkfState>& state,
                                 const Measurement& z, const FilterContext& ctx,
                                 const NoiseConfig& cfg);

/// Baseline: arithmetic mean of all geometric solutions so far. Throws on an
/// empty history.
Position3 mean_filter_step(std::span<const Position3> history);

/// Baseline: pass-through of the latest geometric solution.
Position3 no_filter_step(const Position3& latest);

}  // namespace skylink
