#include "skylink/filters.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace skylink {

namespace {

// Guard for the azimuth/elevation partial denominators.
constexpr double kSingularGuard = 1e-12;

Eigen::Matrix3d process_noise(double gap_time_s, const NoiseConfig& cfg) {
  const double t2 = gap_time_s * gap_time_s;
  return Eigen::Matrix3d::Identity() * (cfg.sigma_a * t2 * t2 / 3.0);
}

}  // namespace

bool covariance_healthy(const Eigen::Matrix3d& P, double sym_tol,
                        double eig_floor) {
  if (!P.allFinite()) return false;
  if ((P - P.transpose()).cwiseAbs().maxCoeff() > sym_tol) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(P);
  return eig.eigenvalues().minCoeff() >= eig_floor;
}

Measurement::Measurement(double range, double azimuth_rad,
                         double elevation_rad, double uav_height, double time)
    : range_m(range),
      azimuth(wrap_angle(azimuth_rad)),
      elevation(wrap_angle(elevation_rad)),
      uav_height_m(uav_height),
      time_s(time) {
  if (!(range_m > 0.0) || !std::isfinite(range_m)) {
    throw std::invalid_argument("Measurement: range must be > 0");
  }
  if (!std::isfinite(azimuth_rad) || !std::isfinite(elevation_rad) ||
      !std::isfinite(uav_height_m) || !std::isfinite(time_s)) {
    throw std::invalid_argument("Measurement: fields must be finite");
  }
}

NoiseConfig::NoiseConfig(const Eigen::Vector4d& r_diagonal,
                         double sigma_a_scale)
    : r_diag(r_diagonal), sigma_a(sigma_a_scale) {
  if (!(r_diag.minCoeff() > 0.0) || !r_diag.allFinite() || !(sigma_a > 0.0) ||
      !std::isfinite(sigma_a)) {
    throw std::invalid_argument("NoiseConfig: entries must be > 0");
  }
}

EkfState predict(const EkfState& state, double gap_time_s,
                 const NoiseConfig& cfg) {
  if (!(gap_time_s > 0.0) || !std::isfinite(gap_time_s)) {
    throw std::invalid_argument("predict: gap time must be > 0");
  }
  EkfState out = state;  // F = I, mean unchanged
  out.P = state.P + process_noise(gap_time_s, cfg);
  return out;
}

std::optional<Eigen::Vector4d> measurement_model(const Position3& x,
                                                 const FilterContext& ctx) {
  const Position3 pc = inertial_to_camera(x, ctx.pose);
  if (!(pc.x() > 0.0)) {
    return std::nullopt;  // target behind camera
  }
  return Eigen::Vector4d{pc.norm(), std::atan(pc.y() / pc.x()),
                         std::atan(pc.z() / pc.x()),
                         x.z() + ctx.pose.position.z()};
}

std::optional<Eigen::Matrix<double, 4, 3>> jacobian(const Position3& x,
                                                    const FilterContext& ctx) {
  const RotationMatrix3 cam_from_inert = camera_from_inertial(ctx.pose);
  const Position3 pc = rotate(cam_from_inert, x - ctx.pose.position);
  const double xc = pc.x(), yc = pc.y(), zc = pc.z();
  if (!(xc > 0.0)) {
    return std::nullopt;
  }
  const double r = pc.norm();
  const double xy2 = xc * xc + yc * yc;
  const double xz2 = xc * xc + zc * zc;
  if (xy2 <= kSingularGuard || xz2 <= kSingularGuard) {
    return std::nullopt;
  }

  Eigen::Matrix3d partials;  // d[r, alpha, epsilon] / d p_c
  partials << xc / r, yc / r, zc / r,
      -yc / xy2, xc / xy2, 0.0,
      -zc / xz2, 0.0, xc / xz2;

  Eigen::Matrix<double, 4, 3> h;
  h.topRows<3>() = partials * cam_from_inert.matrix();
  h.row(3) << 0.0, 0.0, 1.0;
  return h;
}

std::optional<EkfState> update(const EkfState& predicted, const Measurement& z,
                               const FilterContext& ctx,
                               const NoiseConfig& cfg) {
  const auto z_hat = measurement_model(predicted.x, ctx);
  const auto h = jacobian(predicted.x, ctx);
  if (!z_hat || !h) {
    return std::nullopt;
  }

  Eigen::Vector4d innovation = z.vector() - *z_hat;
  innovation(1) = wrap_angle(innovation(1));
  innovation(2) = wrap_angle(innovation(2));

  const Eigen::Matrix4d r_cov = cfg.r_diag.asDiagonal();
  const Eigen::Matrix4d s = *h * predicted.P * h->transpose() + r_cov;
  const Eigen::LLT<Eigen::Matrix4d> llt(s);
  if (llt.info() != Eigen::Success) {
    return std::nullopt;  // cannot happen with positive r_diag, but guarded
  }
  const Eigen::Matrix<double, 3, 4> gain =
      llt.solve(*h * predicted.P).transpose();

  EkfState out;
  out.x = predicted.x + gain * innovation;
  const Eigen::Matrix3d i_kh =
      Eigen::Matrix3d::Identity() - gain * *h;
  Eigen::Matrix3d p =
      i_kh * predicted.P * i_kh.transpose() + gain * r_cov * gain.transpose();
  out.P = 0.5 * (p + p.transpose());
  out.last_update_time = z.time_s;
  return out;
}

std::optional<EkfState> ekf_step(const std::optional<EkfState>& state,
                                 const Measurement& z, const FilterContext& ctx,
                                 const NoiseConfig& cfg) {
  if (!state) {
    // First valid frame: geometric initialization with unit covariance.
    if (std::abs(z.azimuth) >= kPi / 2.0 || std::abs(z.elevation) >= kPi / 2.0) {
      return std::nullopt;  // bearings outside the front hemisphere
    }
    EkfState init;
    init.x = geometric_solve(BearingPair(z.azimuth, z.elevation), z.range_m,
                             ctx.pose);
    init.P = Eigen::Matrix3d::Identity();
    init.last_update_time = z.time_s;
    return init;
  }
  if (!(z.time_s > state->last_update_time)) {
    throw std::invalid_argument("ekf_step: timestamps must increase");
  }
  const EkfState predicted =
      predict(*state, z.time_s - state->last_update_time, cfg);
  return update(predicted, z, ctx, cfg);
}

Position3 mean_filter_step(std::span<const Position3> history) {
  if (history.empty()) {
    throw std::invalid_argument("mean_filter_step: history is empty");
  }
  Position3 sum = Position3::Zero();
  for (const auto& p : history) sum += p;
  return sum / static_cast<double>(history.size());
}

Position3 no_filter_step(const Position3& latest) { return latest; }

}  // namespace skylink
