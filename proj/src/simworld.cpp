#include "skylink/simworld.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace skylink {

namespace {

double hypot2d(const Position3& a, const Position3& b) {
  return std::hypot(a.x() - b.x(), a.y() - b.y());
}

// Derives this step's command from the plan. Waypoint plans advance their
// index (held by the caller) inside the capture radius and hold position
// after the last waypoint.
UsvCommand plan_command(const UsvPlan& plan, const UsvState& usv,
                        double time_s, std::size_t& waypoint_index) {
  if (const auto* wp = std::get_if<WaypointPlan>(&plan)) {
    while (waypoint_index < wp->waypoints.size() &&
           (wp->waypoints[waypoint_index] - usv.position.head<2>()).norm() <
               wp->capture_radius_m) {
      ++waypoint_index;
    }
    if (waypoint_index >= wp->waypoints.size()) {
      return VelocityCommand{0.0, 0.0, usv.yaw};  // hold after the last leg
    }
    return WaypointCommand{wp->waypoints[waypoint_index], wp->surge_mps,
                           wp->turn_rate_limit};
  }
  const auto& legs = std::get<std::vector<VelocityLeg>>(plan);
  double t = time_s;
  for (const auto& leg : legs) {
    if (t < leg.duration_s) {
      return VelocityCommand{leg.surge_mps, leg.sway_mps, leg.yaw};
    }
    t -= leg.duration_s;
  }
  return VelocityCommand{0.0, 0.0, usv.yaw};
}

// Raster search state: yaw sweeps between the controller limits, pitch
// toggles between the two levels at each reversal.
struct RasterState {
  int yaw_direction = 1;
  bool pitch_high = false;
};

EulerAngles raster_step(const EulerAngles& gimbal, const SearchPattern& search,
                        const GimbalController& ctrl, double dt_s,
                        RasterState& state) {
  double yaw = gimbal.yaw + state.yaw_direction * search.sweep_rate * dt_s;
  double pitch = state.pitch_high ? search.pitch_high : search.pitch_low;
  if (yaw >= ctrl.yaw_max) {
    yaw = ctrl.yaw_max;
    state.yaw_direction = -1;
    state.pitch_high = !state.pitch_high;
  } else if (yaw <= ctrl.yaw_min) {
    yaw = ctrl.yaw_min;
    state.yaw_direction = 1;
    state.pitch_high = !state.pitch_high;
  }
  return EulerAngles(gimbal.roll, std::clamp(pitch, ctrl.pitch_min, ctrl.pitch_max),
                     yaw);
}

}  // namespace

void validate_scenario(const ScenarioConfig& cfg) {
  if (!(cfg.dt_s > 0.0) || !std::isfinite(cfg.dt_s)) {
    throw std::invalid_argument("scenario: dt_s must be > 0");
  }
  if (!(cfg.duration_s >= cfg.dt_s) || !std::isfinite(cfg.duration_s)) {
    throw std::invalid_argument("scenario: duration_s must be >= dt_s");
  }
  if (!(cfg.measurement_period_s >= cfg.dt_s) ||
      !std::isfinite(cfg.measurement_period_s)) {
    throw std::invalid_argument(
        "scenario: measurement_period_s must be >= dt_s");
  }
  if (!(cfg.min_confidence >= 0.0 && cfg.min_confidence <= 1.0)) {
    throw std::invalid_argument("scenario: min_confidence must be in [0, 1]");
  }
  if (const auto* wp = std::get_if<WaypointPlan>(&cfg.usv_plan)) {
    if (!(wp->surge_mps >= 0.0) || !(wp->turn_rate_limit > 0.0) ||
        !(wp->capture_radius_m > 0.0)) {
      throw std::invalid_argument("scenario: waypoint plan parameters invalid");
    }
  }
  if (!(cfg.disturbance.period_s > 0.0) ||
      cfg.disturbance.amplitude_mps < 0.0 ||
      cfg.disturbance.jitter_sigma_mps < 0.0) {
    throw std::invalid_argument("scenario: disturbance parameters invalid");
  }
}

UsvState usv_step(const UsvState& state, const UsvCommand& command, double dt_s,
                  const WaveDisturbance& disturbance, double time_s,
                  double water_height_m, std::mt19937_64& rng) {
  if (!(dt_s > 0.0)) {
    throw std::invalid_argument("usv_step: dt must be > 0");
  }
  UsvState next = state;
  if (const auto* wp = std::get_if<WaypointCommand>(&command)) {
    const Eigen::Vector2d to_target = wp->target - state.position.head<2>();
    const double desired_yaw = std::atan2(to_target.y(), to_target.x());
    const double max_step = wp->turn_rate_limit * dt_s;
    const double yaw_err = wrap_angle(desired_yaw - state.yaw);
    next.yaw = wrap_angle(state.yaw + std::clamp(yaw_err, -max_step, max_step));
    next.surge_mps = wp->surge_mps;
    next.sway_mps = 0.0;
  } else {
    const auto& vel = std::get<VelocityCommand>(command);
    next.yaw = wrap_angle(vel.yaw);
    next.surge_mps = vel.surge_mps;
    next.sway_mps = vel.sway_mps;
  }

  const double c = std::cos(next.yaw), s = std::sin(next.yaw);
  Eigen::Vector2d velocity{c * next.surge_mps - s * next.sway_mps,
                           s * next.surge_mps + c * next.sway_mps};
  const double wave =
      disturbance.amplitude_mps *
      std::sin(kTwoPi * time_s / disturbance.period_s);
  velocity.x() += wave * std::cos(disturbance.heading);
  velocity.y() += wave * std::sin(disturbance.heading);
  if (disturbance.jitter_sigma_mps > 0.0) {
    std::normal_distribution<double> jitter(0.0, disturbance.jitter_sigma_mps);
    velocity.x() += jitter(rng);
    velocity.y() += jitter(rng);
  }

  next.position.head<2>() += velocity * dt_s;
  next.position.z() = water_height_m;
  return next;
}

std::vector<TraceRecord> run_scenario(const ScenarioConfig& cfg) {
  validate_scenario(cfg);

  std::mt19937_64 rng(cfg.seed);
  const auto steps = static_cast<std::size_t>(
      std::llround(cfg.duration_s / cfg.dt_s));
  const auto measure_every = static_cast<std::size_t>(
      std::llround(cfg.measurement_period_s / cfg.dt_s));

  UsvState usv;
  usv.position = {cfg.usv_start.x(), cfg.usv_start.y(), cfg.water_height_m};
  usv.yaw = cfg.usv_initial_yaw;

  EulerAngles gimbal = cfg.uav.gimbal;
  RasterState raster;
  bool target_acquired = false;

  std::optional<EkfState> ekf;
  std::vector<Position3> solve_history;
  Position3 mean_estimate = nan_position();
  Position3 raw_estimate = nan_position();

  std::size_t waypoint_index = 0;
  std::vector<TraceRecord> trace;
  trace.reserve(steps + 1);

  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * cfg.dt_s;
    const UavPose pose(cfg.uav.position, cfg.uav.attitude, gimbal);

    TraceRecord rec;
    rec.time_s = t;
    rec.usv_true = usv.position;

    if (k % measure_every == 0) {
      const auto det =
          simulate_detection(usv.position, pose, cfg.fov, cfg.noise, rng, t);
      if (det && det->confidence >= cfg.min_confidence) {
        target_acquired = true;
        const double range =
            simulate_range(usv.position, cfg.uav.position, cfg.noise, rng);
        const BearingPair bearing = pixel_to_bearings(det->u, det->v, cfg.fov);
        const Measurement z(range, bearing.azimuth, bearing.elevation,
                            cfg.uav.position.z(), t);

        raw_estimate = geometric_solve(bearing, range, pose);
        solve_history.push_back(raw_estimate);
        mean_estimate = mean_filter_step(solve_history);
        if (auto stepped = ekf_step(ekf, z, FilterContext{pose}, cfg.filter)) {
          ekf = *stepped;
        }

        rec.measurement = z;
        rec.detection = *det;
        gimbal = gimbal_control_step(gimbal, *det, cfg.controller);
      }
    }
    if (cfg.search.enabled && !target_acquired) {
      gimbal = raster_step(gimbal, cfg.search, cfg.controller, cfg.dt_s, raster);
    }

    if (ekf) {
      rec.ekf_estimate = ekf->x;
      rec.error_2d_ekf = hypot2d(ekf->x, usv.position);
    }
    if (!solve_history.empty()) {
      rec.mean_estimate = mean_estimate;
      rec.raw_estimate = no_filter_step(raw_estimate);
      rec.error_2d_mean = hypot2d(mean_estimate, usv.position);
      rec.error_2d_raw = hypot2d(raw_estimate, usv.position);
    }
    rec.gimbal = pose.gimbal;  // gimbal the step's measurement actually used
    trace.push_back(rec);

    const UsvCommand command = plan_command(cfg.usv_plan, usv, t, waypoint_index);
    usv = usv_step(usv, command, cfg.dt_s, cfg.disturbance, t,
                   cfg.water_height_m, rng);
  }
  return trace;
}

namespace {

StrategyMetrics strategy_metrics(std::span<const TraceRecord> trace,
                                 std::span<const double> checkpoints,
                                 const Position3 TraceRecord::* estimate,
                                 const double TraceRecord::* err2d) {
  StrategyMetrics out;
  for (double cp : checkpoints) {
    const TraceRecord* best = nullptr;
    for (const auto& rec : trace) {
      if (rec.time_s <= cp + 1e-9) best = &rec;
    }
    // validated by compute_metrics: best != nullptr
    CheckpointMetrics m;
    m.time_s = cp;
    m.record_time_s = best->time_s;
    m.err_x = (best->*estimate).x() - best->usv_true.x();
    m.err_y = (best->*estimate).y() - best->usv_true.y();
    m.err_2d = best->*err2d;
    out.checkpoints.push_back(m);
  }
  double sum = 0.0;
  std::size_t n = 0;
  out.max_2d = 0.0;
  for (const auto& rec : trace) {
    const double e = rec.*err2d;
    if (std::isnan(e)) continue;  // before the first fix
    sum += e;
    out.max_2d = std::max(out.max_2d, e);
    ++n;
  }
  out.mean_2d = n > 0 ? sum / static_cast<double>(n)
                      : std::numeric_limits<double>::quiet_NaN();
  return out;
}

}  // namespace

MetricsReport compute_metrics(std::span<const TraceRecord> trace,
                              std::span<const double> checkpoints) {
  if (trace.empty()) {
    throw std::invalid_argument("compute_metrics: trace is empty");
  }
  const double t_end = trace.back().time_s;
  for (double cp : checkpoints) {
    if (!(cp >= 0.0) || cp > t_end + 1e-9) {
      throw std::invalid_argument(
          "compute_metrics: checkpoint outside the trace time range");
    }
  }
  MetricsReport report;
  report.ekf = strategy_metrics(trace, checkpoints, &TraceRecord::ekf_estimate,
                                &TraceRecord::error_2d_ekf);
  report.mean_filter =
      strategy_metrics(trace, checkpoints, &TraceRecord::mean_estimate,
                       &TraceRecord::error_2d_mean);
  report.no_filter =
      strategy_metrics(trace, checkpoints, &TraceRecord::raw_estimate,
                       &TraceRecord::error_2d_raw);
  return report;
}

}  // namespace skylink
