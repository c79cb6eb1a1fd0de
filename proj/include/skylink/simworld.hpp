#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <variant>
#include <vector>

#include "skylink/filters.hpp"
#include "skylink/geoloc.hpp"
#include "skylink/sensing.hpp"
#include "skylink/types.hpp"

namespace skylink {

/// Planar USV state; z stays pinned to the configured water-plane height.
struct UsvState {
  Position3 position{0.0, 0.0, 0.0};
  double yaw = 0.0;        // radians, ENU (0 = east, pi/2 = north)
  double surge_mps = 0.0;  // body-frame forward speed
  double sway_mps = 0.0;   // body-frame leftward speed
};

/// Sinusoidal wave-drift velocity plus optional Gaussian velocity jitter.
struct WaveDisturbance {
  double amplitude_mps = 0.0;
  double period_s = 1.0;
  double heading = 0.0;  // radians, direction the drift pushes toward
  double jitter_sigma_mps = 0.0;
};

/// Steer toward a waypoint at the given surge speed with a bounded turn rate.
struct WaypointCommand {
  Eigen::Vector2d target;
  double surge_mps;
  double turn_rate_limit = deg_to_rad(20.0);  // rad/s
};

/// Follow commanded body velocities and heading directly.
struct VelocityCommand {
  double surge_mps = 0.0;
  double sway_mps = 0.0;
  double yaw = 0.0;
};

using UsvCommand = std::variant<WaypointCommand, VelocityCommand>;

/// Waypoint-following plan: visit each waypoint in order (advancing within
/// the capture radius), then hold position.
struct WaypointPlan {
  std::vector<Eigen::Vector2d> waypoints;
  double surge_mps = 2.0;
  double turn_rate_limit = deg_to_rad(20.0);
  double capture_radius_m = 5.0;
};

/// Velocity-schedule plan: a sequence of constant-velocity legs.
struct VelocityLeg {
  double duration_s;
  double surge_mps;
  double sway_mps;
  double yaw;
};

using UsvPlan = std::variant<WaypointPlan, std::vector<VelocityLeg>>;

/// Optional raster search executed before the first detection: the gimbal
/// sweeps yaw between the controller limits at sweep_rate, stepping pitch
/// between the two levels at each yaw reversal.
struct SearchPattern {
  bool enabled = false;
  double sweep_rate = deg_to_rad(20.0);  // rad/s yaw slew
  double pitch_low = deg_to_rad(-60.0);
  double pitch_high = deg_to_rad(-10.0);
};

/// Full description of a deterministic scenario run.
struct ScenarioConfig {
  double duration_s = 100.0;
  double dt_s = 0.1;
  double measurement_period_s = 1.0;
  std::uint64_t seed = 0;

  UavPose uav;  // hovering pose; gimbal angles are the initial ones
  CameraFov fov{deg_to_rad(60.0), deg_to_rad(45.0)};
  SensorNoise noise;
  GimbalController controller{0.2, 0.2, deg_to_rad(-120.0), deg_to_rad(30.0),
                              -kPi, kPi, 0.0};
  SearchPattern search;

  Eigen::Vector2d usv_start{0.0, 0.0};
  double usv_initial_yaw = 0.0;
  double water_height_m = 0.0;
  UsvPlan usv_plan = WaypointPlan{};
  WaveDisturbance disturbance;

  NoiseConfig filter;
  double min_confidence = 0.0;
};

/// Throws std::invalid_argument naming the offending field when the timing
/// grid or plan is unusable.
void validate_scenario(const ScenarioConfig& cfg);

/// One per simulation step. Estimate fields hold NaN until the first valid
/// measurement initializes the filters; error fields are the 2D (x, y)
/// distances of each estimate from the true position.
struct TraceRecord {
  double time_s = 0.0;
  Position3 usv_true{0.0, 0.0, 0.0};
  Position3 ekf_estimate = nan_position();
  Position3 mean_estimate = nan_position();
  Position3 raw_estimate = nan_position();
  std::optional<Measurement> measurement;
  std::optional<Detection> detection;  // payload behind `measurement`
  EulerAngles gimbal;
  double error_2d_ekf = std::numeric_limits<double>::quiet_NaN();
  double error_2d_mean = std::numeric_limits<double>::quiet_NaN();
  double error_2d_raw = std::numeric_limits<double>::quiet_NaN();
};

/// Kinematic USV step: heading update per the command, body velocity rotated
/// into the world, wave drift A*sin(2*pi*t/period) toward the wave heading,
/// optional velocity jitter; z re-pinned to the water plane.
UsvState usv_step(const UsvState& state, const UsvCommand& command, double dt_s,
                  const WaveDisturbance& disturbance, double time_s,
                  double water_height_m, std::mt19937_64& rng);

/// Runs the scenario: steps the world at dt, samples the sensors every
/// measurement period, applies the gimbal controller and the three
/// estimators, and emits one TraceRecord per step. A pure function of the
/// config, including its seed.
std::vector<TraceRecord> run_scenario(const ScenarioConfig& cfg);

struct CheckpointMetrics {
  double time_s;     // requested checkpoint
  double record_time_s;  // time of the record actually used
  double err_x;      // signed, estimate - truth
  double err_y;
  double err_2d;
};

struct StrategyMetrics {
  std::vector<CheckpointMetrics> checkpoints;
  double mean_2d = 0.0;  // over records with an initialized estimate
  double max_2d = 0.0;
};

struct MetricsReport {
  StrategyMetrics ekf;
  StrategyMetrics mean_filter;
  StrategyMetrics no_filter;
};

/// Errors at each checkpoint (nearest record at or before it) plus the mean
/// and max 2D error over the trace. Throws on an empty trace or checkpoints
/// outside [0, last record time].
MetricsReport compute_metrics(std::span<const TraceRecord> trace,
                              std::span<const double> checkpoints);

}  // namespace skylink
