#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "skylink/simworld.hpp"

namespace skylink {

/// Shortest decimal representation that parses back to the same double
/// (so byte-wise file comparison doubles as a determinism check).
std::string format_double(double value);

/// Trace CSV with the fixed column order
///   time_s,true_x,true_y,true_z,ekf_x,ekf_y,ekf_z,mean_x,mean_y,mean_z,
///   raw_x,raw_y,raw_z,meas_r,meas_alpha_rad,meas_eps_rad,meas_h,
///   gimbal_pitch_deg,gimbal_yaw_deg,err2d_ekf,err2d_mean,err2d_raw
/// Records without a measurement carry nan in the meas_* columns.
void write_trace_csv(std::ostream& out, std::span<const TraceRecord> trace);

/// Metrics CSV: one row per strategy and checkpoint
/// (strategy,time_s,err_x,err_y,err_2d) plus mean/max rows per strategy with
/// the statistic name in the time_s column.
void write_metrics_csv(std::ostream& out, const MetricsReport& report);

/// Measurement-log CSV row (angles in degrees in the file).
struct MeasurementLogRow {
  double time_s;
  double u;
  double v;
  double confidence;
  double range_m;
  Position3 uav_position;
  EulerAngles attitude;
  EulerAngles gimbal;
  int line = 0;  // 1-based source line, for diagnostics
};

/// Raised on malformed measurement logs; the message names the file line.
class LogParseError : public std::runtime_error {
 public:
  explicit LogParseError(const std::string& message)
      : std::runtime_error(message) {}
};

/// Writes the measurement log extracted from a scenario trace (one row per
/// record that carries a detection).
void write_measurement_log(std::ostream& out,
                           std::span<const TraceRecord> trace,
                           const UavPose& uav);

/// Parses and validates a measurement log: mandatory header, numeric fields,
/// strictly increasing time. Throws LogParseError naming the line otherwise.
std::vector<MeasurementLogRow> read_measurement_log(std::istream& in);

struct ReplayRow {
  double time_s;
  Position3 estimate;
  Eigen::Vector3d covariance_diagonal;
};

/// Runs the filter over a recorded log: bearings are rebuilt from (u, v) and
/// the fov, then fed through the same recursion the simulator uses. Rows
/// below min_confidence are skipped, mirroring the simulator's validity gate.
/// Returns one row per accepted log row from the first valid measurement on.
/// Throws LogParseError naming the line when a row cannot form a valid
/// measurement.
std::vector<ReplayRow> replay_measurement_log(
    std::span<const MeasurementLogRow> rows, const CameraFov& fov,
    const NoiseConfig& filter_cfg, double min_confidence = 0.0);

/// Replay-estimate CSV: time_s,ekf_x,ekf_y,ekf_z,cov_xx,cov_yy,cov_zz.
void write_replay_csv(std::ostream& out, std::span<const ReplayRow> rows);

}  // namespace skylink
