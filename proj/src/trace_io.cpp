#include "skylink/trace_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace skylink {

namespace {

constexpr const char* kTraceHeader =
    "time_s,true_x,true_y,true_z,ekf_x,ekf_y,ekf_z,mean_x,mean_y,mean_z,"
    "raw_x,raw_y,raw_z,meas_r,meas_alpha_rad,meas_eps_rad,meas_h,"
    "gimbal_pitch_deg,gimbal_yaw_deg,err2d_ekf,err2d_mean,err2d_raw";

constexpr const char* kLogHeader =
    "time_s,u,v,confidence,range_m,uav_x,uav_y,uav_z,uav_roll_deg,"
    "uav_pitch_deg,uav_yaw_deg,gimbal_roll_deg,gimbal_pitch_deg,"
    "gimbal_yaw_deg";

constexpr const char* kReplayHeader =
    "time_s,ekf_x,ekf_y,ekf_z,cov_xx,cov_yy,cov_zz";

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    out.push_back(field);
  }
  if (!line.empty() && line.back() == ',') {
    out.emplace_back();
  }
  return out;
}

double parse_double(const std::string& field, int line) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw LogParseError("measurement log line " + std::to_string(line) +
                        ": cannot parse number '" + field + "'");
  }
  return value;
}

void put_row(std::ostream& out, std::initializer_list<double> fields) {
  bool first = true;
  for (double f : fields) {
    if (!first) out << ',';
    out << format_double(f);
    first = false;
  }
  out << '\n';
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

void write_trace_csv(std::ostream& out, std::span<const TraceRecord> trace) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  out << kTraceHeader << '\n';
  for (const auto& rec : trace) {
    const bool has_meas = rec.measurement.has_value();
    put_row(out, {
        rec.time_s,
        rec.usv_true.x(), rec.usv_true.y(), rec.usv_true.z(),
        rec.ekf_estimate.x(), rec.ekf_estimate.y(), rec.ekf_estimate.z(),
        rec.mean_estimate.x(), rec.mean_estimate.y(), rec.mean_estimate.z(),
        rec.raw_estimate.x(), rec.raw_estimate.y(), rec.raw_estimate.z(),
        has_meas ? rec.measurement->range_m : nan,
        has_meas ? rec.measurement->azimuth : nan,
        has_meas ? rec.measurement->elevation : nan,
        has_meas ? rec.measurement->uav_height_m : nan,
        rad_to_deg(rec.gimbal.pitch), rad_to_deg(rec.gimbal.yaw),
        rec.error_2d_ekf, rec.error_2d_mean, rec.error_2d_raw,
    });
  }
}

void write_metrics_csv(std::ostream& out, const MetricsReport& report) {
  out << "strategy,time_s,err_x,err_y,err_2d\n";
  const auto emit = [&](const char* name, const StrategyMetrics& m) {
    for (const auto& cp : m.checkpoints) {
      out << name << ',' << format_double(cp.time_s) << ','
          << format_double(cp.err_x) << ',' << format_double(cp.err_y) << ','
          << format_double(cp.err_2d) << '\n';
    }
    out << name << ",mean,,," << format_double(m.mean_2d) << '\n';
    out << name << ",max,,," << format_double(m.max_2d) << '\n';
  };
  emit("ekf", report.ekf);
  emit("mean_filter", report.mean_filter);
  emit("no_filter", report.no_filter);
}

void write_measurement_log(std::ostream& out,
                           std::span<const TraceRecord> trace,
                           const UavPose& uav) {
  out << kLogHeader << '\n';
  for (const auto& rec : trace) {
    if (!rec.detection || !rec.measurement) continue;
    put_row(out, {
        rec.time_s,
        rec.detection->u, rec.detection->v, rec.detection->confidence,
        rec.measurement->range_m,
        uav.position.x(), uav.position.y(), uav.position.z(),
        rad_to_deg(uav.attitude.roll), rad_to_deg(uav.attitude.pitch),
        rad_to_deg(uav.attitude.yaw),
        rad_to_deg(rec.gimbal.roll), rad_to_deg(rec.gimbal.pitch),
        rad_to_deg(rec.gimbal.yaw),
    });
  }
}

std::vector<MeasurementLogRow> read_measurement_log(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kLogHeader) {
    throw LogParseError(
        "measurement log line 1: missing or unexpected header row");
  }
  std::vector<MeasurementLogRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 14) {
      throw LogParseError("measurement log line " + std::to_string(line_no) +
                          ": expected 14 fields, got " +
                          std::to_string(fields.size()));
    }
    double value[14];
    for (int i = 0; i < 14; ++i) {
      value[i] = parse_double(fields[i], line_no);
    }
    MeasurementLogRow row;
    row.time_s = value[0];
    row.u = value[1];
    row.v = value[2];
    row.confidence = value[3];
    row.range_m = value[4];
    row.uav_position = {value[5], value[6], value[7]};
    try {
      row.attitude = EulerAngles(deg_to_rad(value[8]), deg_to_rad(value[9]),
                                 deg_to_rad(value[10]));
      row.gimbal = EulerAngles(deg_to_rad(value[11]), deg_to_rad(value[12]),
                               deg_to_rad(value[13]));
    } catch (const std::invalid_argument& e) {
      throw LogParseError("measurement log line " + std::to_string(line_no) +
                          ": " + e.what());
    }
    row.line = line_no;
    if (!rows.empty() && !(row.time_s > rows.back().time_s)) {
      throw LogParseError("measurement log line " + std::to_string(line_no) +
                          ": time_s does not increase");
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<ReplayRow> replay_measurement_log(
    std::span<const MeasurementLogRow> rows, const CameraFov& fov,
    const NoiseConfig& filter_cfg, double min_confidence) {
  std::vector<ReplayRow> out;
  std::optional<EkfState> state;
  for (const auto& row : rows) {
    if (row.confidence < min_confidence) continue;
    try {
      const UavPose pose(row.uav_position, row.attitude, row.gimbal);
      const BearingPair bearing = pixel_to_bearings(row.u, row.v, fov);
      const Measurement z(row.range_m, bearing.azimuth, bearing.elevation,
                          row.uav_position.z(), row.time_s);
      if (auto stepped = ekf_step(state, z, FilterContext{pose}, filter_cfg)) {
        state = *stepped;
      }
    } catch (const std::invalid_argument& e) {
      throw LogParseError("measurement log line " + std::to_string(row.line) +
                          ": " + e.what());
    }
    if (state) {
      out.push_back(ReplayRow{row.time_s, state->x, state->P.diagonal()});
    }
  }
  return out;
}

void write_replay_csv(std::ostream& out, std::span<const ReplayRow> rows) {
  out << kReplayHeader << '\n';
  for (const auto& row : rows) {
    put_row(out, {
        row.time_s,
        row.estimate.x(), row.estimate.y(), row.estimate.z(),
        row.covariance_diagonal.x(), row.covariance_diagonal.y(),
        row.covariance_diagonal.z(),
    });
  }
}

}  // namespace skylink
