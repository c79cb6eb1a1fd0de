#pragma once

// Shared helpers for the unit and acceptance suites.

#include <sys/wait.h>

#include <Eigen/Dense>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "skylink/filters.hpp"
#include "skylink/geoloc.hpp"
#include "skylink/types.hpp"

namespace testsup {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Random UAV pose with a downward-looking gimbal, the geometry the system
/// operates in: altitude 5-50 m, gimbal pitch -80..-5 deg, free yaw, small
/// body roll/pitch.
inline skylink::UavPose random_pose(std::mt19937_64& rng) {
  using skylink::deg_to_rad;
  const skylink::Position3 position{uniform(rng, -50.0, 50.0),
                                    uniform(rng, -50.0, 50.0),
                                    uniform(rng, 5.0, 50.0)};
  const skylink::EulerAngles attitude(
      uniform(rng, deg_to_rad(-15.0), deg_to_rad(15.0)),
      uniform(rng, deg_to_rad(-15.0), deg_to_rad(15.0)),
      uniform(rng, -skylink::kPi, skylink::kPi));
  const skylink::EulerAngles gimbal(
      0.0, deg_to_rad(uniform(rng, -80.0, -5.0)),
      uniform(rng, -skylink::kPi, skylink::kPi));
  return skylink::UavPose(position, attitude, gimbal);
}

/// Random target in the camera front hemisphere at the given range interval.
inline skylink::Position3 random_target(std::mt19937_64& rng,
                                        const skylink::UavPose& pose,
                                        const skylink::CameraFov& fov,
                                        double range_lo, double range_hi,
                                        double fov_fill = 0.95) {
  const skylink::BearingPair bearing(
      uniform(rng, -fov_fill, fov_fill) * fov.horizontal_fov / 2.0,
      uniform(rng, -fov_fill, fov_fill) * fov.vertical_fov / 2.0);
  const double range = uniform(rng, range_lo, range_hi);
  return skylink::camera_to_inertial(
      skylink::bearings_range_to_camera_point(bearing, range), pose);
}

/// Central-difference Jacobian of the measurement model, the independent
/// oracle for the analytic H.
inline Eigen::Matrix<double, 4, 3> numerical_jacobian(
    const skylink::Position3& x, const skylink::FilterContext& ctx,
    double step = 1e-5) {
  Eigen::Matrix<double, 4, 3> jac;
  for (int j = 0; j < 3; ++j) {
    skylink::Position3 plus = x, minus = x;
    plus[j] += step;
    minus[j] -= step;
    const auto z_plus = skylink::measurement_model(plus, ctx);
    const auto z_minus = skylink::measurement_model(minus, ctx);
    jac.col(j) = (*z_plus - *z_minus) / (2.0 * step);
  }
  return jac;
}

/// Plain-equation recursion used as the compositional oracle: geometric init
/// with P = I on the first frame, then the textbook predict/update forms with
/// an inline measurement model, inline Jacobian and a dense matrix inverse.
/// Independent of the library's filter internals on purpose.
struct TextbookEkfOracle {
  std::optional<Eigen::Vector3d> x;
  Eigen::Matrix3d P = Eigen::Matrix3d::Identity();
  double last_time = 0.0;

  void step(const skylink::Measurement& z, const skylink::UavPose& pose,
            const skylink::NoiseConfig& cfg) {
    using skylink::wrap_angle;
    const Eigen::Matrix3d identity = Eigen::Matrix3d::Identity();
    if (!x) {
      x = skylink::geometric_solve(
          skylink::BearingPair(z.azimuth, z.elevation), z.range_m, pose);
      P = identity;
      last_time = z.time_s;
      return;
    }
    const double gap = z.time_s - last_time;
    const Eigen::Matrix3d p_pred =
        P + identity * (cfg.sigma_a * gap * gap * gap * gap / 3.0);

    const Eigen::Matrix3d chain = skylink::camera_from_inertial(pose).matrix();
    const Eigen::Vector3d pc = chain * (*x - pose.position);
    const double r = pc.norm();
    const Eigen::Vector4d z_hat(r, std::atan(pc.y() / pc.x()),
                                std::atan(pc.z() / pc.x()),
                                x->z() + pose.position.z());
    Eigen::Matrix3d partials;
    partials << pc.x() / r, pc.y() / r, pc.z() / r,
        -pc.y() / (pc.x() * pc.x() + pc.y() * pc.y()),
        pc.x() / (pc.x() * pc.x() + pc.y() * pc.y()), 0.0,
        -pc.z() / (pc.x() * pc.x() + pc.z() * pc.z()), 0.0,
        pc.x() / (pc.x() * pc.x() + pc.z() * pc.z());
    Eigen::Matrix<double, 4, 3> h;
    h.topRows<3>() = partials * chain;
    h.row(3) << 0.0, 0.0, 1.0;

    Eigen::Vector4d innovation = z.vector() - z_hat;
    innovation(1) = wrap_angle(innovation(1));
    innovation(2) = wrap_angle(innovation(2));
    const Eigen::Matrix4d s =
        h * p_pred * h.transpose() + Eigen::Matrix4d(cfg.r_diag.asDiagonal());
    const Eigen::Matrix<double, 3, 4> gain = p_pred * h.transpose() * s.inverse();
    x = *x + gain * innovation;
    P = (identity - gain * h) * p_pred;
    last_time = z.time_s;
  }
};

inline std::optional<std::string> env_var(const char* name) {
  const char* value = std::getenv(name);
  if (value == nullptr) return std::nullopt;
  return std::string(value);
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    static std::mt19937_64 rng{std::random_device{}()};
    path = std::filesystem::temp_directory_path() /
           ("skylink_test_" + std::to_string(rng()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path,
                       const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

inline std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

/// Runs a binary with the given argument string, capturing stdout/stderr.
inline CliResult run_cli_at(const std::string& bin, const std::string& args,
                            const TempDir& dir) {
  CliResult result;
  const auto out_path = dir.path / "cli_stdout.txt";
  const auto err_path = dir.path / "cli_stderr.txt";
  const std::string command = bin + " " + args + " >" + out_path.string() +
                              " 2>" + err_path.string();
  const int status = std::system(command.c_str());
  result.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status)
                                                        : -1;
  result.out = read_file(out_path);
  result.err = read_file(err_path);
  return result;
}

/// Same, with the binary path taken from SKYLINK_BIN.
inline CliResult run_cli(const std::string& args, const TempDir& dir) {
  const auto bin = env_var("SKYLINK_BIN");
  if (!bin) return {};
  return run_cli_at(*bin, args, dir);
}

}  // namespace testsup
