#include "skylink/config.hpp"

#include <initializer_list>
#include <set>
#include <string>

#include <yaml-cpp/yaml.h>

namespace skylink {

namespace {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void check_known_keys(const YAML::Node& node,
                      std::initializer_list<const char*> known,
                      const std::string& path) {
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& item : node) {
    const auto key = item.first.as<std::string>();
    if (!allowed.contains(key)) {
      throw ConfigError("unknown key: " + join(path, key));
    }
  }
}

YAML::Node require(const YAML::Node& node, const std::string& key,
                   const std::string& path) {
  const YAML::Node child = node[key];
  if (!child.IsDefined()) {
    throw ConfigError("missing key: " + join(path, key));
  }
  return child;
}

double as_double(const YAML::Node& node, const std::string& key_path) {
  try {
    return node.as<double>();
  } catch (const YAML::Exception&) {
    throw ConfigError("expected a number at key: " + key_path);
  }
}

double get_double(const YAML::Node& node, const std::string& key,
                  const std::string& path) {
  return as_double(require(node, key, path), join(path, key));
}

std::uint64_t get_u64(const YAML::Node& node, const std::string& key,
                      const std::string& path) {
  try {
    return require(node, key, path).as<std::uint64_t>();
  } catch (const YAML::Exception&) {
    throw ConfigError("expected an unsigned integer at key: " + join(path, key));
  }
}

std::vector<double> get_sequence(const YAML::Node& node, const std::string& key,
                                 const std::string& path, std::size_t size) {
  const YAML::Node seq = require(node, key, path);
  const std::string key_path = join(path, key);
  if (!seq.IsSequence() || seq.size() != size) {
    throw ConfigError("expected a sequence of " + std::to_string(size) +
                      " numbers at key: " + key_path);
  }
  std::vector<double> out;
  for (const auto& item : seq) {
    out.push_back(as_double(item, key_path));
  }
  return out;
}

EulerAngles get_angles_deg(const YAML::Node& node, const std::string& key,
                           const std::string& path) {
  const auto rpy = get_sequence(node, key, path, 3);
  try {
    return EulerAngles(deg_to_rad(rpy[0]), deg_to_rad(rpy[1]),
                       deg_to_rad(rpy[2]));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string(e.what()) + " at key: " + join(path, key));
  }
}

// Rewraps domain-type validation failures with the offending key path.
template <typename Fn>
auto at_key(const std::string& key_path, Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string(e.what()) + " at key: " + key_path);
  }
}

UavPose parse_uav(const YAML::Node& node) {
  check_known_keys(node, {"position_m", "attitude_deg", "gimbal_deg"}, "uav");
  const auto pos = get_sequence(node, "position_m", "uav", 3);
  return at_key("uav", [&] {
    return UavPose(Position3(pos[0], pos[1], pos[2]),
                   get_angles_deg(node, "attitude_deg", "uav"),
                   get_angles_deg(node, "gimbal_deg", "uav"));
  });
}

CameraFov parse_camera(const YAML::Node& node) {
  check_known_keys(node, {"horizontal_fov_deg", "vertical_fov_deg"}, "camera");
  return at_key("camera", [&] {
    return CameraFov(deg_to_rad(get_double(node, "horizontal_fov_deg", "camera")),
                     deg_to_rad(get_double(node, "vertical_fov_deg", "camera")));
  });
}

SensorNoise parse_noise(const YAML::Node& node, std::uint64_t seed) {
  check_known_keys(node,
                   {"pixel_sigma", "range_sigma_m", "miss_probability",
                    "confidence_floor"},
                   "sensor_noise");
  return at_key("sensor_noise", [&] {
    return SensorNoise(get_double(node, "pixel_sigma", "sensor_noise"),
                       get_double(node, "range_sigma_m", "sensor_noise"),
                       get_double(node, "miss_probability", "sensor_noise"),
                       get_double(node, "confidence_floor", "sensor_noise"),
                       seed);
  });
}

GimbalController parse_controller(const YAML::Node& node) {
  check_known_keys(node,
                   {"gain_azimuth", "gain_elevation", "pitch_limits_deg",
                    "yaw_limits_deg", "deadband"},
                   "gimbal_controller");
  const auto pitch = get_sequence(node, "pitch_limits_deg", "gimbal_controller", 2);
  const auto yaw = get_sequence(node, "yaw_limits_deg", "gimbal_controller", 2);
  return at_key("gimbal_controller", [&] {
    return GimbalController(
        get_double(node, "gain_azimuth", "gimbal_controller"),
        get_double(node, "gain_elevation", "gimbal_controller"),
        deg_to_rad(pitch[0]), deg_to_rad(pitch[1]), deg_to_rad(yaw[0]),
        deg_to_rad(yaw[1]), get_double(node, "deadband", "gimbal_controller"));
  });
}

SearchPattern parse_search(const YAML::Node& node) {
  check_known_keys(node, {"enabled", "sweep_rate_deg_s", "pitch_levels_deg"},
                   "search");
  SearchPattern out;
  try {
    out.enabled = require(node, "enabled", "search").as<bool>();
  } catch (const YAML::Exception&) {
    throw ConfigError("expected a boolean at key: search.enabled");
  }
  if (node["sweep_rate_deg_s"].IsDefined()) {
    out.sweep_rate = deg_to_rad(get_double(node, "sweep_rate_deg_s", "search"));
  }
  if (node["pitch_levels_deg"].IsDefined()) {
    const auto levels = get_sequence(node, "pitch_levels_deg", "search", 2);
    out.pitch_low = deg_to_rad(levels[0]);
    out.pitch_high = deg_to_rad(levels[1]);
  }
  if (!(out.sweep_rate > 0.0) || out.pitch_low > out.pitch_high) {
    throw ConfigError("search parameters out of range at key: search");
  }
  return out;
}

UsvPlan parse_plan(const YAML::Node& node) {
  const std::string path = "usv.plan";
  const bool has_waypoints = node["waypoints_m"].IsDefined();
  const bool has_legs = node["velocity_legs"].IsDefined();
  if (has_waypoints == has_legs) {
    throw ConfigError(
        "usv.plan must contain exactly one of waypoints_m or velocity_legs");
  }
  if (has_waypoints) {
    check_known_keys(node,
                     {"waypoints_m", "surge_mps", "turn_rate_limit_deg_s",
                      "capture_radius_m"},
                     path);
    WaypointPlan plan;
    const YAML::Node wps = node["waypoints_m"];
    if (!wps.IsSequence() || wps.size() == 0) {
      throw ConfigError("expected a non-empty sequence at key: " + path +
                        ".waypoints_m");
    }
    for (const auto& wp : wps) {
      if (!wp.IsSequence() || wp.size() != 2) {
        throw ConfigError("each waypoint must be [x, y] at key: " + path +
                          ".waypoints_m");
      }
      plan.waypoints.emplace_back(as_double(wp[0], path),
                                  as_double(wp[1], path));
    }
    plan.surge_mps = get_double(node, "surge_mps", path);
    plan.turn_rate_limit =
        deg_to_rad(get_double(node, "turn_rate_limit_deg_s", path));
    plan.capture_radius_m = get_double(node, "capture_radius_m", path);
    return plan;
  }
  check_known_keys(node, {"velocity_legs"}, path);
  std::vector<VelocityLeg> legs;
  for (const auto& leg : node["velocity_legs"]) {
    check_known_keys(leg, {"duration_s", "surge_mps", "sway_mps", "yaw_deg"},
                     path + ".velocity_legs");
    legs.push_back(VelocityLeg{
        get_double(leg, "duration_s", path),
        get_double(leg, "surge_mps", path),
        get_double(leg, "sway_mps", path),
        deg_to_rad(get_double(leg, "yaw_deg", path))});
    if (!(legs.back().duration_s > 0.0)) {
      throw ConfigError("leg duration_s must be > 0 at key: " + path);
    }
  }
  if (legs.empty()) {
    throw ConfigError("expected at least one leg at key: " + path +
                      ".velocity_legs");
  }
  return legs;
}

WaveDisturbance parse_disturbance(const YAML::Node& node) {
  check_known_keys(node,
                   {"wave_amplitude_mps", "wave_period_s", "wave_heading_deg",
                    "jitter_sigma_mps"},
                   "disturbance");
  WaveDisturbance out;
  out.amplitude_mps = get_double(node, "wave_amplitude_mps", "disturbance");
  out.period_s = get_double(node, "wave_period_s", "disturbance");
  out.heading = deg_to_rad(get_double(node, "wave_heading_deg", "disturbance"));
  if (node["jitter_sigma_mps"].IsDefined()) {
    out.jitter_sigma_mps = get_double(node, "jitter_sigma_mps", "disturbance");
  }
  return out;
}

NoiseConfig parse_filter(const YAML::Node& node) {
  check_known_keys(node, {"r_diag", "sigma_a", "min_confidence"}, "filter");
  const auto diag = get_sequence(node, "r_diag", "filter", 4);
  return at_key("filter", [&] {
    return NoiseConfig(Eigen::Vector4d(diag[0], diag[1], diag[2], diag[3]),
                       get_double(node, "sigma_a", "filter"));
  });
}

ScenarioConfig parse_document(const YAML::Node& root) {
  if (!root.IsMap()) {
    throw ConfigError("scenario document must be a mapping");
  }
  check_known_keys(root,
                   {"duration_s", "dt_s", "measurement_period_s", "seed", "uav",
                    "camera", "sensor_noise", "gimbal_controller", "search",
                    "usv", "disturbance", "filter"},
                   "");

  ScenarioConfig cfg;
  cfg.duration_s = get_double(root, "duration_s", "");
  cfg.dt_s = get_double(root, "dt_s", "");
  cfg.measurement_period_s = get_double(root, "measurement_period_s", "");
  cfg.seed = get_u64(root, "seed", "");

  cfg.uav = parse_uav(require(root, "uav", ""));
  cfg.fov = parse_camera(require(root, "camera", ""));
  cfg.noise = parse_noise(require(root, "sensor_noise", ""), cfg.seed);
  cfg.controller = parse_controller(require(root, "gimbal_controller", ""));
  if (root["search"].IsDefined()) {
    cfg.search = parse_search(root["search"]);
  }

  const YAML::Node usv = require(root, "usv", "");
  check_known_keys(usv, {"start_m", "initial_yaw_deg", "water_height_m", "plan"},
                   "usv");
  const auto start = get_sequence(usv, "start_m", "usv", 2);
  cfg.usv_start = {start[0], start[1]};
  cfg.usv_initial_yaw = deg_to_rad(get_double(usv, "initial_yaw_deg", "usv"));
  cfg.water_height_m = get_double(usv, "water_height_m", "usv");
  cfg.usv_plan = parse_plan(require(usv, "plan", "usv"));

  cfg.disturbance = parse_disturbance(require(root, "disturbance", ""));

  const YAML::Node filter = require(root, "filter", "");
  cfg.filter = parse_filter(filter);
  cfg.min_confidence = get_double(filter, "min_confidence", "filter");

  try {
    validate_scenario(cfg);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

}  // namespace

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path.string());
  } catch (const YAML::BadFile&) {
    throw ConfigError("cannot read config file: " + path.string());
  } catch (const YAML::ParserException& e) {
    throw ConfigError("malformed config file " + path.string() + ": " +
                      e.what());
  }
  return parse_document(root);
}

ScenarioConfig parse_scenario(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return parse_document(root);
}

}  // namespace skylink
