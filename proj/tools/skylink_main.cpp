#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "skylink/config.hpp"
#include "skylink/log.hpp"
#include "skylink/simworld.hpp"
#include "skylink/trace_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitIoError = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename WriteFn>
void write_file(const std::string& path, WriteFn&& write) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open output file: " + path);
  }
  write(out);
  out.flush();
  if (!out) {
    throw IoError("write failed: " + path);
  }
}

skylink::ScenarioConfig load_with_overrides(
    const std::string& config_path, const std::optional<std::uint64_t>& seed) {
  skylink::ScenarioConfig cfg = skylink::load_scenario(config_path);
  if (seed) {
    cfg.seed = *seed;
    cfg.noise.seed = *seed;
  }
  return cfg;
}

int run_simulate(const std::string& config_path, const std::string& output_path,
                 const std::optional<std::uint64_t>& seed,
                 const std::string& log_path) {
  const auto cfg = load_with_overrides(config_path, seed);
  const auto trace = skylink::run_scenario(cfg);
  write_file(output_path,
             [&](std::ostream& out) { skylink::write_trace_csv(out, trace); });
  skylink::log_info("wrote " + std::to_string(trace.size()) +
                    " trace rows to " + output_path);
  if (!log_path.empty()) {
    write_file(log_path, [&](std::ostream& out) {
      skylink::write_measurement_log(out, trace, cfg.uav);
    });
    skylink::log_info("wrote measurement log to " + log_path);
  }
  return kExitOk;
}

int run_compare(const std::string& config_path, const std::string& output_path,
                const std::optional<std::uint64_t>& seed,
                const std::vector<double>& checkpoints) {
  const auto cfg = load_with_overrides(config_path, seed);
  const auto trace = skylink::run_scenario(cfg);
  skylink::MetricsReport report;
  try {
    report = skylink::compute_metrics(trace, checkpoints);
  } catch (const std::invalid_argument& e) {
    throw skylink::ConfigError(e.what());
  }
  write_file(output_path, [&](std::ostream& out) {
    skylink::write_metrics_csv(out, report);
  });
  return kExitOk;
}

int run_replay(const std::string& log_path, const std::string& config_path,
               const std::string& output_path) {
  const auto cfg = skylink::load_scenario(config_path);
  std::ifstream in(log_path, std::ios::binary);
  if (!in) {
    throw skylink::ConfigError("cannot read measurement log: " + log_path);
  }
  const auto rows = skylink::read_measurement_log(in);
  const auto estimates = skylink::replay_measurement_log(
      rows, cfg.fov, cfg.filter, cfg.min_confidence);
  write_file(output_path, [&](std::ostream& out) {
    skylink::write_replay_csv(out, estimates);
  });
  skylink::log_info("replayed " + std::to_string(rows.size()) + " rows");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "skylink: camera-bearing + datalink-range surface-vehicle geolocation "
      "simulator and filter benchmark"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_path;
  std::string log_path;
  std::optional<std::uint64_t> seed;
  std::vector<double> checkpoints{10.0, 50.0, 100.0};

  auto* simulate = app.add_subcommand(
      "simulate", "Run a scenario and write the trace CSV");
  simulate->add_option("--config", config_path, "Scenario YAML")->required();
  simulate->add_option("--output", output_path, "Trace CSV path")->required();
  simulate->add_option("--seed", seed, "Override the scenario seed");
  simulate->add_option("--log", log_path,
                       "Also write the measurement log CSV here");

  auto* compare = app.add_subcommand(
      "compare", "Run a scenario and write per-strategy error metrics");
  compare->add_option("--config", config_path, "Scenario YAML")->required();
  compare->add_option("--output", output_path, "Metrics CSV path")->required();
  compare->add_option("--seed", seed, "Override the scenario seed");
  compare->add_option("--checkpoints", checkpoints,
                      "Checkpoint times in seconds")
      ->delimiter(',');

  auto* replay = app.add_subcommand(
      "replay", "Run the filter over a recorded measurement log");
  replay->add_option("--log", log_path, "Measurement log CSV")->required();
  replay->add_option("--config", config_path,
                     "Scenario YAML providing camera fov + filter noise")
      ->required();
  replay->add_option("--output", output_path, "Estimate CSV path")->required();

  auto* validate =
      app.add_subcommand("validate", "Parse and validate a scenario config");
  validate->add_option("--config", config_path, "Scenario YAML")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (simulate->parsed()) {
      return run_simulate(config_path, output_path, seed, log_path);
    }
    if (compare->parsed()) {
      return run_compare(config_path, output_path, seed, checkpoints);
    }
    if (replay->parsed()) {
      return run_replay(log_path, config_path, output_path);
    }
    if (validate->parsed()) {
      skylink::load_scenario(config_path);
      std::cout << "ok: " << config_path << "\n";
      return kExitOk;
    }
  } catch (const IoError& e) {
    std::cerr << "skylink: " << e.what() << "\n";
    return kExitIoError;
  } catch (const std::exception& e) {
    std::cerr << "skylink: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}
