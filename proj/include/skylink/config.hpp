#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "skylink/simworld.hpp"

namespace skylink {

/// Raised for unreadable, malformed or out-of-range scenario documents; the
/// message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& message)
      : std::runtime_error(message) {}
};

/// Loads and validates a scenario document (YAML; angles in degrees, keys as
/// documented in the sample configs). Unknown keys are rejected.
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Same parser applied to an in-memory document; used by tests.
ScenarioConfig parse_scenario(const std::string& yaml_text);

}  // namespace skylink
