#include "skylink/log.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

namespace skylink {

namespace {

LogLevel parse_level() {
  const char* env = std::getenv("SKYLINK_LOG_LEVEL");
  if (env == nullptr) return LogLevel::kWarn;
  const std::string value(env);
  if (value == "error") return LogLevel::kError;
  if (value == "warn") return LogLevel::kWarn;
  if (value == "info") return LogLevel::kInfo;
  if (value == "debug") return LogLevel::kDebug;
  return LogLevel::kWarn;
}

void emit(LogLevel level, const char* tag, std::string_view message) {
  if (static_cast<int>(level) > static_cast<int>(log_level())) return;
  std::cerr << "skylink [" << tag << "] " << message << '\n';
}

}  // namespace

LogLevel log_level() {
  static const LogLevel level = parse_level();
  return level;
}

void log_error(std::string_view message) { emit(LogLevel::kError, "error", message); }
void log_warn(std::string_view message) { emit(LogLevel::kWarn, "warn", message); }
void log_info(std::string_view message) { emit(LogLevel::kInfo, "info", message); }
void log_debug(std::string_view message) { emit(LogLevel::kDebug, "debug", message); }

}  // namespace skylink
