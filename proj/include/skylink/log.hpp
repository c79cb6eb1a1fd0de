#pragma once

#include <string_view>

namespace skylink {

enum class LogLevel { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

/// Active level, read once from SKYLINK_LOG_LEVEL (error|warn|info|debug).
/// Defaults to warn when unset or unrecognized.
LogLevel log_level();

void log_error(std::string_view message);
void log_warn(std::string_view message);
void log_info(std::string_view message);
void log_debug(std::string_view message);

}  // namespace skylink
