// Minimal stderr logger gated by the AEROSYM_LOG_LEVEL environment variable
// (error, warn, info, debug; default warn).
#pragma once

#include <string>

namespace aerosym {

enum class LogLevel { error = 0, warn = 1, info = 2, debug = 3 };

LogLevel log_level();

void log_error(const std::string& msg);
void log_warn(const std::string& msg);
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

}  // namespace aerosym
