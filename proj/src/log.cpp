#include "aerosym/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>

namespace aerosym {

namespace {

LogLevel parse_level() {
    const char* env = std::getenv("AEROSYM_LOG_LEVEL");
    if (!env) return LogLevel::warn;
    const std::string v(env);
    if (v == "error") return LogLevel::error;
    if (v == "warn") return LogLevel::warn;
    if (v == "info") return LogLevel::info;
    if (v == "debug") return LogLevel::debug;
    return LogLevel::warn;
}

std::mutex& sink_mutex() {
    static std::mutex m;
    return m;
}

void emit(LogLevel level, const char* tag, const std::string& msg) {
    if (static_cast<int>(level) > static_cast<int>(log_level())) return;
    std::lock_guard<std::mutex> lock(sink_mutex());
    std::cerr << "[aerosym][" << tag << "] " << msg << '\n';
}

}  // namespace

LogLevel log_level() {
    static const LogLevel level = parse_level();
    return level;
}

void log_error(const std::string& msg) { emit(LogLevel::error, "error", msg); }
void log_warn(const std::string& msg) { emit(LogLevel::warn, "warn", msg); }
void log_info(const std::string& msg) { emit(LogLevel::info, "info", msg); }
void log_debug(const std::string& msg) { emit(LogLevel::debug, "debug", msg); }

}  // namespace aerosym
