#pragma once

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

namespace balancekit {

enum class LogLevel { off = 0, info = 1, debug = 2 };

// Level comes from BALANCEKIT_LOG (off|info|debug); unset means off.
inline LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("BALANCEKIT_LOG");
    if (env == nullptr) return LogLevel::off;
    if (std::strcmp(env, "info") == 0) return LogLevel::info;
    if (std::strcmp(env, "debug") == 0) return LogLevel::debug;
    return LogLevel::off;
  }();
  return level;
}

inline void log_info(const std::string& msg) {
  if (log_level() >= LogLevel::info) std::fprintf(stderr, "[balancekit] %s\n", msg.c_str());
}

inline void log_debug(const std::string& msg) {
  if (log_level() >= LogLevel::debug) std::fprintf(stderr, "[balancekit:debug] %s\n", msg.c_str());
}

}  // namespace balancekit
