#pragma once

#include <cstdio>

namespace exemplar {

// Verbosity from EXEMPLAR_ENGINE_LOG: off (default) | info | debug | trace.
enum class LogLevel { Off = 0, Info = 1, Debug = 2, Trace = 3 };

LogLevel log_level();

}  // namespace exemplar

#define LOG_AT(level, fmt, ...)                                              \
  do {                                                                       \
    if (::exemplar::log_level() >= (level))                                  \
      std::fprintf(stderr, "[exemplar] " fmt "\n" __VA_OPT__(, ) __VA_ARGS__); \
  } while (0)

#define LOG_INFO(...) LOG_AT(::exemplar::LogLevel::Info, __VA_ARGS__)
#define LOG_DEBUG(...) LOG_AT(::exemplar::LogLevel::Debug, __VA_ARGS__)
#define LOG_TRACE(...) LOG_AT(::exemplar::LogLevel::Trace, __VA_ARGS__)
