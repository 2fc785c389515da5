#include "exemplar/log.hpp"

#include <cstdlib>
#include <cstring>

namespace exemplar {

LogLevel log_level() {
  static LogLevel level = [] {
    const char* env = std::getenv("EXEMPLAR_ENGINE_LOG");
    if (!env) return LogLevel::Off;
    if (std::strcmp(env, "trace") == 0) return LogLevel::Trace;
    if (std::strcmp(env, "debug") == 0) return LogLevel::Debug;
    if (std::strcmp(env, "info") == 0) return LogLevel::Info;
    return LogLevel::Off;
  }();
  return level;
}

}  // namespace exemplar
