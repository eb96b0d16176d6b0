#include "nncs/log.hpp"

#include <spdlog/sinks/stdout_sinks.h>

#include <cstdlib>
#include <memory>
#include <string_view>

namespace nncs {

namespace {

spdlog::level::level_enum level_from_env() {
  const char* env = std::getenv("NNCS_REACH_LOG");
  std::string_view level = env ? env : "off";
  if (level == "debug") return spdlog::level::debug;
  if (level == "info") return spdlog::level::info;
  return spdlog::level::off;
}

}  // namespace

spdlog::logger& logger() {
  static std::shared_ptr<spdlog::logger> instance = [] {
    auto l = std::make_shared<spdlog::logger>("nncs", std::make_shared<spdlog::sinks::stderr_sink_st>());
    l->set_pattern("[%l] %v");
    l->set_level(level_from_env());
    return l;
  }();
  return *instance;
}

void init_logging_from_env() { logger().set_level(level_from_env()); }

}  // namespace nncs
