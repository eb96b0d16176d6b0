#pragma once

#include <spdlog/logger.h>

namespace nncs {

/// Library logger writing to stderr at the level named by NNCS_REACH_LOG
/// (off, info or debug; default off).
spdlog::logger& logger();

/// Re-reads NNCS_REACH_LOG.
void init_logging_from_env();

}  // namespace nncs
