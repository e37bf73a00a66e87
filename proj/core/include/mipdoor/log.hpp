#pragma once

#include <string_view>

namespace mipdoor {

/// Sets the library log level: trace, debug, info, warn, error, off.
/// Unknown names fall back to warn.
void set_log_level(std::string_view level);

/// Applies BACKDOOR_LOG_LEVEL when it is set.
void configure_logging_from_env();

}  // namespace mipdoor
