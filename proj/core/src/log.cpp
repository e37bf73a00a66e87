#include "mipdoor/log.hpp"

#include <cstdlib>
#include <string>

#include <spdlog/spdlog.h>

namespace mipdoor {

void set_log_level(std::string_view level) {
  auto parsed = spdlog::level::from_str(std::string(level));
  // from_str maps unknown names to "off"; only honour "off" when asked for.
  if (parsed == spdlog::level::off && level != "off") parsed = spdlog::level::warn;
  spdlog::set_level(parsed);
}

void configure_logging_from_env() {
  if (const char* env = std::getenv("BACKDOOR_LOG_LEVEL")) {
    set_log_level(env);
  } else {
    spdlog::set_level(spdlog::level::warn);
  }
}

}  // namespace mipdoor
