#pragma once

namespace mipdoor::cli {

/// Subcommands search, solve, oracle and compare. Returns the process exit
/// code: 0 on completion (including budget exhaustion and vacuous instances),
/// 1 on runtime errors, and CLI11's code for usage errors.
int run_cli(int argc, const char* const* argv);

}  // namespace mipdoor::cli
