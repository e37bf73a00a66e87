#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "mipdoor/instance.hpp"

namespace mipdoor {

enum class MpsFormat { kAuto, kFree, kFixed };

/// Reads an MPS model (sections NAME, OBJSENSE, ROWS, COLUMNS with
/// INTORG/INTEND markers, RHS, RANGES, BOUNDS, ENDATA).
///
/// kAuto parses whitespace-separated fields first and falls back to the
/// fixed column layout when that fails. Integer columns without explicit
/// bounds default to [0, 1]. Ranged rows become two inequalities; free rows
/// after the objective are dropped with a warning.
///
/// Throws MalformedMps, NotMixedBinary, or EmptyInstance.
MipInstance parse_mps(std::string_view text, MpsFormat format = MpsFormat::kAuto);
MipInstance read_mps_file(const std::filesystem::path& path,
                          MpsFormat format = MpsFormat::kAuto);

/// Free-format writer used for debugging and round-trip tests.
std::string write_mps(const MipInstance& inst);

}  // namespace mipdoor
