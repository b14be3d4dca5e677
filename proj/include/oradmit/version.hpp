#pragma once

namespace oradmit {

inline constexpr const char* version_string = "0.1.0";

// Bumped whenever a binary file layout (tables, checkpoints) changes shape.
inline constexpr unsigned binary_format_version = 1;

}  // namespace oradmit
