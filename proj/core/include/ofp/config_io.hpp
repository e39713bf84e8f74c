#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ofp/scenario.hpp"

// Scenario files are flat `section.key = value` text, one entry per line,
// `#` starting a comment. Every key is optional; omitted keys keep their
// defaults. emit_config writes every key, and parse_config(emit_config(c))
// reproduces `c` exactly (doubles are written in shortest round-trip form).
namespace ofp::harness {

/// Throws ArgumentError for names that the format cannot carry.
std::string emit_config(const ScenarioConfig& config);

/// Throws ScenarioError naming the offending line for unknown keys or
/// malformed values, then validates the result.
ScenarioConfig parse_config(std::string_view text);

ScenarioConfig load_config(const std::filesystem::path& path);

}  // namespace ofp::harness
