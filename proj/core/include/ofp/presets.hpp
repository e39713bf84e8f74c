#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ofp/scenario.hpp"

namespace ofp::harness {

/// A named sweep: the expanded configs plus the parameters it holds fixed.
struct ExperimentPreset {
  std::string name;
  std::string description;
  std::vector<std::string> sweep;              // swept variables, outermost first
  std::map<std::string, std::string> fixed;    // e.g. {"region", "1800x1800"}, {"nodes", "144"}
  std::vector<std::string> notes;              // carried into the manifest
  std::vector<ScenarioConfig> configs;
};

std::vector<std::string> preset_names();

/// Expands a preset. Throws ScenarioError listing the known names when `name`
/// is not one of them.
ExperimentPreset preset(std::string_view name);

}  // namespace ofp::harness
