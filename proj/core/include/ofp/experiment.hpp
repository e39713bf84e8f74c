#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ofp/aggregate.hpp"
#include "ofp/scenario.hpp"

namespace ofp::harness {

inline constexpr int kResultsSchema = 1;

const char* artifact_version();

struct RunOptions {
  std::optional<std::uint64_t> seed;  // overrides every config's seed_base
  std::optional<int> max_trials;      // overrides ci.max_trials (and caps min_trials)
  int jobs = 1;
  bool event_logs = false;            // one log per config, first seed only
  std::ostream* progress = nullptr;
};

struct ExperimentResult {
  std::vector<ScenarioConfig> configs;  // after option overrides
  std::vector<sim::AggregateMetrics> results;
  std::filesystem::path csv_path;
  std::filesystem::path manifest_path;
  bool all_converged = false;
};

/// A manifest read back from disk.
struct Manifest {
  std::string experiment;
  std::vector<std::string> notes;
  std::vector<ScenarioConfig> configs;
};

ScenarioConfig apply_options(ScenarioConfig config, const RunOptions& options);

/// CSV text for finished rows, including the schema comment and header.
std::string format_csv(const std::vector<ScenarioConfig>& configs,
                       const std::vector<sim::AggregateMetrics>& results);

/// Runs every config to its CI target and writes `<experiment>.csv` and
/// `<experiment>.manifest.json` into `out_dir`. The manifest is rewritten
/// with status "partial" after each config, so an I/O failure part way
/// leaves the finished rows recorded; the error is then rethrown.
ExperimentResult run_experiment(const std::string& experiment, const std::vector<ScenarioConfig>& configs,
                                const std::filesystem::path& out_dir, const RunOptions& options,
                                const std::vector<std::string>& notes = {});

/// Throws ScenarioError if the file is not a results manifest.
Manifest load_manifest(const std::filesystem::path& path);

/// File-name-safe form of a config or experiment name.
std::string file_stem(const std::string& name);

}  // namespace ofp::harness
