// ofpsim: run OFP and baseline broadcast experiments.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ofp/config_io.hpp"
#include "ofp/errors.hpp"
#include "ofp/experiment.hpp"
#include "ofp/presets.hpp"
#include "ofp/skew.hpp"

namespace fs = std::filesystem;
using namespace ofp;

namespace {

fs::path default_out_dir() {
  if (const char* env = std::getenv("OFP_OUT_DIR"); env && *env) return env;
  return "results";
}

bool is_preset(const std::string& name) {
  for (const auto& p : harness::preset_names()) {
    if (p == name) return true;
  }
  return false;
}

int run(const std::string& target, const fs::path& out, const harness::RunOptions& options) {
  std::string experiment;
  std::vector<ScenarioConfig> configs;
  std::vector<std::string> notes;
  if (is_preset(target)) {
    auto p = harness::preset(target);
    experiment = p.name;
    configs = std::move(p.configs);
    notes = std::move(p.notes);
  } else if (fs::is_regular_file(target)) {
    if (fs::path(target).extension() == ".json") {
      auto m = harness::load_manifest(target);
      experiment = m.experiment;
      configs = std::move(m.configs);
      notes = std::move(m.notes);
    } else {
      configs.push_back(harness::load_config(target));
      experiment = configs.front().name;
    }
  } else {
    // Falls through to the preset lookup so the error lists the alternatives.
    harness::preset(target);
  }

  const auto result = harness::run_experiment(experiment, configs, out, options, notes);
  std::cout << fmt::format("wrote {}\nwrote {}\n", result.csv_path.string(), result.manifest_path.string());
  if (!result.all_converged) {
    std::cerr << "warning: some configurations did not reach the confidence target\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimized flooding protocol simulator"};
  app.require_subcommand(1);

  std::string target;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> max_trials;
  int jobs = 1;
  bool event_logs = false;
  bool quiet = false;

  auto* run_cmd = app.add_subcommand("run", "Run a preset, a scenario file, or a results manifest");
  run_cmd->add_option("target", target, "Preset name, scenario file, or manifest .json")->required();
  run_cmd->add_option("--out", out_dir, "Output directory (default $OFP_OUT_DIR or ./results)");
  run_cmd->add_option("--seed", seed, "Seed base for every configuration");
  run_cmd->add_option("--max-trials", max_trials, "Trial cap per configuration (at least 2)")->check(CLI::Range(2, 1000000));
  run_cmd->add_option("--jobs", jobs, "Worker threads per configuration")->check(CLI::PositiveNumber);
  run_cmd->add_flag("--event-log", event_logs, "Write a line-delimited event log per configuration");
  run_cmd->add_flag("-q,--quiet", quiet, "No per-configuration progress");

  app.add_subcommand("list-presets", "List experiment presets");

  std::string log_path;
  std::string skew_out;
  auto* skew_cmd = app.add_subcommand("render-skew", "Transmitter plot data from an event log");
  skew_cmd->add_option("log", log_path, "Event log (.jsonl)")->required()->check(CLI::ExistingFile);
  skew_cmd->add_option("-o,--output", skew_out, "Output file (default stdout)");

  std::string config_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a scenario file and print it normalized");
  validate_cmd->add_option("config", config_path, "Scenario file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      harness::RunOptions options;
      options.seed = seed;
      options.max_trials = max_trials;
      options.jobs = jobs;
      options.event_logs = event_logs;
      options.progress = quiet ? nullptr : &std::cerr;
      return run(target, out_dir.empty() ? default_out_dir() : fs::path(out_dir), options);
    }
    if (app.got_subcommand("list-presets")) {
      for (const auto& name : harness::preset_names()) {
        const auto p = harness::preset(name);
        std::cout << fmt::format("{:<20} {:>4} configs  {}\n", name, p.configs.size(), p.description);
      }
      return 0;
    }
    if (*skew_cmd) {
      std::ifstream in(log_path);
      if (skew_out.empty()) {
        harness::render_skew(in, std::cout);
      } else {
        std::ofstream out(skew_out);
        if (!out) throw ScenarioError(fmt::format("cannot write '{}'", skew_out));
        harness::render_skew(in, out);
      }
      return 0;
    }
    if (*validate_cmd) {
      const auto config = harness::load_config(config_path);
      std::cout << harness::emit_config(config);
      std::cerr << fmt::format("ok: {} nodes\n", config.resolved_node_count());
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
