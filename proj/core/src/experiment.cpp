#include "ofp/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "ofp/config_io.hpp"
#include "ofp/errors.hpp"
#include "ofp/simulator.hpp"

#ifndef OFP_VERSION_STRING
#define OFP_VERSION_STRING "0.0.0"
#endif

namespace ofp::harness {

namespace fs = std::filesystem;
using nlohmann::json;

const char* artifact_version() { return OFP_VERSION_STRING; }

namespace {

void write_file(const fs::path& path, const std::string& text) {
  const fs::path tmp = fs::path(path) += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ScenarioError(fmt::format("cannot write '{}'", tmp.string()));
    out << text;
    out.flush();
    if (!out) throw ScenarioError(fmt::format("write to '{}' failed", tmp.string()));
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw ScenarioError(fmt::format("cannot move '{}' into place: {}", path.string(), ec.message()));
}

std::string region_columns(const geometry::Region& region) {
  if (region.is_circle()) {
    return fmt::format("circle,,,{:.3f}", region.as_circle().radius);
  }
  const auto& r = region.as_rectangle();
  return fmt::format("rectangle,{:.3f},{:.3f},", r.width, r.height);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

json manifest_json(const std::string& experiment, const std::vector<std::string>& notes,
                   const std::vector<ScenarioConfig>& configs,
                   const std::vector<sim::AggregateMetrics>& results, bool complete) {
  json rows = json::array();
  for (std::size_t i = 0; i < configs.size(); ++i) {
    json row = {{"name", configs[i].name}, {"config", emit_config(configs[i])}};
    if (i < results.size()) {
      const auto& r = results[i];
      row["trials"] = r.trials;
      row["seeds"] = {configs[i].seed_base, configs[i].seed_base + static_cast<std::uint64_t>(r.trials) - 1};
      row["converged"] = r.converged;
    } else {
      row["trials"] = nullptr;
    }
    rows.push_back(std::move(row));
  }
  return {{"schema", kResultsSchema},
          {"artifact", "ofp"},
          {"version", artifact_version()},
          {"experiment", experiment},
          {"status", complete ? "complete" : "partial"},
          {"completed_rows", results.size()},
          {"notes", notes},
          {"csv", file_stem(experiment) + ".csv"},
          {"rows", rows}};
}

}  // namespace

std::string file_stem(const std::string& name) {
  std::string out;
  for (char ch : name) {
    const bool keep = std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' || ch == '.';
    out += keep ? ch : '_';
  }
  return out.empty() ? std::string("experiment") : out;
}

ScenarioConfig apply_options(ScenarioConfig config, const RunOptions& options) {
  if (options.seed) config.seed_base = *options.seed;
  if (options.max_trials) {
    if (*options.max_trials < 2) throw ArgumentError("max_trials must be at least 2");
    config.ci.max_trials = *options.max_trials;
    config.ci.min_trials = std::min(config.ci.min_trials, config.ci.max_trials);
  }
  return config;
}

std::string format_csv(const std::vector<ScenarioConfig>& configs,
                       const std::vector<sim::AggregateMetrics>& results) {
  double sweep_min = 1.0;
  double sweep_max = 0.0;
  for (const auto& r : results) {
    sweep_min = std::min(sweep_min, r.delivery_ratio.mean);
    sweep_max = std::max(sweep_max, r.delivery_ratio.mean);
  }
  if (results.empty()) sweep_min = 0.0;

  std::string out = fmt::format("# ofp-results schema={} version={}\n", kResultsSchema, artifact_version());
  out +=
      "name,protocol,shape,width,height,radius,range,nodes,density,placement,threshold,gossip_p,"
      "counter_threshold,distance_threshold,hello_interval,error_rate,distortion,mobility,mean_speed,"
      "seed_base,trials,converged,truncated_trials,"
      "transmissions_mean,transmissions_hw,rebroadcasts_mean,delivery_mean,delivery_hw,delivery_min,"
      "delivery_max,retransmit_fraction_mean,retransmit_fraction_hw,latency_mean,latency_hw,"
      "control_packets_mean,control_packets_hw,sweep_delivery_min,sweep_delivery_max\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& c = configs.at(i);
    const auto& r = results[i];
    const auto nodes = r.per_trial.empty() ? c.resolved_node_count() : r.per_trial.front().node_count;
    const bool ideal = c.placement == Placement::IdealLattice;
    std::string row = fmt::format("{},{},{},{:.3f},{},", csv_field(c.name), to_string(c.protocol.kind),
                                  region_columns(c.region), c.range, nodes);
    row += fmt::format("{:.2f},{},", ideal || c.node_count > 0 ? 0.0 : c.density,
                       ideal ? "ideal_lattice" : "uniform");
    row += fmt::format("{:.4f},{:.4f},{},{:.4f},{:.3f},", c.protocol.threshold_fraction,
                       c.protocol.gossip_probability, c.protocol.counter_threshold,
                       c.protocol.distance_threshold_fraction, c.protocol.hello_interval);
    row += fmt::format("{:.4f},{:.4f},{},{:.3f},", c.error_rate, c.distortion,
                       c.mobility == sim::MobilityKind::RandomWalk ? "random_walk" : "static", c.mean_speed);
    row += fmt::format("{},{},{},{}", c.seed_base, r.trials, r.converged ? 1 : 0, r.truncated_trials);
    for (double v : {r.transmissions.mean, r.transmissions.half_width, std::max(r.transmissions.mean - 1.0, 0.0),
                     r.delivery_ratio.mean, r.delivery_ratio.half_width, r.delivery_min, r.delivery_max,
                     r.retransmit_fraction.mean, r.retransmit_fraction.half_width, r.broadcast_latency.mean,
                     r.broadcast_latency.half_width, r.control_packets.mean, r.control_packets.half_width,
                     sweep_min, sweep_max}) {
      row += fmt::format(",{:.6f}", v);
    }
    out += row + "\n";
  }
  return out;
}

ExperimentResult run_experiment(const std::string& experiment, const std::vector<ScenarioConfig>& configs,
                                const fs::path& out_dir, const RunOptions& options,
                                const std::vector<std::string>& notes) {
  ExperimentResult res;
  for (const auto& c : configs) {
    res.configs.push_back(apply_options(c, options));
    res.configs.back().validate();
  }

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw ScenarioError(fmt::format("cannot create '{}': {}", out_dir.string(), ec.message()));
  const std::string stem = file_stem(experiment);
  res.csv_path = out_dir / (stem + ".csv");
  res.manifest_path = out_dir / (stem + ".manifest.json");

  const fs::path log_dir = out_dir / (stem + "_logs");
  if (options.event_logs) {
    fs::create_directories(log_dir, ec);
    if (ec) throw ScenarioError(fmt::format("cannot create '{}': {}", log_dir.string(), ec.message()));
  }

  write_file(res.manifest_path, manifest_json(experiment, notes, res.configs, res.results, false).dump(2) + "\n");
  for (std::size_t i = 0; i < res.configs.size(); ++i) {
    const auto& c = res.configs[i];
    res.results.push_back(sim::run_until_ci(c, options.jobs));
    if (options.event_logs) {
      std::ostringstream log;
      sim::run_trial(c, c.seed_base, &log);
      write_file(log_dir / (file_stem(c.name) + ".jsonl"), log.str());
    }
    if (options.progress) {
      const auto& r = res.results.back();
      *options.progress << fmt::format("[{}/{}] {}: tx {:.2f} +/- {:.2f}, delivery {:.4f}, {} trials{}\n", i + 1,
                                       res.configs.size(), c.name, r.transmissions.mean,
                                       r.transmissions.half_width, r.delivery_ratio.mean, r.trials,
                                       r.converged ? "" : " (not converged)");
      options.progress->flush();
    }
    write_file(res.manifest_path,
               manifest_json(experiment, notes, res.configs, res.results, false).dump(2) + "\n");
  }
  write_file(res.csv_path, format_csv(res.configs, res.results));
  write_file(res.manifest_path, manifest_json(experiment, notes, res.configs, res.results, true).dump(2) + "\n");

  res.all_converged = std::all_of(res.results.begin(), res.results.end(),
                                  [](const sim::AggregateMetrics& r) { return r.converged; });
  return res;
}

Manifest load_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError(fmt::format("cannot read manifest '{}'", path.string()));
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ScenarioError(fmt::format("'{}' is not valid JSON: {}", path.string(), e.what()));
  }
  if (!j.is_object() || !j.contains("schema") || !j.contains("rows")) {
    throw ScenarioError(fmt::format("'{}' is not a results manifest", path.string()));
  }
  if (j["schema"] != kResultsSchema) {
    throw ScenarioError(fmt::format("manifest schema {} is not supported", j["schema"].dump()));
  }
  Manifest m;
  m.experiment = j.value("experiment", std::string("experiment"));
  if (j.contains("notes")) m.notes = j["notes"].get<std::vector<std::string>>();
  for (const auto& row : j["rows"]) m.configs.push_back(parse_config(row.at("config").get<std::string>()));
  return m;
}

}  // namespace ofp::harness
