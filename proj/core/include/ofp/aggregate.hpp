#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ofp/scenario.hpp"
#include "ofp/simulator.hpp"

namespace ofp::sim {

struct Estimate {
  double mean = 0.0;
  double half_width = 0.0;  // Student-t confidence half-width
};

/// Mean and Student-t half-width of `samples` at `confidence`. Fewer than two
/// samples, or zero variance, give a zero half-width.
Estimate estimate(std::span<const double> samples, double confidence);

struct AggregateMetrics {
  Estimate transmissions;
  Estimate delivery_ratio;
  Estimate retransmit_fraction;
  Estimate broadcast_latency;
  Estimate control_packets;
  double delivery_min = 0.0;
  double delivery_max = 0.0;
  int trials = 0;
  int truncated_trials = 0;
  bool converged = false;
  std::vector<TrialMetrics> per_trial;  // in seed order
};

/// True once both the transmissions and delivery-ratio half-widths meet the
/// policy. Delivery ratios above 0.99 are judged on the absolute half-width.
bool ci_satisfied(const AggregateMetrics& agg, const CiPolicy& policy);

/// Aggregates the first `count` trials of `trials`.
AggregateMetrics aggregate(std::span<const TrialMetrics> trials, const CiPolicy& policy);

/// Runs trials with seeds seed_base, seed_base + 1, ... until ci_satisfied()
/// holds (checked from min_trials on) or max_trials is reached, in which case
/// `converged` is false. `jobs` > 1 runs trials on worker threads; the result
/// does not depend on it.
AggregateMetrics run_until_ci(const ScenarioConfig& config, int jobs = 1);

}  // namespace ofp::sim
