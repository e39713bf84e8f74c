#include "ofp/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include <boost/math/distributions/students_t.hpp>

namespace ofp::sim {

Estimate estimate(std::span<const double> samples, double confidence) {
  Estimate e;
  const auto n = samples.size();
  if (n == 0) return e;
  double sum = 0.0;
  for (double x : samples) sum += x;
  e.mean = sum / static_cast<double>(n);
  if (n < 2) return e;
  double ss = 0.0;
  for (double x : samples) ss += (x - e.mean) * (x - e.mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  if (sd == 0.0) return e;
  const boost::math::students_t dist(static_cast<double>(n - 1));
  const double t = boost::math::quantile(dist, 0.5 + confidence / 2.0);
  e.half_width = t * sd / std::sqrt(static_cast<double>(n));
  return e;
}

AggregateMetrics aggregate(std::span<const TrialMetrics> trials, const CiPolicy& policy) {
  AggregateMetrics agg;
  agg.trials = static_cast<int>(trials.size());
  agg.per_trial.assign(trials.begin(), trials.end());
  std::vector<double> tx, dr, rf, lat, ctl;
  for (const auto& t : trials) {
    tx.push_back(static_cast<double>(t.transmissions));
    dr.push_back(t.delivery_ratio);
    rf.push_back(t.retransmit_fraction);
    lat.push_back(t.broadcast_latency);
    ctl.push_back(static_cast<double>(t.control_packets));
    agg.truncated_trials += t.truncated ? 1 : 0;
  }
  agg.transmissions = estimate(tx, policy.confidence);
  agg.delivery_ratio = estimate(dr, policy.confidence);
  agg.retransmit_fraction = estimate(rf, policy.confidence);
  agg.broadcast_latency = estimate(lat, policy.confidence);
  agg.control_packets = estimate(ctl, policy.confidence);
  if (!dr.empty()) {
    agg.delivery_min = *std::min_element(dr.begin(), dr.end());
    agg.delivery_max = *std::max_element(dr.begin(), dr.end());
  }
  agg.converged = ci_satisfied(agg, policy);
  return agg;
}

bool ci_satisfied(const AggregateMetrics& agg, const CiPolicy& policy) {
  auto relative_ok = [&](const Estimate& e) {
    return e.half_width <= policy.target_halfwidth * std::abs(e.mean);
  };
  const bool tx_ok = relative_ok(agg.transmissions);
  const bool dr_ok = agg.delivery_ratio.mean > 0.99
                         ? agg.delivery_ratio.half_width <= policy.target_halfwidth
                         : relative_ok(agg.delivery_ratio);
  return tx_ok && dr_ok;
}

AggregateMetrics run_until_ci(const ScenarioConfig& config, int jobs) {
  config.validate();
  const CiPolicy& policy = config.ci;
  jobs = std::max(jobs, 1);
  std::vector<TrialMetrics> done;
  done.reserve(static_cast<std::size_t>(policy.min_trials));

  auto seed_for = [&](std::size_t i) { return config.seed_base + i; };

  while (static_cast<int>(done.size()) < policy.max_trials) {
    // First batch reaches min_trials; later batches add `jobs` trials. The
    // stopping rule is then applied trial by trial in seed order.
    const std::size_t start = done.size();
    std::size_t batch = start < static_cast<std::size_t>(policy.min_trials)
                            ? static_cast<std::size_t>(policy.min_trials) - start
                            : static_cast<std::size_t>(jobs);
    batch = std::min(batch, static_cast<std::size_t>(policy.max_trials) - start);

    std::vector<TrialMetrics> results(batch);
    if (jobs == 1) {
      for (std::size_t i = 0; i < batch; ++i) results[i] = run_trial(config, seed_for(start + i));
    } else {
      for (std::size_t lo = 0; lo < batch; lo += static_cast<std::size_t>(jobs)) {
        std::vector<std::future<TrialMetrics>> futures;
        const std::size_t hi = std::min(batch, lo + static_cast<std::size_t>(jobs));
        for (std::size_t i = lo; i < hi; ++i) {
          futures.push_back(std::async(std::launch::async,
                                       [&config, s = seed_for(start + i)] { return run_trial(config, s); }));
        }
        for (std::size_t i = lo; i < hi; ++i) results[i] = futures[i - lo].get();
      }
    }

    for (const auto& r : results) {
      done.push_back(r);
      if (static_cast<int>(done.size()) >= policy.min_trials) {
        AggregateMetrics agg = aggregate(done, policy);
        if (agg.converged) return agg;
      }
    }
  }
  return aggregate(done, policy);
}

}  // namespace ofp::sim
