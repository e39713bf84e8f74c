#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "ofp/aggregate.hpp"
#include "ofp/errors.hpp"

using namespace ofp;
using namespace ofp::sim;

namespace {

// Two-sided 95% Student-t quantiles, from standard tables.
double t975(int df) {
  switch (df) {
    case 9: return 2.262157;
    case 39: return 2.022691;
    case 159: return 1.974996;
    default: throw std::logic_error("no table entry");
  }
}

double sample_sd(const std::vector<double>& x) {
  const double m = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return std::sqrt(ss / (x.size() - 1));
}

ScenarioConfig gossip_square() {
  ScenarioConfig c;
  c.region = geometry::Region::rectangle(1200, 1200);
  c.density = 6;
  c.protocol.kind = ProtocolKind::Gossip;
  c.protocol.gossip_probability = 0.65;
  return c;
}

}  // namespace

TEST(Estimate, MatchesTableQuantile) {
  const std::vector<double> x{3, 7, 1, 9, 4, 4, 6, 8, 2, 5};
  const auto e = estimate(x, 0.95);
  EXPECT_DOUBLE_EQ(e.mean, 4.9);
  EXPECT_NEAR(e.half_width, t975(9) * sample_sd(x) / std::sqrt(10.0), 1e-5);
}

TEST(Estimate, DegenerateInputs) {
  EXPECT_DOUBLE_EQ(estimate(std::vector<double>{}, 0.95).half_width, 0.0);
  EXPECT_DOUBLE_EQ(estimate(std::vector<double>{5.0}, 0.95).half_width, 0.0);
  const auto flat = estimate(std::vector<double>(12, 2.5), 0.95);
  EXPECT_DOUBLE_EQ(flat.mean, 2.5);
  EXPECT_DOUBLE_EQ(flat.half_width, 0.0);
}

TEST(CiSatisfied, RelativeAndAbsoluteDelivery) {
  CiPolicy p;
  AggregateMetrics a;
  a.transmissions = {100.0, 4.9};
  a.delivery_ratio = {0.8, 0.039};
  EXPECT_TRUE(ci_satisfied(a, p));
  a.delivery_ratio = {0.8, 0.041};
  EXPECT_FALSE(ci_satisfied(a, p));
  // Above 0.99 the delivery half-width is judged in absolute terms.
  a.delivery_ratio = {0.995, 0.049};
  EXPECT_TRUE(ci_satisfied(a, p));
  a.transmissions = {100.0, 5.1};
  EXPECT_FALSE(ci_satisfied(a, p));
}

TEST(RunUntilCi, DeterministicScenarioStopsAtMinTrials) {
  ScenarioConfig c;
  c.region = geometry::Region::circle(4 * 300.0);
  c.placement = Placement::IdealLattice;
  const auto agg = run_until_ci(c);
  EXPECT_TRUE(agg.converged);
  EXPECT_EQ(agg.trials, c.ci.min_trials);
  EXPECT_DOUBLE_EQ(agg.transmissions.half_width, 0.0);
  EXPECT_DOUBLE_EQ(agg.delivery_ratio.half_width, 0.0);
  EXPECT_DOUBLE_EQ(agg.delivery_min, 1.0);
}

TEST(RunUntilCi, NotConvergedFlag) {
  auto c = gossip_square();
  c.protocol.gossip_probability = 0.3;
  c.ci.min_trials = 2;
  c.ci.max_trials = 3;
  c.ci.target_halfwidth = 1e-4;
  const auto agg = run_until_ci(c);
  EXPECT_FALSE(agg.converged);
  EXPECT_EQ(agg.trials, 3);
  EXPECT_EQ(agg.per_trial.size(), 3u);
}

TEST(RunUntilCi, ResultIndependentOfJobs) {
  auto c = gossip_square();
  c.ci.max_trials = 60;
  const auto one = run_until_ci(c, 1);
  const auto four = run_until_ci(c, 4);
  EXPECT_EQ(one.trials, four.trials);
  EXPECT_EQ(one.per_trial, four.per_trial);
  EXPECT_DOUBLE_EQ(one.transmissions.mean, four.transmissions.mean);
}

TEST(RunUntilCi, SeedsRunInOrder) {
  auto c = gossip_square();
  c.seed_base = 100;
  c.ci.min_trials = 4;
  c.ci.max_trials = 4;
  const auto agg = run_until_ci(c);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(agg.per_trial[i], run_trial(c, 100 + i));
}

// Half-widths recomputed from the per-trial values shrink as 1/sqrt(n).
TEST(Aggregate, HalfWidthShrinksWithTrials) {
  auto c = gossip_square();
  c.ci.min_trials = 160;
  c.ci.max_trials = 160;
  const auto all = run_until_ci(c);
  ASSERT_EQ(all.per_trial.size(), 160u);

  std::vector<double> hw;
  for (int n : {10, 40, 160}) {
    std::vector<double> tx;
    for (int i = 0; i < n; ++i) tx.push_back(static_cast<double>(all.per_trial[i].transmissions));
    const double mine = t975(n - 1) * sample_sd(tx) / std::sqrt(static_cast<double>(n));
    const auto agg = aggregate(std::span(all.per_trial).first(n), c.ci);
    EXPECT_NEAR(agg.transmissions.half_width, mine, 1e-4 * mine);
    hw.push_back(mine);
  }
  // Quadrupling n halves the half-width, up to sampling noise in the sd.
  EXPECT_NEAR(hw[2] / hw[1], 0.5, 0.15);
  EXPECT_NEAR(hw[2] / hw[0], 0.25, 0.12);
}

TEST(RunUntilCi, InvalidPolicyRejected) {
  auto c = gossip_square();
  c.ci.min_trials = 1;
  EXPECT_THROW(run_until_ci(c), ArgumentError);
}
