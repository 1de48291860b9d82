// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/config.hpp"
#include "core/errors.hpp"
#include "core/estimators.hpp"
#include "core/presets.hpp"
#include "unit/oracles.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>

namespace lamprate {
namespace {

BackendPtr f2() { return make_free_group({Rational(1), Rational(1)}); }
BackendPtr z2z2() { return make_free_product_c2({Rational(1), Rational(1)}); }

StepDistribution dihedral_mu0(const BackendPtr &b, std::vector<std::pair<std::string, Rational>> atoms) {
  std::vector<StepDistribution::Atom> out;
  for (auto &[text, p] : atoms)
    out.push_back({b->parse(text), p});
  return StepDistribution(b, std::move(out));
}

TEST(Stats, MeanAndSlope) {
  const std::vector<double> v{1, 2, 3};
  const MeanEstimate m = mean_estimate(v);
  EXPECT_DOUBLE_EQ(m.mean, 2);
  EXPECT_DOUBLE_EQ(m.sd, 1);
  EXPECT_NEAR(m.half_width(), kZ99 / std::sqrt(3.0), 1e-12);
  const std::vector<double> x{1, 2, 4, 8}, y{3, 5, 9, 17};
  EXPECT_NEAR(ols_slope(x, y), 2, 1e-12);
  const ProportionEstimate p = proportion_estimate(5, 20);
  EXPECT_DOUBLE_EQ(p.p, 0.25);
  EXPECT_LT(p.ci.lo, 0.25);
  EXPECT_GT(p.ci.hi, 0.25);
}

TEST(Parallel, EveryIndexRunsOnceAndLowestFailureWins) {
  std::vector<std::atomic<int>> hits(37);
  run_parallel(hits.size(), 3, [&](std::size_t i) { ++hits[i]; });
  for (const auto &h : hits)
    EXPECT_EQ(h.load(), 1);
  try {
    run_parallel(20, 4, [](std::size_t i) {
      if (i == 7 || i == 13)
        throw UsageError("index " + std::to_string(i));
    });
    FAIL() << "no exception";
  } catch (const UsageError &e) {
    EXPECT_STREQ(e.what(), "index 7");
  }
}

TEST(Rates, JobsDoNotChangeResults) {
  const StepMeasure m = make_walk_switch(StepDistribution::simple(f2()));
  RateOptions opt;
  opt.horizon = 200;
  opt.trials = 12;
  opt.seed = 5;
  std::vector<TrajectoryRecord> a, b;
  const RateEstimates ra = estimate_rates(m, opt, &a);
  opt.jobs = 3;
  const RateEstimates rb = estimate_rates(m, opt, &b);
  EXPECT_TRUE(a == b);
  EXPECT_EQ(ra.l0.mean, rb.l0.mean);
  EXPECT_EQ(ra.lts->mean, rb.lts->mean);
  EXPECT_TRUE(ra.exact_grade);
  EXPECT_EQ(ra.final_heuristic_fraction, 0);
}

TEST(Rates, CompositeRateIsExactlyTheSum) {
  const StepMeasure m = make_walk_switch(StepDistribution::simple(f2()));
  RateOptions opt;
  opt.horizon = 300;
  opt.trials = 10;
  opt.lamp_cost = Rational(3, 2);
  const RateEstimates r = estimate_rates(m, opt);
  ASSERT_TRUE(r.l && r.lts && r.acceleration);
  EXPECT_NEAR(r.l->mean, r.lts->mean + 1.5 * r.lsupp.mean, 1e-12);
  EXPECT_NEAR(r.acceleration->mean, r.lts->mean - r.l0.mean, 1e-12);
  EXPECT_GT(r.slope_l0, 0);
}

TEST(Rates, RejectsTinyRuns) {
  const StepMeasure m = make_walk_switch(StepDistribution::simple(f2()));
  RateOptions opt;
  opt.horizon = 50;
  EXPECT_THROW(estimate_rates(m, opt), UsageError);
  opt.horizon = 100;
  opt.trials = 1;
  EXPECT_THROW(estimate_rates(m, opt), UsageError);
}

TEST(Rates, TrialContextIsAttachedToErrors) {
  auto z = make_lattice(1, {}, {{"1", Rational(1), {}}, {"2", Rational(3, 2), {}}});
  const StepMeasure m = make_walk_switch(StepDistribution::simple(z));
  RateOptions opt;
  opt.horizon = 400;
  opt.trials = 2;
  opt.tsp = TspStrategy::kExact;
  opt.dp_cap = 2;
  try {
    estimate_rates(m, opt);
    FAIL() << "no exception";
  } catch (const CapExceededError &e) {
    EXPECT_NE(std::string(e.what()).find("trial 0"), std::string::npos) << e.what();
  }
}

TEST(ReturnProbability, FreeGroupMatchesTreeOracle) {
  const double oracle = testing::tree_return_probability(4);
  EXPECT_NEAR(oracle, 1.0 / 3, 1e-9);
  const ReturnEstimate r = return_probability(StepDistribution::simple(f2()), 300, 6000, 17);
  EXPECT_NEAR(r.probability.p, oracle, 0.025);
  EXPECT_FALSE(r.caveat.empty());
}

TEST(Identity, NeedsWalkSwitch) {
  auto b = f2();
  const StepMeasure sw = make_switch_walk(StepDistribution::simple(b), Rational(1, 2));
  RateEstimates r;
  r.horizon = 100;
  EXPECT_THROW(walk_switch_identity_check(sw, r, 100, 1), UsageError);
  const StepMeasure ws3 = make_walk_switch(StepDistribution::simple(b), 3);
  EXPECT_THROW(walk_switch_identity_check(ws3, r, 100, 1), UsageError);
}

TEST(RangeLaw, ComplementAndDiscrepancy) {
  const StepMeasure m = make_walk_switch(StepDistribution::simple(f2()));
  std::vector<TrajectoryRecord> recs;
  RateOptions opt;
  opt.horizon = 400;
  opt.trials = 40;
  estimate_rates(m, opt, &recs);
  const RangeLaw law = range_law(recs, 1.0 / 3);
  ASSERT_TRUE(law.complement && law.discrepancy);
  EXPECT_NEAR(*law.complement, 2.0 / 3, 1e-12);
  EXPECT_NEAR(law.rate.mean, 2.0 / 3, 0.05);
  EXPECT_THROW(range_law(std::vector<TrajectoryRecord>{}), UsageError);
}

TEST(Greenian, DiagonalIsZeroAndFarPointsAreCensored) {
  auto b = f2();
  const auto mu0 = StepDistribution::simple(b);
  const GroupElement x = b->parse("ab");
  const GreenEstimate same = greenian_distance(mu0, x, x, 10, 5, 1);
  EXPECT_EQ(same.value, 0);
  EXPECT_FALSE(same.censored);
  const GreenEstimate far = greenian_distance(mu0, b->identity(), b->parse("aaaaaaaaaaaa"), 5, 50, 1);
  EXPECT_TRUE(far.censored);
  EXPECT_NEAR(far.value, std::log(50.0), 1e-12);
  const GreenEstimate near = greenian_distance(mu0, b->identity(), b->parse("a"), 200, 4000, 2);
  // P(ever hit a neighbour) = 1/3 on the 4-regular tree by first-step analysis: (1/4) + (3/4) q^2 with q = 1/3.
  EXPECT_NEAR(near.hit.p, 1.0 / 3, 0.03);
}

TEST(Drift, IrreducibilityTest) {
  auto d = z2z2();
  EXPECT_TRUE(dihedral_support_irreducible(dihedral_mu0(d, {{"a", Rational(1, 2)}, {"b", Rational(1, 2)}})));
  EXPECT_TRUE(dihedral_support_irreducible(dihedral_mu0(d, {{"a", Rational(1, 2)}, {"aba", Rational(1, 2)}})));
  EXPECT_FALSE(dihedral_support_irreducible(dihedral_mu0(d, {{"a", Rational(1, 2)}, {"abab", Rational(1, 2)}})));
  EXPECT_FALSE(dihedral_support_irreducible(dihedral_mu0(d, {{"ab", Rational(1, 2)}, {"ba", Rational(1, 2)}})));
}

TEST(Drift, InducedWalkIsCentred) {
  auto d = z2z2();
  const auto mu0 = dihedral_mu0(d, {{"a", Rational(1, 2)}, {"b", Rational(1, 6)}, {"ab", Rational(1, 3)}});
  const DriftEstimate est = induced_walk_drift(mu0, 40, 2000, 3);
  EXPECT_GT(est.visits, 10000u);
  EXPECT_FALSE(est.censored);
  EXPECT_LT(std::abs(est.drift.mean), 0.05);
  EXPECT_THROW(induced_walk_drift(StepDistribution::simple(f2()), 1, 10, 1), UsageError);
  EXPECT_THROW(induced_walk_drift(dihedral_mu0(d, {{"a", Rational(1, 2)}, {"abab", Rational(1, 2)}}), 1, 10, 1),
               UsageError);
}

TEST(Counterexample, MeanStepIsOneAndDistanceRateFollows) {
  const RunConfig cfg = preset_config("z-counterexample-p075");
  const BackendPtr b = build_backend(cfg.backend);
  const StepMeasure m = build_measure(cfg, b);
  Rational mean(0);
  for (const auto &a : m.atoms())
    mean += a.probability * Rational(a.increment.position.data()[0]);
  EXPECT_EQ(mean, Rational(1));

  RateOptions opt;
  opt.horizon = 2000;
  opt.trials = 20;
  opt.seed = 8;
  const RateEstimates r = estimate_rates(m, opt);
  EXPECT_NEAR(r.l0.mean, 1.0, 0.05);
  ASSERT_TRUE(r.lts);
  EXPECT_NEAR(r.lts->mean, r.l0.mean, 0.02);
  EXPECT_TRUE(r.exact_grade);
}

} // namespace
} // namespace lamprate
