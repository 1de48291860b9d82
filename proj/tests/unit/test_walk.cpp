// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/errors.hpp"
#include "core/estimators.hpp"
#include "core/walk.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

namespace lamprate {
namespace {

BackendPtr f2() { return make_free_group({Rational(1), Rational(1)}); }
BackendPtr z1() { return make_lattice(1, {}, {{"1", Rational(1), {}}}); }

TEST(Sampler, FrequenciesMatchRationalWeights) {
  const AtomSampler s({Rational(1, 2), Rational(1, 3), Rational(1, 6)});
  CounterRng rng(41, 0);
  std::array<std::size_t, 3> counts{};
  constexpr std::size_t kDraws = 60000;
  for (std::size_t i = 0; i < kDraws; ++i)
    ++counts.at(s(rng));
  const std::array<double, 3> expect{0.5, 1.0 / 3, 1.0 / 6};
  for (std::size_t k = 0; k < 3; ++k) {
    const double sd = std::sqrt(expect[k] * (1 - expect[k]) / kDraws);
    EXPECT_NEAR(static_cast<double>(counts[k]) / kDraws, expect[k], 5 * sd);
  }
}

TEST(Sampler, RejectsBadWeights) {
  EXPECT_THROW(AtomSampler({Rational(1, 2), Rational(1, 3)}), ConfigError);
  EXPECT_THROW(AtomSampler({Rational(3, 2), Rational(-1, 2)}), ConfigError);
  EXPECT_THROW(AtomSampler(std::vector<Rational>{}), ConfigError);
}

TEST(Rng, StreamsAreReproducibleAndDistinct) {
  CounterRng a(7, 3), b(7, 3), c(7, 4);
  for (int i = 0; i < 10; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    EXPECT_NE(x, c.next());
  }
  EXPECT_EQ(a.counter(), 10u);
}

TEST(Measure, WalkSwitchAtoms) {
  const auto mu0 = StepDistribution::simple(f2());
  const StepMeasure m = make_walk_switch(mu0);
  EXPECT_EQ(m.atoms().size(), 8u);
  Rational total(0);
  for (const auto &a : m.atoms()) {
    total += a.probability;
    EXPECT_EQ(a.probability, Rational(1, 8));
    if (!a.increment.lamps.empty())
      EXPECT_TRUE(a.increment.lamps.lit(a.increment.position));
  }
  EXPECT_EQ(total, Rational(1));
  EXPECT_TRUE(m.warnings().empty());
  EXPECT_EQ(m.radius(), Length(1));

  const StepMeasure m3 = make_walk_switch(mu0, 3);
  EXPECT_EQ(m3.atoms().size(), 12u);
  EXPECT_EQ(m3.modulus(), 3);
}

TEST(Measure, SwitchWalkTogglesBeforeMoving) {
  const auto mu0 = StepDistribution::simple(z1());
  const StepMeasure m = make_switch_walk(mu0, Rational(1, 3));
  for (const auto &a : m.atoms())
    if (!a.increment.lamps.empty())
      EXPECT_TRUE(a.increment.lamps.lit(z1()->identity()));
  EXPECT_EQ(m.radius(), Length(0));
  EXPECT_THROW(make_switch_walk(mu0, Rational(1)), ConfigError);
  const StepDistribution back = m.projection();
  ASSERT_EQ(back.atoms().size(), 2u);
  EXPECT_EQ(back.atoms()[0].probability, Rational(1, 2));
}

TEST(Measure, WarnsWhenNothingLights) {
  auto z = z1();
  const StepMeasure m = make_custom(z, {{WreathElement{Configuration(), z->parse("1")}, Rational(1)}});
  ASSERT_FALSE(m.warnings().empty());
  auto z2 = make_lattice(2, {}, {{"(1,0)", Rational(1), {}}, {"(0,1)", Rational(1), {}}});
  const StepMeasure thin =
      make_custom(z2, {{WreathElement{single_lamp(z2->identity()), z2->parse("(1,0)")}, Rational(1)}});
  EXPECT_EQ(thin.warnings().size(), 1u);
}

TEST(Measure, RejectsModulusMismatch) {
  auto z = z1();
  EXPECT_THROW(make_custom(z, {{WreathElement{Configuration(3), z->parse("1")}, Rational(1)}}, 2), ConfigError);
  EXPECT_THROW(make_walk_switch(StepDistribution::simple(z), 1), Error);
}

TEST(Checkpoints, DefaultScheduleIsGeometric) {
  EXPECT_EQ(default_checkpoints(10), (std::vector<std::uint64_t>{1, 2, 5, 10}));
  EXPECT_EQ(default_checkpoints(0), (std::vector<std::uint64_t>{0}));
}

TEST(Simulate, RecordIsAPureFunctionOfSeedAndTrial) {
  const StepMeasure m = make_walk_switch(StepDistribution::simple(f2()));
  SimulationOptions opt;
  opt.horizon = 300;
  opt.seed = 99;
  opt.trial = 5;
  opt.retain_path = true;
  const TrajectoryRecord a = simulate(m, opt);
  const TrajectoryRecord b = simulate(m, opt);
  EXPECT_TRUE(a == b);
  opt.trial = 6;
  EXPECT_FALSE(simulate(m, opt) == a);
}

TEST(Simulate, CheckpointRowsAreConsistent) {
  auto b = f2();
  const StepMeasure m = make_walk_switch(StepDistribution::simple(b));
  SimulationOptions opt;
  opt.horizon = 200;
  opt.checkpoints = {0, 50, 200};
  opt.retain_path = true;
  const TrajectoryRecord r = simulate(m, opt);
  ASSERT_EQ(r.checkpoints.size(), 3u);
  ASSERT_EQ(r.path.size(), 201u);
  EXPECT_EQ(r.checkpoints[0].distance, Length(0));
  EXPECT_EQ(r.checkpoints[0].tsp, Length(0));
  for (std::size_t i = 0; i < 3; ++i) {
    const auto &row = r.checkpoints[i];
    const auto &z = r.checkpoint_states[i];
    EXPECT_EQ(z.position, r.path[row.n]);
    EXPECT_EQ(row.distance, b->norm(z.position));
    EXPECT_EQ(row.support, z.lamps.support_size());
    ASSERT_TRUE(row.tsp);
    EXPECT_GE(*row.tsp, row.distance);
    EXPECT_EQ(row.mode, TspMode::kExactTree);
  }
  EXPECT_EQ(r.final_state, r.checkpoint_states.back());
  EXPECT_EQ(r.checkpoints.back().range, r.range());
  // first visit times are increasing and index distinct path points
  std::set<GroupElement> firsts;
  for (std::size_t k = 0; k < r.first_visit_times.size(); ++k) {
    if (k)
      EXPECT_LT(r.first_visit_times[k - 1], r.first_visit_times[k]);
    EXPECT_TRUE(firsts.insert(r.path[r.first_visit_times[k]]).second);
  }
  if (r.first_return)
    EXPECT_EQ(r.path[*r.first_return], b->identity());
}

TEST(Simulate, RejectsCheckpointBeyondHorizon) {
  const StepMeasure m = make_walk_switch(StepDistribution::simple(z1()));
  SimulationOptions opt;
  opt.horizon = 10;
  opt.checkpoints = {11};
  EXPECT_THROW(simulate(m, opt), UsageError);
}

TEST(Simulate, ExactStrategyReportsCap) {
  auto z = make_lattice(1, {}, {{"1", Rational(1), {}}, {"2", Rational(3, 2), {}}});
  const StepMeasure m = make_walk_switch(StepDistribution::simple(z));
  SimulationOptions opt;
  opt.horizon = 400;
  opt.tsp = TspStrategy::kExact;
  opt.dp_cap = 2;
  EXPECT_THROW(simulate(m, opt), CapExceededError);
  opt.tsp = TspStrategy::kNone;
  EXPECT_FALSE(simulate(m, opt).checkpoints.back().tsp);
}

TEST(Skeleton, PointsAreSeparated) {
  auto b = f2();
  const StepMeasure m = make_walk_switch(StepDistribution::simple(b));
  SimulationOptions opt;
  opt.horizon = 500;
  opt.retain_path = true;
  const TrajectoryRecord r = simulate(m, opt);
  const Length sep(2);
  const auto sk = hitting_skeleton(*b, r.path, sep);
  ASSERT_FALSE(sk.empty());
  EXPECT_EQ(sk.front().time, 0u);
  for (std::size_t k = 1; k < sk.size(); ++k) {
    EXPECT_LT(sk[k - 1].time, sk[k].time);
    for (std::size_t j = 0; j < k; ++j)
      EXPECT_GT(b->distance(sk[j].point, sk[k].point), sep);
    // every earlier time stays within some earlier ball
    for (std::uint64_t t = sk[k - 1].time + 1; t < sk[k].time; ++t) {
      bool inside = false;
      for (std::size_t j = 0; j < k && !inside; ++j)
        inside = b->distance(sk[j].point, r.path[t]) <= sep;
      EXPECT_TRUE(inside);
    }
  }
  EXPECT_THROW(hitting_skeleton(*b, std::vector<GroupElement>{}, sep), UsageError);
}

TEST(Audits, HoldOnRetainedPaths) {
  for (const auto &b : {f2(), make_free_product_c2({Rational(1), Rational(1), Rational(1)})}) {
    const auto sel = select_sigmas(b);
    ASSERT_TRUE(sel.triple);
    const StepMeasure m = make_walk_switch(StepDistribution::simple(b));
    for (std::uint64_t trial = 0; trial < 5; ++trial) {
      SimulationOptions opt;
      opt.horizon = 400;
      opt.trial = trial;
      opt.retain_path = true;
      const TrajectoryRecord r = simulate(m, opt);
      const AuditResult s = audit_support_inequality(r);
      const AuditResult t = audit_tsp_inequality(*b, r, *sel.triple);
      EXPECT_TRUE(s.passed()) << s.first_violation;
      EXPECT_TRUE(t.passed()) << t.first_violation;
      EXPECT_EQ(t.checked, r.checkpoints.size());
      const DeltaStats d = delta_statistics(*b, r, *sel.triple);
      EXPECT_LE(d.ci.lo, d.mean);
      EXPECT_GE(d.ci.hi, d.mean);
    }
  }
}

TEST(Wilson, MatchesClosedForm) {
  const Interval ci = wilson_interval(30, 100, kZ99);
  EXPECT_NEAR(ci.lo, 0.19746, 1e-4);
  EXPECT_NEAR(ci.hi, 0.42743, 1e-4);
  const Interval none = wilson_interval(0, 50, kZ99);
  EXPECT_EQ(none.lo, 0);
  EXPECT_GT(none.hi, 0);
}

} // namespace
} // namespace lamprate
