// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include "core/case_analysis.hpp"
#include "core/config.hpp"
#include "core/estimators.hpp"
#include "core/experiments.hpp"
#include "core/presets.hpp"
#include "core/tsp.hpp"
#include "core/walk.hpp"
#include "core/wreath.hpp"
#include "unit/oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace lamprate {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string ci(const Interval &i) { return "[" + fmt(i.lo) + ", " + fmt(i.hi) + "]"; }

std::vector<GroupElement> random_support(const GroupBackend &b, CounterRng &rng, std::size_t max_points) {
  std::vector<GroupElement> pts;
  const std::size_t k = rng.below(max_points + 1);
  while (pts.size() < k) {
    GroupElement x = testing::random_element(b, rng, 7);
    if (std::find(pts.begin(), pts.end(), x) == pts.end())
      pts.push_back(std::move(x));
  }
  return pts;
}

Outcome tsp_oracle_equivalence() {
  const auto start = Clock::now();
  CounterRng rng(20260201, 0);
  std::size_t compared = 0, mismatches = 0;
  for (int kind = 0; kind < 3; ++kind) {
    for (int i = 0; i < 100; ++i) {
      BackendPtr b;
      if (kind == 0)
        b = make_free_group({testing::random_length(rng), testing::random_length(rng)});
      else if (kind == 1)
        b = make_lattice(1, {}, {{"1", testing::random_length(rng), {}}, {"2", testing::random_length(rng), {}},
                                 {"3", testing::random_length(rng), {}}});
      else
        b = make_free_product_c2({testing::random_length(rng), testing::random_length(rng)});
      const auto supp = random_support(*b, rng, 8);
      const GroupElement target = testing::random_element(*b, rng, 7);
      ++compared;
      if (tsp_exact_dp(*b, supp, target).value != tsp_bruteforce_oracle(*b, supp, target))
        ++mismatches;
    }
  }
  std::size_t tree_compared = 0, tree_mismatches = 0;
  for (int i = 0; i < 100; ++i) {
    auto b = make_free_group({testing::random_length(rng), testing::random_length(rng)});
    const auto supp = random_support(*b, rng, 12);
    const GroupElement target = testing::random_element(*b, rng, 7);
    ++tree_compared;
    if (tsp_exact_tree(*b, supp, target).value != tsp_exact_dp(*b, supp, target).value)
      ++tree_mismatches;
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  return {mismatches == 0 && tree_mismatches == 0 && secs < 30,
          "dp vs brute force " + std::to_string(compared - mismatches) + "/" + std::to_string(compared) +
              ", tree vs dp " + std::to_string(tree_compared - tree_mismatches) + "/" +
              std::to_string(tree_compared) + ", " + fmt(secs, 1) + " s (limit 30 s)"};
}

Outcome lemma_suite() {
  std::size_t violations = 0, phi = 0, rows = 0, assignments = 0;
  bool ok = true;
  std::string realized;
  for (SigmaCase c : {SigmaCase::kI, SigmaCase::kII, SigmaCase::kIII, SigmaCase::kZI, SigmaCase::kZII}) {
    TableOptions opt;
    opt.assignments = 100;
    opt.seed = 20260202;
    const TableReport rep = validate_tables(c, opt);
    ok = ok && rep.passed() && rep.assignments >= 100;
    violations += rep.violations.size();
    phi += rep.phi_checked;
    rows += rep.rows_checked;
    assignments += rep.assignments;
    realized += std::string(realized.empty() ? "" : "; ") + std::string(to_string(c)) + " on " +
                std::to_string(rep.realizations.size()) + " backends";
  }
  VerifyOptions vopt;
  vopt.assignments = 100;
  vopt.seed = 20260202;
  const VerifyRun roster = run_verify_lemmas(vopt);
  ok = ok && roster.passed;
  return {ok && violations == 0, std::to_string(assignments) + " assignments, " + std::to_string(phi) +
                                     " injection checks, " + std::to_string(rows) + " printed-row checks, " +
                                     std::to_string(violations) + " violations (" + realized +
                                     "), roster sweep " + (roster.passed ? "PASS" : "FAIL")};
}

// One F2 Walk-Switch run shared by criteria 3 to 6.
const SimulationRun &f2_run() {
  static const SimulationRun run = run_simulation(preset_config("f2-walk-switch"));
  return run;
}

Outcome walk_switch_identity() {
  const SimulationRun &run = f2_run();
  const double oracle_p = testing::tree_return_probability(4);
  const double oracle = 0.5 * (1 - oracle_p);
  const IdentityReport &id = *run.identity;
  const double lsupp = run.rates.lsupp.mean;
  const bool ok = std::abs(id.discrepancy) <= 0.02 && std::abs(lsupp - oracle) <= 0.02 &&
                  std::abs(id.predicted - oracle) <= 0.02;
  return {ok, "l_supp " + fmt(lsupp) + ", (1/2)(1 - p_return) " + fmt(id.predicted) + " (p_return " +
                  fmt(id.p_return.probability.p) + " from " + std::to_string(id.p_return.probability.trials) +
                  " projection trials), discrepancy " + fmt(id.discrepancy) + ", oracle " + fmt(oracle)};
}

Outcome range_law_check() {
  const SimulationRun &run = f2_run();
  const double v = run.rates.range_rate.mean;
  return {std::abs(v - 2.0 / 3) <= 0.02, "|R_n|/n " + fmt(v) + " vs 2/3 +- 0.02"};
}

Outcome positive_and_zero_lsupp() {
  const SimulationRun &f2 = f2_run();
  const RunConfig zcfg = preset_config("z-srw-walk-switch");
  const BackendPtr zb = build_backend(zcfg.backend);
  const StepMeasure zm = build_measure(zcfg, zb);
  RateOptions opt;
  opt.horizon = zcfg.horizon;
  opt.trials = zcfg.trials;
  opt.seed = zcfg.seed;
  opt.tsp = TspStrategy::kNone;
  const RateEstimates z = estimate_rates(zm, opt);
  const bool ok = f2.rates.lsupp.ci.lo > 0 && z.lsupp.mean <= 0.02 && zcfg.horizon == 10000 && zcfg.trials == 100;
  return {ok, "F2 l_supp 99% CI " + ci(f2.rates.lsupp.ci) + "; Z SRW l_supp " + fmt(z.lsupp.mean) + " (n = " +
                  std::to_string(zcfg.horizon) + ", " + std::to_string(zcfg.trials) + " trials)"};
}

Outcome strict_acceleration() {
  const SimulationRun &run = f2_run();
  const auto &acc = run.rates.acceleration;
  const bool ok = acc && run.rates.lamp_cost == 0 && run.rates.exact_grade && acc->ci.lo > 0 &&
                  run.rates.horizon == 2000 && run.rates.trials == 400;
  return {ok, acc ? "l_TS - l_0 = " + fmt(acc->mean) + ", 99% CI " + ci(acc->ci) +
                        (run.rates.exact_grade ? ", exact tree d_TS" : ", heuristic d_TS")
                  : std::string("no d_TS")};
}

Outcome counterexample() {
  const RunConfig cfg = preset_config("z-counterexample-p075");
  const BackendPtr b = build_backend(cfg.backend);
  const StepMeasure m = build_measure(cfg, b);
  RateOptions opt;
  opt.horizon = cfg.horizon;
  opt.trials = cfg.trials;
  opt.seed = cfg.seed;
  opt.tsp = cfg.tsp;
  std::vector<TrajectoryRecord> recs;
  const RateEstimates r = estimate_rates(m, opt, &recs);
  bool all_line = true;
  for (const auto &rec : recs)
    for (const auto &row : rec.checkpoints)
      all_line = all_line && row.tsp && row.mode == TspMode::kExactLine;
  Rational drift(0);
  for (const auto &a : m.atoms())
    drift += a.probability * Rational(a.increment.position.data()[0]);
  const bool l0_ok = std::abs(r.l0.mean - 0.5) <= 0.02;
  const double gap = std::abs(r.lts->mean - r.l0.mean);
  const bool gap_ok = gap <= 0.02 && all_line;
  return {l0_ok && gap_ok,
          "l_0 " + fmt(r.l0.mean) + " CI " + ci(r.l0.ci) + " vs 0.5 +- 0.02 " + (l0_ok ? "PASS" : "FAIL") +
              " (exact mean step " + format_rational(drift) + "); |l_TS - l_0| " + fmt(gap) + " " +
              (gap_ok ? "PASS" : "FAIL") + (all_line ? " with exact-line d_TS" : " (not all exact-line)")};
}

Outcome induced_drift() {
  const BackendPtr d = make_free_product_c2({Rational(1), Rational(1)});
  const std::vector<std::vector<std::pair<std::string, Rational>>> choices{
      {{"a", Rational(1, 2)}, {"b", Rational(1, 6)}, {"ab", Rational(1, 3)}},
      {{"a", Rational(1, 3)}, {"aba", Rational(1, 3)}, {"ba", Rational(1, 3)}},
      {{"b", Rational(1, 5)}, {"a", Rational(1, 5)}, {"ab", Rational(2, 5)}, {"abab", Rational(1, 5)}},
  };
  bool ok = true;
  std::string detail;
  std::uint64_t seed = 20260208;
  for (const auto &choice : choices) {
    std::vector<StepDistribution::Atom> atoms;
    for (const auto &[text, p] : choice)
      atoms.push_back({d->parse(text), p});
    const StepDistribution mu0(d, std::move(atoms));
    const DriftEstimate est = induced_walk_drift(mu0, 400, 2500, seed++);
    const bool pass = std::abs(est.drift.mean) <= 0.02 && est.visits >= 100000;
    ok = ok && pass;
    detail += std::string(detail.empty() ? "" : "; ") + "D = " + fmt(est.drift.mean) + " over " +
              std::to_string(est.visits) + " visits";
  }
  return {ok, detail};
}

Outcome structural_invariants() {
  CounterRng rng(20260209, 0);
  std::size_t metric = 0, metric_bad = 0, group = 0, group_bad = 0;
  const std::vector<BackendPtr> bases{
      make_free_group({Rational(1), Rational(1)}),
      make_free_group({Rational(1), Rational(2), Rational(3)}),
      make_free_product_c2({Rational(1), Rational(1), Rational(1)}),
      make_lattice(2, {}, {{"(1,0)", Rational(1), {}}, {"(0,1)", Rational(3, 2), {}}, {"(1,1)", Rational(2), {}}}),
      make_lattice(1, {}, {{"1", Rational(1), {}}, {"2", Rational(3, 2), {}}}),
  };
  for (const auto &b : bases) {
    for (int i = 0; i < 200; ++i) {
      const GroupElement x = testing::random_element(*b, rng, 8), y = testing::random_element(*b, rng, 8),
                         z = testing::random_element(*b, rng, 8);
      ++metric;
      const bool ok = b->distance(x, x) == Length(0) && b->distance(x, y) == b->distance(y, x) &&
                      b->distance(x, z) <= b->distance(x, y) + b->distance(y, z) &&
                      (x == y || b->distance(x, y) >= b->r1()) &&
                      b->distance(b->multiply(z, x), b->multiply(z, y)) == b->distance(x, y);
      metric_bad += ok ? 0 : 1;
      WreathElement u{Configuration(), x}, v{single_lamp(y), z}, w{single_lamp(z), y};
      u.lamps.add(y, 1);
      ++group;
      const WreathElement e = wreath_identity(*b);
      const bool gok = wreath_multiply(*b, wreath_multiply(*b, u, v), w) ==
                           wreath_multiply(*b, u, wreath_multiply(*b, v, w)) &&
                       wreath_multiply(*b, u, wreath_inverse(*b, u)) == e && wreath_multiply(*b, e, v) == v;
      group_bad += gok ? 0 : 1;
    }
  }

  struct Suite {
    BackendPtr backend;
    int count;
  };
  const std::vector<Suite> suites{{bases[0], 20}, {bases[1], 15}, {bases[2], 15}};
  std::size_t trajectories = 0, support_checks = 0, support_bad = 0, tsp_checks = 0, tsp_bad = 0, nondet = 0;
  for (const auto &s : suites) {
    const SelectionOutcome sel = select_sigmas(s.backend);
    const StepMeasure m = make_walk_switch(StepDistribution::simple(s.backend));
    for (int t = 0; t < s.count; ++t) {
      SimulationOptions opt;
      opt.horizon = 600;
      opt.seed = 20260209;
      opt.trial = static_cast<std::uint64_t>(trajectories);
      opt.retain_path = true;
      opt.checkpoints = {0, 37, 100, 150, 300, 451, 600};
      const TrajectoryRecord rec = simulate(m, opt);
      ++trajectories;
      if (!(simulate(m, opt) == rec))
        ++nondet;
      const AuditResult a = audit_support_inequality(rec);
      support_checks += a.checked;
      support_bad += a.violations;
      const AuditResult b = audit_tsp_inequality(*s.backend, rec, *sel.triple);
      tsp_checks += b.checked;
      tsp_bad += b.violations;
    }
  }
  // Parallel aggregation reproduces the sequential records bit for bit.
  const StepMeasure m = make_walk_switch(StepDistribution::simple(bases[0]));
  RateOptions ropt;
  ropt.horizon = 300;
  ropt.trials = 8;
  std::vector<TrajectoryRecord> seq, par;
  estimate_rates(m, ropt, &seq);
  ropt.jobs = 3;
  estimate_rates(m, ropt, &par);
  const bool parallel_same = seq == par;

  const bool ok = metric_bad == 0 && group_bad == 0 && support_bad == 0 && tsp_bad == 0 && nondet == 0 &&
                  parallel_same && trajectories == 50 && tsp_checks > 0;
  return {ok, "metric " + std::to_string(metric - metric_bad) + "/" + std::to_string(metric) + ", wreath " +
                  std::to_string(group - group_bad) + "/" + std::to_string(group) + ", " +
                  std::to_string(trajectories) + " trajectories: support inequality " +
                  std::to_string(support_checks - support_bad) + "/" + std::to_string(support_checks) +
                  ", tour inequality " + std::to_string(tsp_checks - tsp_bad) + "/" + std::to_string(tsp_checks) +
                  ", determinism " + (nondet == 0 && parallel_same ? "bit-exact" : "BROKEN")};
}

} // namespace
} // namespace lamprate

int main() {
  using namespace lamprate;
  struct Criterion {
    const char *name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"TSP oracle equivalence", tsp_oracle_equivalence},
      {"lemma suite and printed tables", lemma_suite},
      {"Walk-Switch identity on F2", walk_switch_identity},
      {"range law on F2", range_law_check},
      {"positive l_supp on F2, vanishing on Z", positive_and_zero_lsupp},
      {"strict acceleration on F2", strict_acceleration},
      {"linear Z counterexample", counterexample},
      {"Z2*Z2 induced-walk drift", induced_drift},
      {"structural invariants", structural_invariants},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    Outcome out;
    try {
      out = criteria[i].run();
    } catch (const std::exception &e) {
      out = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    failures += out.pass ? 0 : 1;
    std::printf("criterion %zu (%s): %s  %s  [%.1f s]\n", i + 1, criteria[i].name, out.pass ? "PASS" : "FAIL",
                out.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("acceptance: %d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
