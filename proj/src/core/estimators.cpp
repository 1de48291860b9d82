// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/estimators.hpp"

#include "core/errors.hpp"
#include "core/words.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

namespace lamprate {

namespace {

[[noreturn]] void rethrow_with_context(const std::exception_ptr &ep, const std::string &context) {
  try {
    std::rethrow_exception(ep);
  } catch (const CapExceededError &e) {
    throw CapExceededError(context + e.what());
  } catch (const ConfigError &e) {
    throw ConfigError(context + e.what());
  } catch (const HypothesisError &e) {
    throw HypothesisError(context + e.what());
  } catch (const UsageError &e) {
    throw UsageError(context + e.what());
  } catch (const std::exception &e) {
    throw Error(context + e.what());
  }
}

} // namespace

void run_parallel(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)> &fn) {
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(count, 1));
  std::atomic<std::size_t> next{0};
  std::mutex mutex;
  std::size_t failed_index = count;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    for (std::size_t j = 0; j < jobs; ++j)
      threads.emplace_back(worker);
  }
  if (failure)
    std::rethrow_exception(failure);
}

MeanEstimate mean_estimate(std::span<const double> values, double z) {
  MeanEstimate out;
  out.samples = values.size();
  if (values.empty())
    return out;
  const double n = static_cast<double>(values.size());
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0;
  for (double v : values)
    ss += (v - out.mean) * (v - out.mean);
  out.sd = values.size() > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
  const double half = z * out.sd / std::sqrt(n);
  out.ci = {out.mean - half, out.mean + half};
  return out;
}

ProportionEstimate proportion_estimate(std::size_t successes, std::size_t trials, double z) {
  ProportionEstimate out;
  out.successes = successes;
  out.trials = trials;
  out.p = trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0;
  out.ci = wilson_interval(successes, trials, z);
  return out;
}

double ols_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    return 0.0;
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0 ? sxy / sxx : 0.0;
}

RateEstimates aggregate_rates(const GroupBackend &backend, std::span<const TrajectoryRecord> records,
                              const Rational &lamp_cost) {
  if (records.empty())
    throw UsageError("no trajectories to aggregate");
  RateEstimates out;
  out.horizon = records.front().horizon;
  out.trials = records.size();
  out.seed = records.front().seed;
  out.lamp_cost = lamp_cost;
  const double n = static_cast<double>(out.horizon);
  const double c = to_double(lamp_cost);

  std::vector<double> l0, lsupp, lts, lfull, accel, range;
  std::size_t returned = 0, tsp_rows = 0, heuristic_rows = 0, final_heuristic = 0;
  bool all_tsp = true;
  for (const auto &rec : records) {
    if (rec.horizon != out.horizon)
      throw UsageError("trajectories do not share a horizon");
    if (rec.checkpoints.empty() || rec.checkpoints.back().n != rec.horizon)
      throw UsageError("every trajectory needs a checkpoint at the horizon");
    const auto &last = rec.checkpoints.back();
    const double d = backend.to_double(last.distance);
    l0.push_back(d / n);
    lsupp.push_back(static_cast<double>(last.support) / n);
    range.push_back(static_cast<double>(rec.range()) / n);
    returned += rec.first_return ? 1 : 0;
    for (const auto &row : rec.checkpoints) {
      if (!row.tsp)
        continue;
      ++tsp_rows;
      heuristic_rows += row.mode == TspMode::kHeuristic ? 1 : 0;
    }
    if (last.tsp) {
      const double t = backend.to_double(*last.tsp);
      lts.push_back(t / n);
      lfull.push_back((t + c * static_cast<double>(last.support)) / n);
      accel.push_back((t - d) / n);
      final_heuristic += last.mode == TspMode::kHeuristic ? 1 : 0;
    } else {
      all_tsp = false;
    }
  }
  out.l0 = mean_estimate(l0);
  out.lsupp = mean_estimate(lsupp);
  out.range_rate = mean_estimate(range);
  out.return_freq = proportion_estimate(returned, records.size());
  if (all_tsp) {
    out.lts = mean_estimate(lts);
    MeanEstimate l = mean_estimate(lfull);
    // The identity l = l_TS + c_L l_supp holds exactly for the point estimate.
    const double centre = out.lts->mean + c * out.lsupp.mean;
    const double half = l.half_width();
    l.mean = centre;
    l.ci = {centre - half, centre + half};
    out.l = l;
    out.acceleration = mean_estimate(accel);
    out.heuristic_fraction = tsp_rows ? static_cast<double>(heuristic_rows) / static_cast<double>(tsp_rows) : 0.0;
    out.final_heuristic_fraction = static_cast<double>(final_heuristic) / static_cast<double>(records.size());
    out.exact_grade = final_heuristic == 0;
  }

  // Slopes of the trial-averaged checkpoint values against n.
  const auto &schedule = records.front().checkpoints;
  std::vector<double> xs, d_avg, s_avg, t_avg;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i].n == 0)
      continue;
    double sd = 0, ss = 0, st = 0;
    for (const auto &rec : records) {
      if (rec.checkpoints.size() != schedule.size() || rec.checkpoints[i].n != schedule[i].n)
        throw UsageError("trajectories do not share a checkpoint schedule");
      sd += backend.to_double(rec.checkpoints[i].distance);
      ss += static_cast<double>(rec.checkpoints[i].support);
      if (rec.checkpoints[i].tsp)
        st += backend.to_double(*rec.checkpoints[i].tsp);
    }
    const double k = static_cast<double>(records.size());
    xs.push_back(static_cast<double>(schedule[i].n));
    d_avg.push_back(sd / k);
    s_avg.push_back(ss / k);
    t_avg.push_back(st / k);
  }
  out.slope_l0 = ols_slope(xs, d_avg);
  out.slope_lsupp = ols_slope(xs, s_avg);
  if (all_tsp)
    out.slope_lts = ols_slope(xs, t_avg);
  return out;
}

RateEstimates estimate_rates(const StepMeasure &measure, const RateOptions &options,
                             std::vector<TrajectoryRecord> *records) {
  if (options.horizon < 100)
    throw UsageError("rate estimation needs a horizon of at least 100");
  if (options.trials < 2)
    throw UsageError("rate estimation needs at least 2 trials");
  std::vector<std::uint64_t> cps = options.checkpoints;
  if (!cps.empty() && std::find(cps.begin(), cps.end(), options.horizon) == cps.end())
    cps.push_back(options.horizon);
  std::vector<TrajectoryRecord> recs(options.trials);
  run_parallel(options.trials, options.jobs, [&](std::size_t i) {
    SimulationOptions sim;
    sim.horizon = options.horizon;
    sim.seed = options.seed;
    sim.trial = i;
    sim.checkpoints = cps;
    sim.tsp = options.tsp;
    sim.dp_cap = options.dp_cap;
    try {
      recs[i] = simulate(measure, sim);
    } catch (...) {
      rethrow_with_context(std::current_exception(),
                           "trial " + std::to_string(i) + " (seed " + std::to_string(options.seed) + "): ");
    }
  });
  RateEstimates out = aggregate_rates(measure.group(), recs, options.lamp_cost);
  out.seed = options.seed;
  if (records)
    *records = std::move(recs);
  return out;
}

namespace {

/// First m in [1, horizon] with X_m = target, walking from e.
std::optional<std::uint64_t> first_hit(const StepDistribution &mu0, const GroupElement &target,
                                       std::uint64_t horizon, std::uint64_t seed, std::uint64_t trial) {
  const GroupBackend &b = *mu0.backend();
  CounterRng rng(seed, trial);
  GroupElement x = b.identity();
  for (std::uint64_t m = 1; m <= horizon; ++m) {
    b.multiply_in_place(x, mu0.atoms()[mu0.sample(rng)].x);
    if (x == target)
      return m;
  }
  return std::nullopt;
}

std::size_t count_hits(const StepDistribution &mu0, const GroupElement &target, std::uint64_t horizon,
                       std::size_t trials, std::uint64_t seed, std::size_t jobs) {
  std::vector<std::uint8_t> hit(trials, 0);
  run_parallel(trials, jobs, [&](std::size_t i) { hit[i] = first_hit(mu0, target, horizon, seed, i) ? 1 : 0; });
  return static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1));
}

} // namespace

ReturnEstimate return_probability(const StepDistribution &mu0, std::uint64_t horizon, std::size_t trials,
                                  std::uint64_t seed, std::size_t jobs) {
  if (trials == 0 || horizon == 0)
    throw UsageError("return probability needs trials >= 1 and horizon >= 1");
  ReturnEstimate out;
  out.horizon = horizon;
  out.probability = proportion_estimate(count_hits(mu0, mu0.backend()->identity(), horizon, trials, seed, jobs),
                                        trials);
  out.caveat = "lower bound: returns after n = " + std::to_string(horizon) + " are not observed";
  return out;
}

RangeLaw range_law(std::span<const TrajectoryRecord> records, std::optional<double> p_return) {
  if (records.empty())
    throw UsageError("no trajectories for the range law");
  std::vector<double> v;
  for (const auto &rec : records) {
    if (rec.horizon != records.front().horizon)
      throw UsageError("trajectories do not share a horizon");
    v.push_back(static_cast<double>(rec.range()) / static_cast<double>(std::max<std::uint64_t>(rec.horizon, 1)));
  }
  RangeLaw out;
  out.rate = mean_estimate(v);
  if (p_return) {
    out.complement = 1.0 - *p_return;
    out.discrepancy = out.rate.mean - *out.complement;
  }
  return out;
}

IdentityReport walk_switch_identity_check(const StepMeasure &measure, const RateEstimates &rates,
                                          std::size_t projection_trials, std::uint64_t projection_seed,
                                          std::size_t jobs) {
  if (measure.kind() != MeasureKind::kWalkSwitch || measure.modulus() != 2)
    throw UsageError("the Walk-Switch identity needs a Walk-Switch measure with lamp modulus 2");
  IdentityReport out;
  out.lsupp = rates.lsupp;
  out.p_return = return_probability(measure.projection(), rates.horizon, projection_trials, projection_seed, jobs);
  const double p = out.p_return.probability.p;
  out.predicted = 0.5 * (1.0 - p);
  out.discrepancy = out.lsupp.mean - out.predicted;
  const double se_supp = out.lsupp.samples ? out.lsupp.sd / std::sqrt(static_cast<double>(out.lsupp.samples)) : 0.0;
  const double se_p = std::sqrt(p * (1 - p) / static_cast<double>(projection_trials));
  out.joint_half_width = kZ99 * std::sqrt(se_supp * se_supp + 0.25 * se_p * se_p);
  return out;
}

GreenEstimate greenian_distance(const StepDistribution &mu0, const GroupElement &x, const GroupElement &y,
                                std::uint64_t horizon, std::size_t trials, std::uint64_t seed, std::size_t jobs) {
  const GroupBackend &b = *mu0.backend();
  GreenEstimate out;
  b.validate(x);
  b.validate(y);
  if (x == y) {
    out.hit = proportion_estimate(trials, trials);
    out.caveat = "x = y: the hitting time is 0";
    return out;
  }
  if (trials == 0)
    throw UsageError("greenian distance needs trials >= 1");
  const GroupElement target = b.multiply(b.inverse(x), y);
  out.hit = proportion_estimate(count_hits(mu0, target, horizon, trials, seed, jobs), trials);
  if (out.hit.successes == 0) {
    out.censored = true;
    out.value = std::log(static_cast<double>(trials));
    out.caveat = "no hit in " + std::to_string(trials) + " trials: the distance is at least ln(trials)";
  } else {
    out.value = -std::log(out.hit.p);
    out.caveat = "hits after n = " + std::to_string(horizon) + " are not observed, so this is an upper bound";
  }
  return out;
}

bool dihedral_support_irreducible(const StepDistribution &mu0) {
  std::int64_t g = 0;
  std::optional<std::int64_t> first_reflection;
  for (const auto &a : mu0.atoms()) {
    if (auto z = dihedral_rotation(a.x)) {
      g = std::gcd(g, *z);
    } else if (auto u = dihedral_reflection(a.x)) {
      if (first_reflection)
        g = std::gcd(g, *u - *first_reflection);
      else
        first_reflection = *u;
    }
  }
  return first_reflection.has_value() && g == 1;
}

DriftEstimate induced_walk_drift(const StepDistribution &mu0, std::size_t trials, std::uint64_t horizon,
                                 std::uint64_t seed, std::size_t jobs) {
  const auto *w = dynamic_cast<const WordBackend *>(mu0.backend().get());
  if (!w || w->kind() != BackendKind::kFreeProductC2 || w->rank() != 2)
    throw UsageError("the induced walk is defined on Z2*Z2 only");
  if (!dihedral_support_irreducible(mu0))
    throw UsageError("mu_0 is not irreducible on Z2*Z2 (its support lies in a proper subgroup)");
  std::vector<std::vector<double>> increments(trials);
  run_parallel(trials, jobs, [&](std::size_t i) {
    CounterRng rng(seed, i);
    GroupElement x = w->identity();
    std::int64_t last = 0;
    for (std::uint64_t m = 1; m <= horizon; ++m) {
      w->multiply_in_place(x, mu0.atoms()[mu0.sample(rng)].x);
      if (auto z = dihedral_rotation(x)) {
        increments[i].push_back(static_cast<double>(*z - last));
        last = *z;
      }
    }
  });
  std::vector<double> all;
  for (const auto &v : increments)
    all.insert(all.end(), v.begin(), v.end());
  DriftEstimate out;
  out.visits = all.size();
  out.censored = all.empty();
  out.drift = mean_estimate(all);
  return out;
}

} // namespace lamprate
