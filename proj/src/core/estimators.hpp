// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "core/walk.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lamprate {

/// Runs fn(0) .. fn(count - 1) on up to jobs threads. Each index runs exactly
/// once; the first exception (lowest index) is rethrown after all workers stop.
void run_parallel(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)> &fn);

struct MeanEstimate {
  double mean = 0;
  double sd = 0;
  std::size_t samples = 0;
  Interval ci; ///< normal approximation, 99%

  double half_width() const { return (ci.hi - ci.lo) / 2; }
};

MeanEstimate mean_estimate(std::span<const double> values, double z = kZ99);

struct ProportionEstimate {
  std::size_t successes = 0;
  std::size_t trials = 0;
  double p = 0;
  Interval ci; ///< Wilson, 99%
};

ProportionEstimate proportion_estimate(std::size_t successes, std::size_t trials, double z = kZ99);

/// Least-squares slope of y on x.
double ols_slope(std::span<const double> x, std::span<const double> y);

struct RateOptions {
  std::uint64_t horizon = 1000;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  Rational lamp_cost{0};
  TspStrategy tsp = TspStrategy::kAuto;
  std::size_t dp_cap = kDefaultDpCap;
  std::size_t jobs = 1;
  std::vector<std::uint64_t> checkpoints; ///< empty: default schedule
};

struct RateEstimates {
  std::uint64_t horizon = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  Rational lamp_cost{0};

  MeanEstimate l0;    ///< d(e, X_n) / n
  MeanEstimate lsupp; ///< |supp(eta_n)| / n
  std::optional<MeanEstimate> lts;          ///< d_TS(Z_n) / n
  std::optional<MeanEstimate> l;            ///< l_TS + c_L l_supp
  std::optional<MeanEstimate> acceleration; ///< paired (d_TS - d(e, X_n)) / n

  double slope_l0 = 0;
  double slope_lsupp = 0;
  std::optional<double> slope_lts;

  MeanEstimate range_rate;        ///< |R_n| / n
  ProportionEstimate return_freq; ///< trials with X_m = e for some 1 <= m <= n

  double heuristic_fraction = 0;       ///< over all checkpoints with d_TS
  double final_heuristic_fraction = 0; ///< over final checkpoints
  bool exact_grade = false;            ///< no final checkpoint used the heuristic
};

/// Simulates the trials (possibly in parallel) and aggregates them in trial
/// order. records, when given, receives every trajectory.
RateEstimates estimate_rates(const StepMeasure &measure, const RateOptions &options,
                             std::vector<TrajectoryRecord> *records = nullptr);

/// Aggregation only, over already simulated trajectories sharing a horizon.
RateEstimates aggregate_rates(const GroupBackend &backend, std::span<const TrajectoryRecord> records,
                              const Rational &lamp_cost);

struct ReturnEstimate {
  ProportionEstimate probability;
  std::uint64_t horizon = 0;
  std::string caveat;
};

/// Fraction of projected walks with X_m = e for some 1 <= m <= horizon, a
/// lower bound on the return probability.
ReturnEstimate return_probability(const StepDistribution &mu0, std::uint64_t horizon, std::size_t trials,
                                  std::uint64_t seed, std::size_t jobs = 1);

struct RangeLaw {
  MeanEstimate rate; ///< |R_n| / n at the horizon
  std::optional<double> complement; ///< 1 - p_return when supplied
  std::optional<double> discrepancy;
};

RangeLaw range_law(std::span<const TrajectoryRecord> records, std::optional<double> p_return = std::nullopt);

struct IdentityReport {
  MeanEstimate lsupp;
  ReturnEstimate p_return;
  double predicted = 0;   ///< (1/2)(1 - p_return)
  double discrepancy = 0; ///< lsupp - predicted
  double joint_half_width = 0;
};

/// Compares l_supp of a Walk-Switch run against (1/2)(1 - p_return) from an
/// independent projection-only run.
IdentityReport walk_switch_identity_check(const StepMeasure &measure, const RateEstimates &rates,
                                          std::size_t projection_trials, std::uint64_t projection_seed,
                                          std::size_t jobs = 1);

struct GreenEstimate {
  double value = 0;     ///< -ln(hit fraction), or ln(trials) when censored
  bool censored = false; ///< no hit observed: the true value is >= value
  ProportionEstimate hit;
  std::string caveat;
};

GreenEstimate greenian_distance(const StepDistribution &mu0, const GroupElement &x, const GroupElement &y,
                                std::uint64_t horizon, std::size_t trials, std::uint64_t seed,
                                std::size_t jobs = 1);

struct DriftEstimate {
  MeanEstimate drift; ///< mean increment of the induced walk on {(ab)^z}
  std::size_t visits = 0;
  bool censored = false;
};

/// For Z2*Z2: the induced walk at successive visits to the rotation subgroup.
/// Throws UsageError for other backends and when mu_0 is not irreducible.
DriftEstimate induced_walk_drift(const StepDistribution &mu0, std::size_t trials, std::uint64_t horizon,
                                 std::uint64_t seed, std::size_t jobs = 1);

/// Support generates Z2*Z2: some reflection, and gcd of rotation parameters
/// and reflection differences is 1.
bool dihedral_support_irreducible(const StepDistribution &mu0);

} // namespace lamprate
