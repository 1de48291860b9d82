// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "core/case_analysis.hpp"
#include "core/group.hpp"
#include "core/rng.hpp"
#include "core/tsp.hpp"
#include "core/wreath.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lamprate {

/// Draws atom indices with exact rational probabilities: the cumulative
/// numerators over the common denominator are compared against an unbiased
/// integer draw.
class AtomSampler {
public:
  AtomSampler() = default;
  explicit AtomSampler(const std::vector<Rational> &probabilities);

  std::size_t operator()(CounterRng &rng) const;

private:
  std::vector<std::uint64_t> cumulative_;
  std::uint64_t denominator_ = 1;
};

/// A finitely supported probability measure mu_0 on G.
class StepDistribution {
public:
  struct Atom {
    GroupElement x;
    Rational probability;
  };

  StepDistribution(BackendPtr backend, std::vector<Atom> atoms);

  const BackendPtr &backend() const noexcept { return backend_; }
  const std::vector<Atom> &atoms() const noexcept { return atoms_; }
  std::size_t sample(CounterRng &rng) const { return sampler_(rng); }

  /// Uniform distribution on the generating set S.
  static StepDistribution simple(BackendPtr backend);

private:
  BackendPtr backend_;
  std::vector<Atom> atoms_;
  AtomSampler sampler_;
};

enum class MeasureKind { kWalkSwitch, kSwitchWalk, kCustom };

std::string_view to_string(MeasureKind kind);

/// mu on Z_r wr G: finitely many wreath increments with rational
/// probabilities summing to exactly 1.
class StepMeasure {
public:
  struct Atom {
    WreathElement increment;
    Rational probability;
  };

  StepMeasure(BackendPtr backend, MeasureKind kind, LampState modulus, std::vector<Atom> atoms);

  const BackendPtr &backend() const noexcept { return backend_; }
  const GroupBackend &group() const noexcept { return *backend_; }
  MeasureKind kind() const noexcept { return kind_; }
  LampState modulus() const noexcept { return modulus_; }
  const std::vector<Atom> &atoms() const noexcept { return atoms_; }
  /// R = max over atoms of max over supp(eta) of d(e, y).
  Length radius() const noexcept { return radius_; }
  /// Non-fatal diagnostics, e.g. when the generation condition cannot be
  /// confirmed.
  const std::vector<std::string> &warnings() const noexcept { return warnings_; }
  /// The image of mu on G.
  StepDistribution projection() const;

  std::size_t sample(CounterRng &rng) const { return sampler_(rng); }

private:
  BackendPtr backend_;
  MeasureKind kind_;
  LampState modulus_;
  std::vector<Atom> atoms_;
  AtomSampler sampler_;
  Length radius_;
  std::vector<std::string> warnings_;
};

/// Walk with mu_0, then toggle the lamp at the arrival point with probability
/// 1/2. For r > 2 the toggle adds +1 or -1 with probability 1/4 each.
StepMeasure make_walk_switch(const StepDistribution &mu0, LampState modulus = 2);

/// Toggle the lamp at the current position with probability p, then walk
/// with mu_0. For r > 2 the toggle adds +1 or -1 with probability p/2 each.
StepMeasure make_switch_walk(const StepDistribution &mu0, const Rational &p_switch, LampState modulus = 2);

/// Arbitrary atoms; probabilities must sum to exactly 1.
StepMeasure make_custom(BackendPtr backend, std::vector<StepMeasure::Atom> atoms, LampState modulus = 2);

/// Default checkpoint schedule: floor(n / 2^i) for i >= 0 while positive.
std::vector<std::uint64_t> default_checkpoints(std::uint64_t horizon);

struct SimulationOptions {
  std::uint64_t horizon = 1000;
  std::uint64_t seed = 1;
  std::uint64_t trial = 0;
  std::vector<std::uint64_t> checkpoints; ///< empty: default schedule
  TspStrategy tsp = TspStrategy::kAuto;
  std::size_t dp_cap = kDefaultDpCap;
  bool retain_path = false; ///< keep X_0..X_n and the state at each checkpoint
};

struct CheckpointRow {
  std::uint64_t n = 0;
  Length distance;      ///< d(e, X_n)
  std::size_t support = 0;
  std::size_t range = 0;
  std::optional<Length> tsp;
  TspMode mode = TspMode::kExactDp;

  friend bool operator==(const CheckpointRow &, const CheckpointRow &) = default;
};

struct TrajectoryRecord {
  std::uint64_t horizon = 0;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  std::vector<CheckpointRow> checkpoints;
  std::vector<std::uint64_t> first_visit_times; ///< s(1) = 0 < s(2) < ...
  std::optional<std::uint64_t> first_return;     ///< min{n >= 1 : X_n = e}
  WreathElement final_state;
  std::vector<GroupElement> path;               ///< X_0..X_n when retained
  std::vector<WreathElement> checkpoint_states; ///< Z_n per checkpoint when retained

  std::size_t range() const noexcept { return first_visit_times.size(); }

  friend bool operator==(const TrajectoryRecord &, const TrajectoryRecord &) = default;
};

/// Runs Z_n = Z_{n-1} i_n. A pure function of (measure, options).
TrajectoryRecord simulate(const StepMeasure &measure, const SimulationOptions &options);

struct SkeletonPoint {
  std::uint64_t time = 0; ///< t(k)
  GroupElement point;     ///< H(k) = X_{t(k)}
};

/// t(1) = 0 and t(k) the first time after t(k-1) at which X leaves the union
/// of the balls B(H(j), separation), j < k.
std::vector<SkeletonPoint> hitting_skeleton(const GroupBackend &backend, const std::vector<GroupElement> &path,
                                            Length separation);
std::vector<SkeletonPoint> hitting_skeleton(const GroupBackend &backend, const TrajectoryRecord &record,
                                            const SigmaTriple &triple);

struct Interval {
  double lo = 0;
  double hi = 0;
};

/// Wilson score interval at the given normal quantile.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z);

inline constexpr double kZ99 = 2.5758293035489004;

struct DeltaStats {
  std::vector<std::uint8_t> indicators; ///< per skeleton index k
  std::size_t successes = 0;
  double mean = 0;
  Interval ci;

  void merge(const DeltaStats &other);
};

/// Per skeleton point: whether {H, H s1, H s2, H s3} are all lit in the
/// final configuration.
DeltaStats delta_statistics(const GroupBackend &backend, const TrajectoryRecord &record, const SigmaTriple &triple);

struct AuditResult {
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::string first_violation;

  bool passed() const noexcept { return violations == 0; }
};

/// |supp(eta_n)| >= sum_j [eta_n(X_{s(j)}) != 0] at every retained checkpoint.
AuditResult audit_support_inequality(const TrajectoryRecord &record);

/// d_TS(Z_n) >= d(e, X_n) + sum_k Delta_{n - t(k), k} at every retained
/// checkpoint with an exact d_TS value.
AuditResult audit_tsp_inequality(const GroupBackend &backend, const TrajectoryRecord &record,
                                 const SigmaTriple &triple);

} // namespace lamprate
