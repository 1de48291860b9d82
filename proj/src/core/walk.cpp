// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/walk.hpp"

#include "core/errors.hpp"
#include "core/lattice.hpp"
#include "core/words.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace lamprate {

AtomSampler::AtomSampler(const std::vector<Rational> &probabilities) {
  if (probabilities.empty())
    throw ConfigError("a measure needs at least one atom");
  std::int64_t den = 1;
  for (const auto &p : probabilities) {
    if (p <= 0 || p > 1)
      throw ConfigError("atom probabilities must lie in (0, 1], got " + format_rational(p));
    den = std::lcm(den, p.denominator());
    if (den > (std::int64_t{1} << 53))
      throw ConfigError("probability denominators are too large");
  }
  Rational total(0);
  std::uint64_t acc = 0;
  for (const auto &p : probabilities) {
    total += p;
    acc += static_cast<std::uint64_t>((p * Rational(den)).numerator());
    cumulative_.push_back(acc);
  }
  if (total != 1)
    throw ConfigError("probabilities sum to " + format_rational(total) + ", not 1");
  denominator_ = static_cast<std::uint64_t>(den);
}

std::size_t AtomSampler::operator()(CounterRng &rng) const {
  const std::uint64_t v = rng.below(denominator_);
  return static_cast<std::size_t>(std::upper_bound(cumulative_.begin(), cumulative_.end(), v) - cumulative_.begin());
}

namespace {

std::vector<Rational> probabilities_of(const auto &atoms) {
  std::vector<Rational> out;
  out.reserve(atoms.size());
  for (const auto &a : atoms)
    out.push_back(a.probability);
  return out;
}

/// Whether the subgroup generated by the elements is all of G. Exact for
/// lattices; for words a bounded closure must reach every basis letter.
bool projection_generates(const GroupBackend &b, const std::vector<GroupElement> &elements) {
  if (const auto *lat = dynamic_cast<const LatticeBackend *>(&b))
    return lat->generates(elements);
  std::vector<GroupElement> steps = elements;
  for (const auto &x : elements)
    steps.push_back(b.inverse(x));
  std::unordered_set<GroupElement, GroupElementHash> seen{b.identity()};
  std::vector<GroupElement> frontier{b.identity()};
  constexpr std::size_t kMaxNodes = 20000;
  constexpr std::size_t kMaxWord = 12;
  while (!frontier.empty() && seen.size() < kMaxNodes) {
    std::vector<GroupElement> next;
    for (const auto &x : frontier)
      for (const auto &s : steps) {
        GroupElement y = x;
        b.multiply_in_place(y, s);
        if (y.size() <= kMaxWord && seen.insert(y).second)
          next.push_back(std::move(y));
      }
    frontier = std::move(next);
  }
  for (const auto &g : b.generators().all())
    if (!seen.contains(g.action))
      return false;
  return true;
}

} // namespace

StepDistribution::StepDistribution(BackendPtr backend, std::vector<Atom> atoms)
    : backend_(std::move(backend)), atoms_(std::move(atoms)) {
  for (const auto &a : atoms_)
    backend_->validate(a.x);
  sampler_ = AtomSampler(probabilities_of(atoms_));
}

StepDistribution StepDistribution::simple(BackendPtr backend) {
  std::vector<Atom> atoms;
  const auto gens = backend->generators().all();
  for (const auto &g : gens)
    atoms.push_back({g.action, Rational(1, static_cast<std::int64_t>(gens.size()))});
  return StepDistribution(std::move(backend), std::move(atoms));
}

std::string_view to_string(MeasureKind kind) {
  switch (kind) {
  case MeasureKind::kWalkSwitch: return "walk-switch";
  case MeasureKind::kSwitchWalk: return "switch-walk";
  case MeasureKind::kCustom: return "custom";
  }
  return "?";
}

StepMeasure::StepMeasure(BackendPtr backend, MeasureKind kind, LampState modulus, std::vector<Atom> atoms)
    : backend_(std::move(backend)), kind_(kind), modulus_(modulus), atoms_(std::move(atoms)) {
  if (modulus_ < 2)
    throw ConfigError("lamp modulus must be >= 2");
  const GroupBackend &b = *backend_;
  bool lamp_changing = false;
  std::vector<GroupElement> projection;
  for (const auto &a : atoms_) {
    if (a.increment.lamps.modulus() != modulus_)
      throw ConfigError("atom lamp modulus differs from the measure modulus");
    b.validate(a.increment.position);
    for (const auto &[y, s] : a.increment.lamps.lamps()) {
      b.validate(y);
      radius_ = std::max(radius_, b.norm(y));
    }
    lamp_changing = lamp_changing || !a.increment.lamps.empty();
    projection.push_back(a.increment.position);
  }
  sampler_ = AtomSampler(probabilities_of(atoms_));
  if (!lamp_changing)
    warnings_.push_back("no atom changes a lamp, so the support cannot generate the lamplighter group");
  if (!projection_generates(b, projection))
    warnings_.push_back("could not confirm that the projected support generates " + b.describe());
}

StepDistribution StepMeasure::projection() const {
  std::vector<StepDistribution::Atom> out;
  for (const auto &a : atoms_) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto &o) { return o.x == a.increment.position; });
    if (it == out.end())
      out.push_back({a.increment.position, a.probability});
    else
      it->probability += a.probability;
  }
  return StepDistribution(backend_, std::move(out));
}

StepMeasure make_walk_switch(const StepDistribution &mu0, LampState modulus) {
  std::vector<StepMeasure::Atom> atoms;
  for (const auto &[x, p] : mu0.atoms()) {
    atoms.push_back({WreathElement{Configuration(modulus), x}, p / 2});
    if (modulus == 2) {
      atoms.push_back({WreathElement{single_lamp(x, modulus, 1), x}, p / 2});
    } else {
      atoms.push_back({WreathElement{single_lamp(x, modulus, 1), x}, p / 4});
      atoms.push_back({WreathElement{single_lamp(x, modulus, modulus - 1), x}, p / 4});
    }
  }
  return StepMeasure(mu0.backend(), MeasureKind::kWalkSwitch, modulus, std::move(atoms));
}

StepMeasure make_switch_walk(const StepDistribution &mu0, const Rational &p_switch, LampState modulus) {
  if (p_switch <= 0 || p_switch >= 1)
    throw ConfigError("switch probability must lie in (0, 1)");
  const GroupElement e = mu0.backend()->identity();
  std::vector<StepMeasure::Atom> atoms;
  for (const auto &[x, p] : mu0.atoms()) {
    if (modulus == 2) {
      atoms.push_back({WreathElement{single_lamp(e, modulus, 1), x}, p_switch * p});
    } else {
      atoms.push_back({WreathElement{single_lamp(e, modulus, 1), x}, p_switch * p / 2});
      atoms.push_back({WreathElement{single_lamp(e, modulus, modulus - 1), x}, p_switch * p / 2});
    }
    atoms.push_back({WreathElement{Configuration(modulus), x}, (1 - p_switch) * p});
  }
  return StepMeasure(mu0.backend(), MeasureKind::kSwitchWalk, modulus, std::move(atoms));
}

StepMeasure make_custom(BackendPtr backend, std::vector<StepMeasure::Atom> atoms, LampState modulus) {
  return StepMeasure(std::move(backend), MeasureKind::kCustom, modulus, std::move(atoms));
}

std::vector<std::uint64_t> default_checkpoints(std::uint64_t horizon) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t v = horizon; v > 0; v /= 2)
    out.push_back(v);
  if (out.empty())
    out.push_back(0);
  std::reverse(out.begin(), out.end());
  return out;
}

TrajectoryRecord simulate(const StepMeasure &measure, const SimulationOptions &options) {
  const GroupBackend &b = measure.group();
  const std::uint64_t n = options.horizon;
  std::vector<std::uint64_t> cps = options.checkpoints.empty() ? default_checkpoints(n) : options.checkpoints;
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  if (!cps.empty() && cps.back() > n)
    throw UsageError("checkpoint " + std::to_string(cps.back()) + " exceeds the horizon " + std::to_string(n));

  TrajectoryRecord rec;
  rec.horizon = n;
  rec.seed = options.seed;
  rec.trial = options.trial;
  const GroupElement e = b.identity();
  WreathElement z{Configuration(measure.modulus()), e};
  std::unordered_set<GroupElement, GroupElementHash> visited{e};
  rec.first_visit_times.push_back(0);
  if (options.retain_path)
    rec.path.push_back(e);

  auto record = [&](std::uint64_t m) {
    CheckpointRow row;
    row.n = m;
    row.distance = b.norm(z.position);
    row.support = z.lamps.support_size();
    row.range = visited.size();
    if (options.tsp != TspStrategy::kNone) {
      const auto supp = z.lamps.support();
      try {
        const TspResult t = solve_tsp(b, supp, z.position, options.tsp, options.dp_cap);
        row.tsp = t.value;
        row.mode = t.mode;
      } catch (const CapExceededError &err) {
        throw CapExceededError("checkpoint n=" + std::to_string(m) + " (trial " + std::to_string(options.trial) +
                               "): " + err.what());
      }
    }
    rec.checkpoints.push_back(row);
    if (options.retain_path)
      rec.checkpoint_states.push_back(z);
  };

  std::size_t next = 0;
  while (next < cps.size() && cps[next] == 0) {
    record(0);
    ++next;
  }
  CounterRng rng(options.seed, options.trial);
  for (std::uint64_t m = 1; m <= n; ++m) {
    const auto &inc = measure.atoms()[measure.sample(rng)].increment;
    for (const auto &[w, s] : inc.lamps.lamps()) {
      GroupElement at = z.position;
      b.multiply_in_place(at, w);
      z.lamps.add(at, s);
    }
    b.multiply_in_place(z.position, inc.position);
    if (visited.insert(z.position).second)
      rec.first_visit_times.push_back(m);
    if (!rec.first_return && z.position == e)
      rec.first_return = m;
    if (options.retain_path)
      rec.path.push_back(z.position);
    while (next < cps.size() && cps[next] == m) {
      record(m);
      ++next;
    }
  }
  rec.final_state = std::move(z);
  return rec;
}

std::vector<SkeletonPoint> hitting_skeleton(const GroupBackend &backend, const std::vector<GroupElement> &path,
                                            Length separation) {
  if (path.empty())
    throw UsageError("the hitting skeleton needs a retained path");
  std::unordered_set<GroupElement, GroupElementHash> covered;
  std::vector<SkeletonPoint> out;
  auto add = [&](std::uint64_t m) {
    out.push_back({m, path[m]});
    for (auto &y : ball(backend, path[m], separation))
      covered.insert(std::move(y));
  };
  add(0);
  for (std::uint64_t m = 1; m < path.size(); ++m)
    if (!covered.contains(path[m]))
      add(m);
  return out;
}

std::vector<SkeletonPoint> hitting_skeleton(const GroupBackend &backend, const TrajectoryRecord &record,
                                            const SigmaTriple &triple) {
  if (record.path.empty())
    throw UsageError("the hitting skeleton needs a retained path (enable retain_path)");
  return hitting_skeleton(backend, record.path, triple.separation());
}

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0)
    return {0, 1};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

void DeltaStats::merge(const DeltaStats &other) {
  indicators.insert(indicators.end(), other.indicators.begin(), other.indicators.end());
  successes += other.successes;
  mean = indicators.empty() ? 0.0 : static_cast<double>(successes) / static_cast<double>(indicators.size());
  ci = wilson_interval(successes, indicators.size(), kZ99);
}

namespace {

bool block_lit(const GroupBackend &b, const Configuration &eta, const GroupElement &h, const SigmaTriple &t) {
  if (!eta.lit(h))
    return false;
  for (const auto &s : t.sigma) {
    GroupElement y = h;
    b.multiply_in_place(y, s);
    if (!eta.lit(y))
      return false;
  }
  return true;
}

} // namespace

DeltaStats delta_statistics(const GroupBackend &backend, const TrajectoryRecord &record, const SigmaTriple &triple) {
  if (record.final_state.lamps.modulus() != 2)
    throw UsageError("delta statistics are defined for lamp modulus 2");
  DeltaStats out;
  for (const auto &h : hitting_skeleton(backend, record, triple)) {
    const bool lit = block_lit(backend, record.final_state.lamps, h.point, triple);
    out.indicators.push_back(lit ? 1 : 0);
    out.successes += lit ? 1 : 0;
  }
  out.mean = out.indicators.empty() ? 0.0
                                    : static_cast<double>(out.successes) / static_cast<double>(out.indicators.size());
  out.ci = wilson_interval(out.successes, out.indicators.size(), kZ99);
  return out;
}

AuditResult audit_support_inequality(const TrajectoryRecord &record) {
  if (record.path.empty())
    throw UsageError("the support audit needs a retained path");
  AuditResult res;
  for (std::size_t i = 0; i < record.checkpoint_states.size(); ++i) {
    const auto &state = record.checkpoint_states[i];
    const std::uint64_t n = record.checkpoints[i].n;
    std::size_t lit = 0;
    for (std::uint64_t s : record.first_visit_times) {
      if (s > n)
        break;
      lit += state.lamps.lit(record.path[s]) ? 1 : 0;
    }
    ++res.checked;
    if (state.lamps.support_size() < lit) {
      if (res.violations++ == 0)
        res.first_violation = "n=" + std::to_string(n) + ": |supp| = " + std::to_string(state.lamps.support_size()) +
                              " < " + std::to_string(lit);
    }
  }
  return res;
}

AuditResult audit_tsp_inequality(const GroupBackend &backend, const TrajectoryRecord &record,
                                 const SigmaTriple &triple) {
  const auto skeleton = hitting_skeleton(backend, record, triple);
  AuditResult res;
  for (std::size_t i = 0; i < record.checkpoint_states.size(); ++i) {
    const auto &row = record.checkpoints[i];
    if (!row.tsp || row.mode == TspMode::kHeuristic)
      continue;
    Length bonus{0};
    for (const auto &h : skeleton) {
      if (h.time > row.n)
        break;
      if (block_lit(backend, record.checkpoint_states[i].lamps, h.point, triple))
        bonus += triple.increment;
    }
    ++res.checked;
    if (*row.tsp < row.distance + bonus) {
      if (res.violations++ == 0)
        res.first_violation = "n=" + std::to_string(row.n) + ": d_TS = " +
                              format_rational(backend.to_rational(*row.tsp)) + " < d(e,X_n) + sum Delta = " +
                              format_rational(backend.to_rational(row.distance + bonus));
    }
  }
  return res;
}

} // namespace lamprate
