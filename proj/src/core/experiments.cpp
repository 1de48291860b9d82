// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/experiments.hpp"

#include "core/case_analysis.hpp"
#include "core/errors.hpp"
#include "core/report.hpp"

#include <algorithm>
#include <sstream>

namespace lamprate {

using nlohmann::json;

namespace {

void emit(const LogFn &log, int level, const std::string &message) {
  if (log)
    log(level, message);
}

} // namespace

SimulationRun run_simulation(const RunConfig &config, const LogFn &log) {
  const BackendPtr backend = build_backend(config.backend);
  const StepMeasure measure = build_measure(config, backend);
  const GroupBackend &b = *backend;
  for (const auto &w : measure.warnings())
    emit(log, 0, "warning: " + w);

  RateOptions options;
  options.horizon = config.horizon;
  options.trials = config.trials;
  options.seed = config.seed;
  options.lamp_cost = config.lamp_cost;
  options.tsp = config.tsp;
  options.dp_cap = config.dp_cap;
  options.jobs = config.jobs;
  options.checkpoints = config.checkpoints;

  emit(log, 0,
       "simulating " + std::to_string(config.trials) + " trials of " + std::to_string(config.horizon) + " steps on " +
           b.describe());
  SimulationRun run;
  std::vector<TrajectoryRecord> records;
  run.rates = estimate_rates(measure, options, &records);

  for (const auto &rec : records)
    for (const auto &row : rec.checkpoints)
      run.checkpoint_lines.push_back(checkpoint_record(b, rec, row).dump());

  std::optional<double> p_return;
  if (measure.kind() == MeasureKind::kWalkSwitch && measure.modulus() == 2) {
    const std::size_t pt = config.projection_trials ? config.projection_trials : std::max<std::size_t>(config.trials, 2000);
    emit(log, 0, "projection-only return run: " + std::to_string(pt) + " trials");
    run.identity = walk_switch_identity_check(measure, run.rates, pt, config.seed ^ 0x5bd1e9955bd1e995ULL, config.jobs);
    p_return = run.identity->p_return.probability.p;
  }
  run.range = range_law(records, p_return);

  json selection;
  try {
    const SelectionOutcome outcome = select_sigmas(backend);
    selection = {{"kind", std::string(to_string(outcome.kind))}, {"note", outcome.note}};
    if (outcome.triple) {
      selection["case"] = std::string(to_string(outcome.triple->tag));
      json sigma = json::array();
      for (const auto &s : outcome.triple->sigma)
        sigma.push_back(outcome.backend->format(s));
      selection["sigma"] = std::move(sigma);
      selection["increment"] = format_rational(outcome.backend->to_rational(outcome.triple->increment));
    }
  } catch (const Error &e) {
    selection = {{"kind", "not-applicable"}, {"note", e.what()}};
  }

  json measure_doc{{"type", std::string(to_string(measure.kind()))},
                   {"atoms", measure.atoms().size()},
                   {"lamp_modulus", measure.modulus()},
                   {"radius", format_rational(b.to_rational(measure.radius()))},
                   {"warnings", measure.warnings()}};
  run.results = {{"name", config.name},
                 {"config", to_json(config)},
                 {"backend", b.describe()},
                 {"measure", std::move(measure_doc)},
                 {"estimates", to_json(run.rates)},
                 {"walk_switch_identity", run.identity ? to_json(*run.identity) : json()},
                 {"range_law", to_json(run.range)},
                 {"sigma_selection", std::move(selection)}};
  run.csv = csv_header() + "\n" + csv_row(config.name, run.rates, run.identity ? &*run.identity : nullptr) + "\n";
  return run;
}

namespace {

struct RosterEntry {
  std::string name;
  BackendPtr backend;
};

GeneratorInput gen(std::string action, Rational length) { return {std::move(action), length, {}}; }

std::vector<RosterEntry> roster() {
  const Rational one(1);
  std::vector<RosterEntry> out;
  out.push_back({"F2 unit lengths", make_free_group({one, one})});
  out.push_back({"F3 lengths (1,2,3)", make_free_group({one, Rational(2), Rational(3)})});
  out.push_back({"Z^2 unit lengths", make_lattice(2, {}, {gen("(1,0)", one), gen("(0,1)", one)})});
  out.push_back({"Z^3 lengths (1,3/2,2)",
                 make_lattice(3, {}, {gen("(1,0,0)", one), gen("(0,1,0)", Rational(3, 2)), gen("(0,0,1)", Rational(2))})});
  out.push_back({"Z2*Z2*Z2 unit lengths", make_free_product_c2({one, one, one})});
  out.push_back({"Z x Z/2 x Z/2", make_lattice(1, {2, 2}, {gen("(0,1,0)", one), gen("(0,0,1)", one), gen("(1,0,0)", one)})});
  out.push_back({"Z^3 x Z/4", make_lattice(3, {4},
                                           {gen("(0,0,0,2)", one), gen("(0,0,0,1)", Rational(2)),
                                            gen("(1,0,0,0)", Rational(2)), gen("(0,1,0,0)", Rational(2)),
                                            gen("(0,0,1,0)", Rational(2))})});
  out.push_back({"Z with S={+-1,+-2}, l=(1,3/2)", make_lattice(1, {}, {gen("1", one), gen("2", Rational(3, 2))})});
  out.push_back({"Z with S={+-1,+-2}, l=(1,1/2)", make_lattice(1, {}, {gen("1", one), gen("2", Rational(1, 2))})});
  out.push_back({"Z with S={+-1,+-2,+-3}, l=(1,3,5)",
                 make_lattice(1, {}, {gen("1", one), gen("2", Rational(3)), gen("3", Rational(5))})});
  out.push_back({"Z2*Z2 unit lengths", make_free_product_c2({one, one})});
  out.push_back({"Z with S={+-2,+-3}, l=(1,1)", make_lattice(1, {}, {gen("2", one), gen("3", one)})});
  return out;
}

std::string phi_text(const std::array<int, 4> &phi, const std::array<std::string, 4> &labels) {
  std::string out;
  for (std::size_t i = 0; i < 4; ++i) {
    if (i)
      out += " -> ";
    out += labels[static_cast<std::size_t>(phi[i])];
  }
  return out;
}

json item_json(const CheckItem &item) {
  return {{"name", item.name},
          {"lhs", format_rational(item.lhs)},
          {"relation", std::string(to_string(item.relation))},
          {"rhs", format_rational(item.rhs)},
          {"slack", format_rational(item.slack)},
          {"holds", item.holds}};
}

const char *verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

json violations_json(const std::vector<TableViolation> &violations) {
  json out = json::array();
  for (const auto &v : violations)
    out.push_back({{"realization", v.realization}, {"row", v.row}, {"column", v.column}, {"detail", v.detail}});
  return out;
}

void violations_text(std::ostream &os, const std::vector<TableViolation> &violations) {
  constexpr std::size_t kShown = 10;
  for (std::size_t i = 0; i < std::min(kShown, violations.size()); ++i) {
    const auto &v = violations[i];
    os << "    counterexample: " << v.realization;
    if (v.row)
      os << ", row " << v.row;
    os << ", " << v.column << ": " << v.detail << "\n";
  }
  if (violations.size() > kShown)
    os << "    ... " << violations.size() - kShown << " more\n";
}

bool roster_section(const RosterEntry &entry, const VerifyOptions &options, json &section, std::ostream &os) {
  const SelectionOutcome outcome = select_sigmas(entry.backend);
  section = {{"name", entry.name},
             {"backend", entry.backend->describe()},
             {"selection", std::string(to_string(outcome.kind))},
             {"note", outcome.note}};
  os << "== " << entry.name << " (" << entry.backend->describe() << ")\n";
  if (outcome.kind == SelectionKind::kDegenerateLinear) {
    section["degenerate"] = true;
    os << "  degenerate: linear metric, no acceleration expected. " << outcome.note << "\n";
    section["passed"] = true;
    return true;
  }
  if (outcome.kind != SelectionKind::kTriple) {
    os << "  " << to_string(outcome.kind) << ": " << outcome.note << "\n";
    section["passed"] = true;
    return true;
  }
  const SigmaTriple &t = *outcome.triple;
  const GroupBackend &b = *outcome.backend;
  const auto labels = t.labels();
  json sigma = json::array();
  for (const auto &s : t.sigma)
    sigma.push_back(b.format(s));
  section["case"] = std::string(to_string(t.tag));
  section["sigma"] = sigma;
  section["increment"] = format_rational(b.to_rational(t.increment));
  if (t.epsilon0)
    section["epsilon0"] = format_rational(b.to_rational(*t.epsilon0));
  os << "  case " << to_string(t.tag) << ": sigma = (" << sigma[0].get<std::string>() << ", "
     << sigma[1].get<std::string>() << ", " << sigma[2].get<std::string>() << "), increment "
     << format_rational(b.to_rational(t.increment));
  if (t.epsilon0)
    os << ", eps0 " << format_rational(b.to_rational(*t.epsilon0));
  os << "\n";

  const CheckReport bounds = verify_distance_bounds(t, b);
  json items = json::array();
  os << "  distance bounds: " << verdict(bounds.passed()) << "\n";
  for (const auto &item : bounds.items) {
    items.push_back(item_json(item));
    os << "    [" << verdict(item.holds) << "] " << item.name << ": " << format_rational(item.lhs) << " "
       << to_string(item.relation) << " " << format_rational(item.rhs) << " (slack " << format_rational(item.slack)
       << ")\n";
  }
  section["bounds"] = {{"passed", bounds.passed()}, {"items", std::move(items)}};

  const PhiReport phi = verify_phi_inequality(t, b);
  json rows = json::array();
  os << "  tour inequality over " << phi.rows.size() << " injections: " << verdict(phi.passed()) << " (min slack "
     << format_rational(phi.min_slack) << ")\n";
  for (const auto &row : phi.rows) {
    rows.push_back({{"phi", phi_text(row.phi, labels)},
                    {"direct", format_rational(row.direct)},
                    {"legs", format_rational(row.legs)},
                    {"slack", format_rational(row.slack)}});
    os << "    " << phi_text(row.phi, labels) << ": legs " << format_rational(row.legs) << ", direct "
       << format_rational(row.direct) << ", slack " << format_rational(row.slack) << "\n";
  }
  section["phi"] = {{"passed", phi.passed()},
                    {"increment", format_rational(phi.increment)},
                    {"min_slack", format_rational(phi.min_slack)},
                    {"rows", std::move(rows)}};

  TableReport table;
  table.table = t.tag;
  check_table_rows(t, b, entry.name, table, options.fault_injection ? 3 : 1);
  const bool table_ok = table.violations.empty();
  os << "  printed rows: " << table.rows_checked << " checked, " << verdict(table_ok) << "\n";
  violations_text(os, table.violations);
  section["table"] = {{"passed", table_ok}, {"rows_checked", table.rows_checked},
                      {"violations", violations_json(table.violations)}};

  const bool ok = bounds.passed() && phi.passed() && table_ok;
  section["passed"] = ok;
  return ok;
}

bool hypothesis_section(json &section, std::ostream &os) {
  // l(2) = 2 = 2 l(1) violates the Z hypothesis; eps0 must be refused.
  const BackendPtr b = make_lattice(1, {}, {gen("1", Rational(1)), gen("2", Rational(2))});
  os << "== hypothesis check: Z with S={+-1,+-2}, l=(1,2)\n";
  section = {{"name", "hypothesis check: Z with S={+-1,+-2}, l=(1,2)"}};
  try {
    const Length eps = compute_epsilon0(*b, SigmaCase::kZII, 2);
    os << "  eps0 = " << format_rational(b->to_rational(eps)) << " accepted: FAIL\n";
    section["error"] = nullptr;
    section["passed"] = false;
    return false;
  } catch (const HypothesisError &e) {
    os << "  hypothesis violation reported: " << e.what() << " PASS\n";
    section["error"] = e.what();
    section["passed"] = true;
    return true;
  }
}

} // namespace

VerifyRun run_verify_lemmas(const VerifyOptions &options, const LogFn &log) {
  VerifyRun run;
  std::ostringstream os;
  json sections = json::array();
  for (const auto &entry : roster()) {
    emit(log, 1, "roster: " + entry.name);
    json section;
    run.passed = roster_section(entry, options, section, os) && run.passed;
    sections.push_back(std::move(section));
  }
  {
    json section;
    run.passed = hypothesis_section(section, os) && run.passed;
    sections.push_back(std::move(section));
  }

  json tables = json::array();
  TableOptions topts;
  topts.assignments = options.assignments;
  topts.seed = options.seed;
  topts.mutate_factor = options.fault_injection ? 3 : 1;
  for (SigmaCase c : {SigmaCase::kI, SigmaCase::kII, SigmaCase::kIII, SigmaCase::kZI, SigmaCase::kZII}) {
    emit(log, 1, "tables: case " + std::string(to_string(c)));
    const TableReport rep = validate_tables(c, topts);
    std::string names;
    for (const auto &n : rep.realizations)
      names += (names.empty() ? "" : ", ") + n;
    os << "== table " << to_string(c) << ": " << rep.assignments << " assignments on " << names << "\n"
       << "  printed rows " << rep.rows_checked << ", injections " << rep.phi_checked << ", bounds "
       << rep.bounds_checked << ", symbolic " << verdict(rep.symbolic_ok) << ", coverage "
       << verdict(rep.covers_all_injections) << ": " << verdict(rep.passed()) << "\n";
    violations_text(os, rep.violations);
    tables.push_back({{"case", std::string(to_string(c))},
                      {"realizations", rep.realizations},
                      {"assignments", rep.assignments},
                      {"rows_checked", rep.rows_checked},
                      {"phi_checked", rep.phi_checked},
                      {"bounds_checked", rep.bounds_checked},
                      {"symbolic_ok", rep.symbolic_ok},
                      {"covers_all_injections", rep.covers_all_injections},
                      {"violations", violations_json(rep.violations)},
                      {"passed", rep.passed()}});
    run.passed = rep.passed() && run.passed;
  }
  os << "verify-lemmas: " << verdict(run.passed) << "\n";
  run.report = {{"passed", run.passed},
                {"fault_injection", options.fault_injection},
                {"assignments", options.assignments},
                {"seed", options.seed},
                {"roster", std::move(sections)},
                {"tables", std::move(tables)}};
  run.text = os.str();
  return run;
}

TspRun run_tsp_instance(const json &instance, TspStrategy strategy, std::size_t cap, bool check) {
  if (!instance.is_object())
    throw ConfigError("tsp instance: expected an object");
  for (const auto &[key, _] : instance.items())
    if (key != "backend" && key != "support" && key != "target")
      throw ConfigError("tsp instance: " + key + ": unknown field");
  if (!instance.contains("backend"))
    throw ConfigError("tsp instance: backend: missing required field");
  const BackendPtr backend = build_backend(parse_backend_spec(instance.at("backend")));
  const GroupBackend &b = *backend;
  auto element = [&](const json &v, const std::string &where) {
    if (!v.is_string())
      throw ConfigError("tsp instance: " + where + ": expected a string");
    try {
      return b.parse(v.get<std::string>());
    } catch (const Error &e) {
      throw ConfigError("tsp instance: " + where + ": " + e.what());
    }
  };
  std::vector<GroupElement> supp;
  if (instance.contains("support")) {
    const json &arr = instance.at("support");
    if (!arr.is_array())
      throw ConfigError("tsp instance: support: expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i)
      supp.push_back(element(arr[i], "support[" + std::to_string(i) + "]"));
  }
  std::sort(supp.begin(), supp.end());
  supp.erase(std::unique(supp.begin(), supp.end()), supp.end());
  const GroupElement target = instance.contains("target") ? element(instance.at("target"), "target") : b.identity();
  if (strategy == TspStrategy::kNone)
    throw UsageError("tsp mode 'none' computes nothing");

  TspRun run;
  run.result = solve_tsp(b, supp, target, strategy, cap);
  json order = json::array();
  std::string order_text;
  for (const auto &x : run.result.order) {
    order.push_back(b.format(x));
    order_text += (order_text.empty() ? "" : " ") + b.format(x);
  }
  const std::string value = format_rational(b.to_rational(run.result.value));
  std::ostringstream os;
  os << "value: " << value << "\n"
     << "order: e " << order_text << (order_text.empty() ? "" : " ") << "-> " << b.format(target) << "\n"
     << "mode: " << to_string(run.result.mode) << "\n";
  run.report = {{"backend", b.describe()},
                {"value", value},
                {"order", std::move(order)},
                {"target", b.format(target)},
                {"mode", std::string(to_string(run.result.mode))}};
  if (check) {
    if (supp.size() > 8) {
      os << "oracle check skipped: |supp| = " << supp.size() << " > 8\n";
    } else if (!run.result.exact()) {
      os << "oracle check skipped: heuristic result\n";
    } else {
      const Length oracle = tsp_bruteforce_oracle(b, supp, target);
      run.oracle_agrees = oracle == run.result.value;
      const std::string ov = format_rational(b.to_rational(oracle));
      if (*run.oracle_agrees)
        os << "oracle agreement: brute force " << ov << " = " << value << "\n";
      else
        os << "oracle disagreement: brute force " << ov << " != " << value << "\n";
      run.report["oracle"] = {{"value", ov}, {"agrees", *run.oracle_agrees}};
    }
  }
  run.text = os.str();
  return run;
}

} // namespace lamprate
