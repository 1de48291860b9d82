// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#include "lamprate/lamprate.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

enum class LogLevel { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

LogLevel log_level() {
  const char *env = std::getenv("LAMPRATE_LOG");
  if (!env)
    return LogLevel::kWarn;
  const std::string v = env;
  if (v == "error" || v == "0")
    return LogLevel::kError;
  if (v == "info" || v == "2")
    return LogLevel::kInfo;
  if (v == "debug" || v == "3")
    return LogLevel::kDebug;
  return LogLevel::kWarn;
}

void log_callback(int level, const char *message, void *user) {
  const LogLevel threshold = *static_cast<const LogLevel *>(user);
  const bool warning = std::string_view(message).starts_with("warning:");
  const LogLevel needed = warning ? LogLevel::kWarn : (level == 0 ? LogLevel::kInfo : LogLevel::kDebug);
  if (needed <= threshold)
    std::cerr << "[lamprate] " << message << "\n";
}

struct ResultDeleter {
  void operator()(lr_result *r) const { lr_result_destroy(r); }
};
using Result = std::unique_ptr<lr_result, ResultDeleter>;

std::string part(const Result &r, const char *name) {
  const char *data = nullptr;
  std::size_t size = 0;
  if (!r || lr_result_part(r.get(), name, &data, &size) != LR_OK)
    return {};
  return std::string(data, size);
}

int report_error(const std::string &command, lr_status status) {
  std::cerr << "lamprate " << command << ": " << lr_status_name(status) << ": " << lr_last_error() << "\n";
  if (status == LR_ERR_CAP_EXCEEDED)
    std::cerr << "hint: use --tsp-mode heuristic, raise the cap, or shrink the instance\n";
  return status == LR_ERR_CONFIG ? kExitConfig : kExitFailure;
}

std::optional<std::string> read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool write_file(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

struct Overrides {
  std::optional<std::uint64_t> seed, trials, horizon, jobs;
  std::string tsp_mode;
};

struct SimulateArgs {
  std::string config_path, preset, results, checkpoints, csv;
};

std::optional<std::string> load_config_text(const std::string &path, const std::string &preset, int &exit_code) {
  if (!path.empty() && !preset.empty()) {
    std::cerr << "lamprate: --config and --preset are mutually exclusive\n";
    exit_code = kExitConfig;
    return std::nullopt;
  }
  if (!preset.empty()) {
    lr_result *raw = nullptr;
    const lr_status s = lr_preset_get(preset.c_str(), &raw);
    Result r(raw);
    if (s != LR_OK) {
      exit_code = report_error("preset", s);
      return std::nullopt;
    }
    return part(r, "config");
  }
  if (path.empty()) {
    std::cerr << "lamprate: --config PATH or --preset NAME is required\n";
    exit_code = kExitConfig;
    return std::nullopt;
  }
  auto text = read_file(path);
  if (!text) {
    std::cerr << "lamprate: cannot read config file '" << path << "'\n";
    exit_code = kExitConfig;
  }
  return text;
}

void print_summary(const std::string &results) {
  const auto doc = nlohmann::json::parse(results);
  const auto &est = doc.at("estimates");
  auto line = [](const char *label, const nlohmann::json &m) {
    if (m.is_null())
      return;
    std::cout << label << " = " << m.at("mean").get<double>() << "  99% CI [" << m.at("ci99")[0].get<double>()
              << ", " << m.at("ci99")[1].get<double>() << "]\n";
  };
  std::cout << doc.at("name").get<std::string>() << ": " << doc.at("backend").get<std::string>() << ", n = "
            << est.at("horizon") << ", trials = " << est.at("trials") << ", seed = " << est.at("seed") << "\n";
  line("l0", est.at("l0"));
  line("lsupp", est.at("lsupp"));
  line("lts", est.at("lts"));
  line("lts - l0", est.at("acceleration"));
  line("range/n", est.at("range_rate"));
  if (!doc.at("walk_switch_identity").is_null()) {
    const auto &id = doc.at("walk_switch_identity");
    std::cout << "(1 - p_return)/2 = " << id.at("predicted").get<double>()
              << "  discrepancy = " << id.at("discrepancy").get<double>() << "\n";
  }
  std::cout << "d_TS grade: " << est.at("grade").get<std::string>() << "\n";
}

int cmd_simulate(const SimulateArgs &args, const Overrides &o, LogLevel level) {
  int exit_code = 0;
  const auto text = load_config_text(args.config_path, args.preset, exit_code);
  if (!text)
    return exit_code;
  lr_run_overrides ov;
  lr_run_overrides_init(&ov);
  if (o.seed) {
    ov.has_seed = 1;
    ov.seed = *o.seed;
  }
  if (o.trials) {
    ov.has_trials = 1;
    ov.trials = *o.trials;
  }
  if (o.horizon) {
    ov.has_horizon = 1;
    ov.horizon = *o.horizon;
  }
  if (o.jobs) {
    ov.has_jobs = 1;
    ov.jobs = *o.jobs;
  }
  if (!o.tsp_mode.empty())
    ov.tsp_mode = o.tsp_mode.c_str();

  lr_result *raw = nullptr;
  const lr_status s = lr_simulate(text->c_str(), &ov, log_callback, &level, &raw);
  Result r(raw);
  if (s != LR_OK)
    return report_error("simulate", s);

  const auto config = nlohmann::json::parse(part(r, "config"));
  const auto &output = config.at("output");
  auto target = [&](const std::string &flag, const char *key) {
    if (!flag.empty())
      return flag;
    return output.contains(key) ? output.at(key).get<std::string>() : std::string();
  };
  const std::string results_path = target(args.results, "results");
  const std::string checkpoints_path = target(args.checkpoints, "checkpoints");
  const std::string csv_path = target(args.csv, "csv");

  const std::string results = part(r, "results");
  bool ok = true;
  auto save = [&](const std::string &path, const std::string &body) {
    if (path.empty())
      return;
    if (!write_file(path, body)) {
      std::cerr << "lamprate simulate: cannot write '" << path << "'\n";
      ok = false;
    }
  };
  save(results_path, results);
  save(checkpoints_path, part(r, "checkpoints"));
  save(csv_path, part(r, "csv"));
  if (results_path.empty())
    std::cout << results;
  else
    print_summary(results);
  return ok ? 0 : kExitFailure;
}

struct VerifyArgs {
  std::string config_path, report_path;
  std::optional<std::uint64_t> assignments;
  bool inject_fault = false;
};

int cmd_verify(const VerifyArgs &args, std::optional<std::uint64_t> seed_flag, LogLevel level) {
  std::uint64_t assignments = 100, seed = 1;
  bool fault = false;
  if (!args.config_path.empty()) {
    const auto text = read_file(args.config_path);
    if (!text) {
      std::cerr << "lamprate: cannot read config file '" << args.config_path << "'\n";
      return kExitConfig;
    }
    try {
      const auto doc = nlohmann::json::parse(*text);
      if (!doc.is_object())
        throw std::runtime_error("expected an object");
      for (const auto &[key, value] : doc.items()) {
        if (key == "assignments")
          assignments = value.get<std::uint64_t>();
        else if (key == "seed")
          seed = value.get<std::uint64_t>();
        else if (key == "fault_injection")
          fault = value.get<bool>();
        else
          throw std::runtime_error(key + ": unknown field");
      }
    } catch (const std::exception &e) {
      std::cerr << "lamprate verify-lemmas: config error: " << e.what() << "\n";
      return kExitConfig;
    }
  }
  if (args.assignments)
    assignments = *args.assignments;
  if (seed_flag)
    seed = *seed_flag;
  fault = fault || args.inject_fault;

  lr_result *raw = nullptr;
  const lr_status s = lr_verify_lemmas(assignments, seed, fault ? 1 : 0, log_callback, &level, &raw);
  Result r(raw);
  if (!r)
    return report_error("verify-lemmas", s);
  std::cout << part(r, "text");
  if (!args.report_path.empty() && !write_file(args.report_path, part(r, "report"))) {
    std::cerr << "lamprate verify-lemmas: cannot write '" << args.report_path << "'\n";
    return kExitFailure;
  }
  return s == LR_OK ? 0 : kExitFailure;
}

int cmd_tsp(const std::string &path, const std::string &mode, std::uint64_t cap, bool check) {
  if (path.empty()) {
    std::cerr << "lamprate tsp: --config PATH (instance file) is required\n";
    return kExitConfig;
  }
  const auto text = read_file(path);
  if (!text) {
    std::cerr << "lamprate: cannot read instance file '" << path << "'\n";
    return kExitConfig;
  }
  lr_result *raw = nullptr;
  const lr_status s = lr_tsp(text->c_str(), mode.empty() ? "auto" : mode.c_str(), cap, check ? 1 : 0, &raw);
  Result r(raw);
  if (r)
    std::cout << part(r, "text");
  if (s != LR_OK)
    return report_error("tsp", s);
  return 0;
}

int cmd_presets(const std::string &dump) {
  lr_result *raw = nullptr;
  if (!dump.empty()) {
    const lr_status s = lr_preset_get(dump.c_str(), &raw);
    Result r(raw);
    if (s != LR_OK)
      return report_error("presets", s);
    std::cout << part(r, "config");
    return 0;
  }
  const lr_status s = lr_preset_names(&raw);
  Result r(raw);
  if (s != LR_OK)
    return report_error("presets", s);
  std::cout << part(r, "names");
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Lamplighter random walk simulation and verification lab"};
  app.set_version_flag("--version", std::string(lr_version()));
  app.require_subcommand(1);

  Overrides o;
  const auto add_overrides = [&](CLI::App *sub) {
    sub->add_option("--seed", o.seed, "Master seed");
    sub->add_option("--trials", o.trials, "Number of trials");
    sub->add_option("--horizon", o.horizon, "Steps per trial");
    sub->add_option("--jobs", o.jobs, "Worker threads");
    sub->add_option("--tsp-mode", o.tsp_mode, "d_TS solver")
        ->check(CLI::IsMember({"auto", "exact", "heuristic", "none"}));
  };

  SimulateArgs sim;
  auto *simulate = app.add_subcommand("simulate", "Run a simulate experiment");
  simulate->add_option("--config", sim.config_path, "Run configuration (JSON)");
  simulate->add_option("--preset", sim.preset, "Embedded preset name");
  simulate->add_option("--results", sim.results, "Results document path (overrides output.results)");
  simulate->add_option("--checkpoints", sim.checkpoints, "Checkpoint stream path");
  simulate->add_option("--csv", sim.csv, "CSV summary path");
  add_overrides(simulate);

  VerifyArgs ver;
  std::optional<std::uint64_t> verify_seed;
  auto *verify = app.add_subcommand("verify-lemmas", "Check the sigma-triple lemmas on the roster");
  verify->add_option("--config", ver.config_path, "Options file {assignments, seed, fault_injection}");
  verify->add_option("--seed", verify_seed, "Seed for the random length assignments");
  verify->add_option("--assignments", ver.assignments, "Random length assignments per case");
  verify->add_flag("--inject-fault", ver.inject_fault, "Mutate the printed bounds (self-test)");
  verify->add_option("--report", ver.report_path, "Write the JSON report here");

  std::string tsp_path, tsp_mode;
  std::uint64_t tsp_cap = 18;
  bool tsp_check = false;
  auto *tsp = app.add_subcommand("tsp", "Solve one d_TS instance");
  tsp->add_option("--config", tsp_path, "Instance file {backend, support, target}");
  tsp->add_option("--tsp-mode", tsp_mode, "d_TS solver")->check(CLI::IsMember({"auto", "exact", "heuristic"}));
  tsp->add_option("--cap", tsp_cap, "Exact solver point cap");
  tsp->add_flag("--check", tsp_check, "Cross-check exact results against brute force (|supp| <= 8)");

  std::string dump;
  auto *presets = app.add_subcommand("presets", "List or dump the embedded presets");
  presets->add_option("--dump", dump, "Print the named preset");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  const LogLevel level = log_level();
  try {
    if (simulate->parsed())
      return cmd_simulate(sim, o, level);
    if (verify->parsed())
      return cmd_verify(ver, verify_seed, level);
    if (tsp->parsed())
      return cmd_tsp(tsp_path, tsp_mode, tsp_cap, tsp_check);
    if (presets->parsed())
      return cmd_presets(dump);
  } catch (const std::exception &e) {
    std::cerr << "lamprate: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
