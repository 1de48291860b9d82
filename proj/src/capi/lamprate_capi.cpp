// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#include "lamprate/lamprate.h"

#include "core/config.hpp"
#include "core/errors.hpp"
#include "core/experiments.hpp"
#include "core/presets.hpp"

#include <json.hpp>

#include <map>
#include <new>
#include <string>

struct lr_backend {
  lamprate::BackendPtr backend;
};

struct lr_result {
  std::map<std::string, std::string> parts;
};

namespace {

thread_local std::string g_last_error;

lr_status fail(lr_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

/// Runs fn, translating exceptions into status codes.
template <class Fn> lr_status guarded(Fn &&fn) {
  g_last_error.clear();
  try {
    return fn();
  } catch (const lamprate::ConfigError &e) {
    return fail(LR_ERR_CONFIG, e.what());
  } catch (const nlohmann::json::exception &e) {
    return fail(LR_ERR_CONFIG, e.what());
  } catch (const lamprate::CapExceededError &e) {
    return fail(LR_ERR_CAP_EXCEEDED, e.what());
  } catch (const lamprate::UsageError &e) {
    return fail(LR_ERR_USAGE, e.what());
  } catch (const lamprate::HypothesisError &e) {
    return fail(LR_ERR_HYPOTHESIS, e.what());
  } catch (const std::bad_alloc &) {
    return fail(LR_ERR_INTERNAL, "out of memory");
  } catch (const std::exception &e) {
    return fail(LR_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(LR_ERR_INTERNAL, "unknown exception");
  }
}

lamprate::LogFn wrap_log(lr_log_fn log, void *user) {
  if (!log)
    return {};
  return [log, user](int level, const std::string &message) { log(level, message.c_str(), user); };
}

lamprate::RunConfig load_config(const char *config_json, const lr_run_overrides *o) {
  lamprate::RunConfig config = lamprate::parse_run_config(lamprate::parse_json_text(config_json));
  if (!o)
    return config;
  if (o->has_seed)
    config.seed = o->seed;
  if (o->has_trials)
    config.trials = static_cast<std::size_t>(o->trials);
  if (o->has_horizon) {
    config.horizon = o->horizon;
    std::erase_if(config.checkpoints, [&](std::uint64_t t) { return t > config.horizon; });
  }
  if (o->has_jobs) {
    if (o->jobs == 0)
      throw lamprate::UsageError("--jobs must be positive");
    config.jobs = static_cast<std::size_t>(o->jobs);
  }
  if (o->tsp_mode)
    config.tsp = lamprate::parse_tsp_strategy(o->tsp_mode);
  return config;
}

lr_result *make_result() { return new lr_result; }

} // namespace

extern "C" {

const char *lr_status_name(lr_status status) {
  switch (status) {
  case LR_OK: return "ok";
  case LR_ERR_INVALID_ARGUMENT: return "invalid argument";
  case LR_ERR_CONFIG: return "config error";
  case LR_ERR_CAP_EXCEEDED: return "cap exceeded";
  case LR_ERR_USAGE: return "usage error";
  case LR_ERR_HYPOTHESIS: return "hypothesis violated";
  case LR_ERR_CHECK_FAILED: return "check failed";
  case LR_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char *lr_version(void) { return "0.1.0"; }

const char *lr_last_error(void) { return g_last_error.c_str(); }

void lr_run_overrides_init(lr_run_overrides *overrides) {
  if (overrides)
    *overrides = lr_run_overrides{};
}

lr_status lr_backend_create(const char *backend_json, lr_backend **out) {
  if (!backend_json || !out)
    return fail(LR_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto spec = lamprate::parse_backend_spec(lamprate::parse_json_text(backend_json));
    *out = new lr_backend{lamprate::build_backend(spec)};
    return LR_OK;
  });
}

void lr_backend_destroy(lr_backend *backend) { delete backend; }

lr_status lr_backend_describe(const lr_backend *backend, lr_result **out) {
  if (!backend || !out)
    return fail(LR_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    lr_result *r = make_result();
    r->parts["describe"] = backend->backend->describe();
    *out = r;
    return LR_OK;
  });
}

lr_status lr_backend_distance(const lr_backend *backend, const char *x, const char *y, int64_t *numerator,
                              int64_t *denominator) {
  if (!backend || !x || !y || !numerator || !denominator)
    return fail(LR_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto &b = *backend->backend;
    const lamprate::Rational d = b.to_rational(b.distance(b.parse(x), b.parse(y)));
    *numerator = d.numerator();
    *denominator = d.denominator();
    return LR_OK;
  });
}

lr_status lr_config_check(const char *config_json, const lr_run_overrides *overrides, lr_result **out) {
  if (!config_json || !out)
    return fail(LR_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const lamprate::RunConfig config = load_config(config_json, overrides);
    lamprate::build_measure(config, lamprate::build_backend(config.backend));
    lr_result *r = make_result();
    r->parts["config"] = lamprate::to_json(config).dump(2);
    *out = r;
    return LR_OK;
  });
}

lr_status lr_simulate(const char *config_json, const lr_run_overrides *overrides, lr_log_fn log, void *user,
                      lr_result **out) {
  if (!config_json || !out)
    return fail(LR_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  lamprate::RunConfig config;
  if (lr_status s = guarded([&] {
        config = load_config(config_json, overrides);
        return LR_OK;
      });
      s != LR_OK)
    return s;
  return guarded([&] {
    const lamprate::SimulationRun run = lamprate::run_simulation(config, wrap_log(log, user));
    lr_result *r = make_result();
    r->parts["config"] = lamprate::to_json(config).dump(2);
    r->parts["results"] = run.results.dump(2) + "\n";
    std::string lines;
    for (const auto &line : run.checkpoint_lines)
      lines += line + "\n";
    r->parts["checkpoints"] = std::move(lines);
    r->parts["csv"] = run.csv;
    *out = r;
    return LR_OK;
  });
}

lr_status lr_verify_lemmas(uint64_t assignments, uint64_t seed, int fault_injection, lr_log_fn log, void *user,
                           lr_result **out) {
  if (!out)
    return fail(LR_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    lamprate::VerifyOptions options;
    options.assignments = static_cast<std::size_t>(assignments);
    options.seed = seed;
    options.fault_injection = fault_injection != 0;
    const lamprate::VerifyRun run = lamprate::run_verify_lemmas(options, wrap_log(log, user));
    lr_result *r = make_result();
    r->parts["report"] = run.report.dump(2) + "\n";
    r->parts["text"] = run.text;
    *out = r;
    if (!run.passed)
      return fail(LR_ERR_CHECK_FAILED, "verify-lemmas: at least one check failed");
    return LR_OK;
  });
}

lr_status lr_tsp(const char *instance_json, const char *mode, uint64_t cap, int check, lr_result **out) {
  if (!instance_json || !out)
    return fail(LR_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  lamprate::TspStrategy strategy = lamprate::TspStrategy::kAuto;
  if (mode) {
    if (lr_status s = guarded([&] {
          strategy = lamprate::parse_tsp_strategy(mode);
          return LR_OK;
        });
        s != LR_OK)
      return fail(LR_ERR_INVALID_ARGUMENT, lr_last_error());
  }
  if (cap == 0 || cap > 24)
    return fail(LR_ERR_INVALID_ARGUMENT, "tsp cap must lie in [1, 24]");
  return guarded([&] {
    const lamprate::TspRun run =
        lamprate::run_tsp_instance(lamprate::parse_json_text(instance_json), strategy, cap, check != 0);
    lr_result *r = make_result();
    r->parts["result"] = run.report.dump(2) + "\n";
    r->parts["text"] = run.text;
    *out = r;
    if (run.oracle_agrees && !*run.oracle_agrees)
      return fail(LR_ERR_CHECK_FAILED, "exact tour disagrees with the brute-force oracle");
    return LR_OK;
  });
}

lr_status lr_preset_names(lr_result **out) {
  if (!out)
    return fail(LR_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    std::string names;
    for (const auto &n : lamprate::preset_names())
      names += n + "\n";
    lr_result *r = make_result();
    r->parts["names"] = std::move(names);
    *out = r;
    return LR_OK;
  });
}

lr_status lr_preset_get(const char *name, lr_result **out) {
  if (!name || !out)
    return fail(LR_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    std::string text(lamprate::preset_text(name));
    lr_result *r = make_result();
    r->parts["config"] = text + "\n";
    *out = r;
    return LR_OK;
  });
}

lr_status lr_result_part(const lr_result *result, const char *name, const char **data, size_t *size) {
  if (!result || !name || !data)
    return fail(LR_ERR_INVALID_ARGUMENT, "null argument");
  auto it = result->parts.find(name);
  if (it == result->parts.end())
    return fail(LR_ERR_INVALID_ARGUMENT, std::string("no result part named '") + name + "'");
  *data = it->second.c_str();
  if (size)
    *size = it->second.size();
  return LR_OK;
}

void lr_result_destroy(lr_result *result) { delete result; }

} // extern "C"
