/* Copyright 2026 The lamprate Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef LAMPRATE_LAMPRATE_H
#define LAMPRATE_LAMPRATE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(LAMPRATE_BUILDING_LIBRARY)
#define LR_API __declspec(dllexport)
#else
#define LR_API __declspec(dllimport)
#endif
#else
#define LR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lr_status {
  LR_OK = 0,
  LR_ERR_INVALID_ARGUMENT = 1, /* null pointer, unknown mode name, ... */
  LR_ERR_CONFIG = 2,           /* malformed configuration or instance */
  LR_ERR_CAP_EXCEEDED = 3,     /* a bounded search or exact solver hit its cap */
  LR_ERR_USAGE = 4,            /* operation not defined for these inputs */
  LR_ERR_HYPOTHESIS = 5,       /* a case-analysis hypothesis does not hold */
  LR_ERR_CHECK_FAILED = 6,     /* the run finished but a verification failed */
  LR_ERR_INTERNAL = 7
} lr_status;

/* Opaque handles. */
typedef struct lr_backend lr_backend;
typedef struct lr_result lr_result;

/* level 0 = info, 1 = debug. */
typedef void (*lr_log_fn)(int level, const char *message, void *user);

LR_API const char *lr_status_name(lr_status status);
LR_API const char *lr_version(void);

/* Message of the last failing call on this thread; "" if none. */
LR_API const char *lr_last_error(void);

/* Command-line overrides applied on top of a run configuration. */
typedef struct lr_run_overrides {
  int has_seed;
  uint64_t seed;
  int has_trials;
  uint64_t trials;
  int has_horizon;
  uint64_t horizon;
  int has_jobs;
  uint64_t jobs;
  const char *tsp_mode; /* "auto", "exact", "heuristic", "none"; NULL keeps the config value */
} lr_run_overrides;

LR_API void lr_run_overrides_init(lr_run_overrides *overrides);

/* Backend from its JSON description, e.g. {"kind": "free-group", "lengths": ["1", "1"]}. */
LR_API lr_status lr_backend_create(const char *backend_json, lr_backend **out);
LR_API void lr_backend_destroy(lr_backend *backend);
LR_API lr_status lr_backend_describe(const lr_backend *backend, lr_result **out);
/* Exact d(x, y) as numerator / denominator. */
LR_API lr_status lr_backend_distance(const lr_backend *backend, const char *x, const char *y, int64_t *numerator,
                                     int64_t *denominator);

/* Parses and validates a run configuration. Parts: "config" (normalized). */
LR_API lr_status lr_config_check(const char *config_json, const lr_run_overrides *overrides, lr_result **out);

/* Runs a simulate experiment. Parts: "config", "results", "checkpoints" (one
 * JSON record per line) and "csv". */
LR_API lr_status lr_simulate(const char *config_json, const lr_run_overrides *overrides, lr_log_fn log, void *user,
                             lr_result **out);

/* Roster sweep and printed-table validation. Parts: "report" (JSON), "text".
 * Returns LR_ERR_CHECK_FAILED with a result when some check fails. */
LR_API lr_status lr_verify_lemmas(uint64_t assignments, uint64_t seed, int fault_injection, lr_log_fn log,
                                  void *user, lr_result **out);

/* Solves one instance {"backend", "support", "target"}. Parts: "result"
 * (JSON), "text". With check set, exact results on at most 8 points are
 * compared with brute force; a disagreement returns LR_ERR_CHECK_FAILED. */
LR_API lr_status lr_tsp(const char *instance_json, const char *mode, uint64_t cap, int check, lr_result **out);

/* Parts: "names" (one per line). */
LR_API lr_status lr_preset_names(lr_result **out);
/* Parts: "config" (the embedded text). */
LR_API lr_status lr_preset_get(const char *name, lr_result **out);

/* Borrowed view of a named part, valid until lr_result_destroy. */
LR_API lr_status lr_result_part(const lr_result *result, const char *name, const char **data, size_t *size);
LR_API void lr_result_destroy(lr_result *result);

#ifdef __cplusplus
}
#endif

#endif /* LAMPRATE_LAMPRATE_H */
