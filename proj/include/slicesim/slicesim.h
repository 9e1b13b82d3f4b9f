/* C interface to the slicesim core. Everything lives behind opaque handles;
 * calls return a status code and leave a human-readable message retrievable
 * via slicesim_last_error() (thread local). Strings returned through out
 * parameters are owned by the caller and released with slicesim_string_free.
 */
#ifndef SLICESIM_SLICESIM_H
#define SLICESIM_SLICESIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SLICESIM_API __declspec(dllexport)
#else
#define SLICESIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum slicesim_status {
  SLICESIM_OK = 0,
  SLICESIM_ERR_INVALID_ARGUMENT = 1,
  SLICESIM_ERR_PARSE = 2,
  SLICESIM_ERR_VALIDATION = 3,
  SLICESIM_ERR_IO = 4,
  SLICESIM_ERR_NUMERIC = 5,
  SLICESIM_ERR_INTERNAL = 6
} slicesim_status;

typedef enum slicesim_algorithm {
  SLICESIM_ALG_LEARNING = 0,
  SLICESIM_ALG_BASELINE = 1
} slicesim_algorithm;

typedef struct slicesim_scenario slicesim_scenario;
typedef struct slicesim_result slicesim_result;

SLICESIM_API const char* slicesim_status_name(slicesim_status status);

/* Message describing the most recent failure on this thread; never NULL. */
SLICESIM_API const char* slicesim_last_error(void);

SLICESIM_API void slicesim_string_free(char* text);

/* ---- scenarios ---- */

SLICESIM_API slicesim_status slicesim_scenario_load_file(const char* path,
                                                         slicesim_scenario** out);
SLICESIM_API slicesim_status slicesim_scenario_load_text(const char* text,
                                                         slicesim_scenario** out);
SLICESIM_API void slicesim_scenario_free(slicesim_scenario* scenario);

SLICESIM_API int slicesim_scenario_num_slices(const slicesim_scenario* scenario);
SLICESIM_API int slicesim_scenario_num_nodes(const slicesim_scenario* scenario);
SLICESIM_API int slicesim_scenario_num_kinds(const slicesim_scenario* scenario);
SLICESIM_API int slicesim_scenario_horizon(const slicesim_scenario* scenario);
SLICESIM_API int slicesim_scenario_num_attacks(const slicesim_scenario* scenario);

/* Attack-schedule overrides (used by sweeps). slice = -1 targets every slice
 * on the node; end_slot = -1 keeps the event active until the horizon. */
SLICESIM_API slicesim_status slicesim_scenario_clear_attacks(slicesim_scenario* scenario);
SLICESIM_API slicesim_status slicesim_scenario_add_attack(slicesim_scenario* scenario, int node,
                                                          int slice, int start_slot, int end_slot,
                                                          double attenuation);

/* ---- runs ---- */

typedef struct slicesim_run_options {
  uint64_t seed;
  int algorithm;       /* slicesim_algorithm */
  int exact_gradients; /* nonzero: debug mode with ground-truth gradients */
} slicesim_run_options;

SLICESIM_API slicesim_status slicesim_run(const slicesim_scenario* scenario,
                                          const slicesim_run_options* options,
                                          slicesim_result** out);
SLICESIM_API void slicesim_result_free(slicesim_result* result);

typedef struct slicesim_row {
  int slot;
  double total_utility;
  double primal_residual;
  double dual_residual;
  int admm_iterations;
  int num_flagged_nodes;
  uint64_t allocation_checksum;
} slicesim_row;

SLICESIM_API int slicesim_result_num_rows(const slicesim_result* result);
SLICESIM_API slicesim_status slicesim_result_row(const slicesim_result* result, int index,
                                                 slicesim_row* out);
SLICESIM_API slicesim_status slicesim_result_flagged_nodes(const slicesim_result* result,
                                                           int index, int* buffer,
                                                           int buffer_length, int* out_count);

/* Deployed allocation of the final slot, I*J*K row-major (kind fastest). */
SLICESIM_API slicesim_status slicesim_result_final_allocation(const slicesim_result* result,
                                                              double* buffer,
                                                              size_t buffer_length);

/* 1 when every deployed allocation satisfied both constraint families. */
SLICESIM_API int slicesim_result_all_feasible(const slicesim_result* result);

/* CSV rows for this run (no header); columns match slicesim_run_csv_header. */
SLICESIM_API slicesim_status slicesim_result_csv(const slicesim_result* result, char** out);
SLICESIM_API const char* slicesim_run_csv_header(void);

/* ---- oracle ---- */

/* Exact optimum of the true utility for the scenario's ground truth under
 * the given seed. attacked_regime scales the truth by the attenuation active
 * at the final slot. */
SLICESIM_API slicesim_status slicesim_oracle_value(const slicesim_scenario* scenario,
                                                   uint64_t seed, int attacked_regime,
                                                   double* out_value);

/* ---- sweeps ---- */

/* Runs learning and baseline over every (attacked count, seed) cell and
 * returns the full CSV (attacked_count,seed,algorithm,utility,
 * ratio_vs_baseline). Seeds are 0..num_seeds-1. */
SLICESIM_API slicesim_status slicesim_sweep_csv(const slicesim_scenario* scenario,
                                                const int* attacked_counts, int num_counts,
                                                int num_seeds, char** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif
