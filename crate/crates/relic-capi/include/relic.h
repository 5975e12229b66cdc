#ifndef RELIC_MC_H
#define RELIC_MC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of every fallible call.
 */
typedef enum relic_status {
  RELIC_OK = 0,
  /**
   * Input bytes did not parse as a supported format.
   */
  RELIC_ERR_PARSE = 1,
  /**
   * A null pointer or out-of-range argument was passed.
   */
  RELIC_ERR_ARGUMENT = 2,
  /**
   * The time budget ran out before a verdict.
   */
  RELIC_LIMIT_TIMEOUT = 3,
  /**
   * The memory budget ran out before a verdict.
   */
  RELIC_LIMIT_MEMORY = 4,
  /**
   * An internal invariant failed; the run cannot be trusted.
   */
  RELIC_ERR_INTERNAL = 5,
} relic_status;

/**
 * Opaque proof-attempt result: verdict, statistics, rendered certificates.
 */
typedef struct relic_result relic_result;

/**
 * Opaque transition system handle.
 */
typedef struct relic_system relic_system;

/**
 * Engine options. Zero/negative budgets mean unlimited.
 */
typedef struct relic_options {
  uint64_t seed;
  uint32_t mic_threshold;
  bool use_binary_search;
  bool use_literal_ordering;
  double ordering_decay;
  double timeout_secs;
  uint64_t mem_limit_mb;
} relic_options;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent non-OK status on this thread.
 * Borrowed; valid until the next failing call on the same thread.
 */
const char *relic_last_error(void);

/**
 * Fill `out` with the default engine options.
 *
 * # Safety
 * `out` must be null or point to writable memory for one options struct.
 */
void relic_options_default(struct relic_options *out);

/**
 * Parse `len` bytes of AIGER (`aag`/`aig`) or textual system format into a
 * system handle. On success stores the handle in `out`; free it with
 * `relic_system_free`.
 *
 * # Safety
 * `data` must point to `len` readable bytes and `out` must be a valid
 * pointer.
 */
enum relic_status relic_system_load(const uint8_t *data, uintptr_t len, struct relic_system **out);

/**
 * # Safety
 * `sys` must come from `relic_system_load` and not be freed twice.
 */
void relic_system_free(struct relic_system *sys);

/**
 * # Safety
 * `sys` must be a live handle from `relic_system_load`.
 */
uintptr_t relic_system_latch_count(const struct relic_system *sys);

/**
 * # Safety
 * `sys` must be a live handle from `relic_system_load`.
 */
uintptr_t relic_system_input_count(const struct relic_system *sys);

/**
 * Run the engine on `sys`. `options` may be null for defaults. On a
 * verdict, stores a result handle in `out`; on a budget limit, returns the
 * limit status and stores nothing.
 *
 * # Safety
 * `sys` must be a live handle; `out` must be valid; `options`, when
 * non-null, must point to an initialized options struct.
 */
enum relic_status relic_prove(const struct relic_system *sys,
                              const struct relic_options *options,
                              struct relic_result **out);

/**
 * # Safety
 * `result` must come from `relic_prove` and not be freed twice.
 */
void relic_result_free(struct relic_result *result);

/**
 * 1 when the property was proved invariant, 0 when a counterexample exists.
 *
 * # Safety
 * `result` must be a live handle from `relic_prove`.
 */
bool relic_result_is_safe(const struct relic_result *result);

/**
 * # Safety
 * `result` must be a live handle from `relic_prove`.
 */
uint64_t relic_result_sat_calls(const struct relic_result *result);

/**
 * The frame level the run converged or stopped at.
 *
 * # Safety
 * `result` must be a live handle from `relic_prove`.
 */
uintptr_t relic_result_depth(const struct relic_result *result);

/**
 * # Safety
 * `result` must be a live handle from `relic_prove`.
 */
double relic_result_wall_seconds(const struct relic_result *result);

/**
 * Proof clause count (safe) or trace step count (unsafe).
 *
 * # Safety
 * `result` must be a live handle from `relic_prove`.
 */
uintptr_t relic_result_certificate_size(const struct relic_result *result);

/**
 * The proof certificate text; null on an unsafe verdict. Borrowed from the
 * result handle.
 *
 * # Safety
 * `result` must be a live handle from `relic_prove`.
 */
const char *relic_result_proof(const struct relic_result *result);

/**
 * The counterexample trace text; null on a safe verdict. Borrowed from the
 * result handle.
 *
 * # Safety
 * `result` must be a live handle from `relic_prove`.
 */
const char *relic_result_trace(const struct relic_result *result);

/**
 * The counterexample in AIGER witness format; null on a safe verdict.
 * Borrowed from the result handle.
 *
 * # Safety
 * `result` must be a live handle from `relic_prove`.
 */
const char *relic_result_witness(const struct relic_result *result);

/**
 * Parse and check a proof certificate against `sys`; stores the validity
 * flag in `ok`.
 *
 * # Safety
 * `sys` must be a live handle; `text` must be a NUL-terminated string;
 * `ok` must be valid.
 */
enum relic_status relic_check_proof(const struct relic_system *sys, const char *text, bool *ok);

/**
 * Parse and check a trace certificate against `sys`; stores the validity
 * flag in `ok`.
 *
 * # Safety
 * `sys` must be a live handle; `text` must be a NUL-terminated string;
 * `ok` must be valid.
 */
enum relic_status relic_check_trace(const struct relic_system *sys, const char *text, bool *ok);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RELIC_MC_H */
