#ifndef ENCLOSE_H
#define ENCLOSE_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum EncloseStatus {
  ENCLOSE_STATUS_OK = 0,
  /**
   * The run stopped early; the result holds the enclosures certified so far.
   */
  ENCLOSE_STATUS_HALTED = 1,
  ENCLOSE_STATUS_NULL_POINTER = 2,
  ENCLOSE_STATUS_INVALID_ARGUMENT = 3,
  ENCLOSE_STATUS_PARSE_ERROR = 4,
  ENCLOSE_STATUS_SOLVE_ERROR = 5,
  ENCLOSE_STATUS_PANIC = 6,
} EncloseStatus;

/**
 * Output format of [`enclose_result_render`].
 */
typedef enum EncloseFormat {
  ENCLOSE_FORMAT_TABLE = 0,
  ENCLOSE_FORMAT_CSV = 1,
} EncloseFormat;

/**
 * A parsed run configuration.
 */
typedef struct EncloseConfig EncloseConfig;

/**
 * The report of a finished or halted run.
 */
typedef struct EncloseResult EncloseResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *enclose_last_error(void);

/**
 * Library version as a static string.
 */
const char *enclose_version(void);

/**
 * Parses a TOML configuration.
 *
 * # Safety
 * `toml` must be a NUL-terminated string and `out` a valid pointer.
 */
enum EncloseStatus enclose_config_from_toml(const char *toml, struct EncloseConfig **out);

/**
 * Loads a bundled preset by name.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum EncloseStatus enclose_config_from_preset(const char *name, struct EncloseConfig **out);

/**
 * # Safety
 * `cfg` must come from this library and not be used afterwards. NULL is
 * ignored.
 */
void enclose_config_free(struct EncloseConfig *cfg);

/**
 * Runs a configuration. On `Ok` and on `Halted` a result is stored in `out`.
 *
 * # Safety
 * `cfg` must be a live configuration and `out` a valid pointer.
 */
enum EncloseStatus enclose_run(const struct EncloseConfig *cfg, struct EncloseResult **out);

/**
 * # Safety
 * `res` must come from this library and not be used afterwards. NULL is
 * ignored.
 */
void enclose_result_free(struct EncloseResult *res);

/**
 * Whether the run stopped before certifying everything.
 *
 * # Safety
 * `res` must be a live result.
 */
bool enclose_result_halted(const struct EncloseResult *res);

/**
 * Number of rows (stages or operators) in the result.
 *
 * # Safety
 * `res` must be a live result or NULL.
 */
uintptr_t enclose_result_rows(const struct EncloseResult *res);

/**
 * Number of entries in row `row`, 0 when out of range.
 *
 * # Safety
 * `res` must be a live result or NULL.
 */
uintptr_t enclose_result_row_len(const struct EncloseResult *res, uintptr_t row);

/**
 * Label of row `row`, owned by the result; NULL when out of range.
 *
 * # Safety
 * `res` must be a live result or NULL.
 */
const char *enclose_result_row_label(const struct EncloseResult *res, uintptr_t row);

/**
 * Enclosure `[lo, hi]` of entry `index` in row `row`.
 *
 * # Safety
 * `res` must be a live result; `lo` and `hi` valid pointers.
 */
enum EncloseStatus enclose_result_entry(const struct EncloseResult *res,
                                        uintptr_t row,
                                        uintptr_t index,
                                        double *lo,
                                        double *hi);

/**
 * Renders the report; the string must be released with
 * [`enclose_string_free`].
 *
 * # Safety
 * `res` must be a live result and `out` a valid pointer.
 */
enum EncloseStatus enclose_result_render(const struct EncloseResult *res,
                                         enum EncloseFormat format,
                                         char **out);

/**
 * # Safety
 * `s` must come from [`enclose_result_render`] and not be used afterwards.
 * NULL is ignored.
 */
void enclose_string_free(char *s);

/**
 * Verified enclosures of the eigenvalues of the symmetric `n × n` matrix
 * stored row-major in `a`, written in increasing order to `lo` and `hi`
 * (each of length `n`).
 *
 * # Safety
 * `a` must point to `n·n` doubles, `lo` and `hi` to `n` writable doubles.
 */
enum EncloseStatus enclose_sym_eig(uintptr_t n, const double *a, double *lo, double *hi);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ENCLOSE_H */
