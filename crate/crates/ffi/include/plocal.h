#ifndef PLOCAL_H
#define PLOCAL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PlocalFormat {
  PLOCAL_FORMAT_JSON = 0,
  PLOCAL_FORMAT_TEXT = 1,
} PlocalFormat;

/**
 * Result of every fallible call.
 */
typedef enum PlocalStatus {
  PLOCAL_STATUS_OK = 0,
  PLOCAL_STATUS_NULL_ARGUMENT = 1,
  PLOCAL_STATUS_INVALID_UTF8 = 2,
  PLOCAL_STATUS_PARSE = 3,
  PLOCAL_STATUS_OUT_OF_RANGE_POINT = 4,
  PLOCAL_STATUS_NOT_PRIME = 5,
  PLOCAL_STATUS_ORDER_BOUND_EXCEEDED = 6,
  PLOCAL_STATUS_BUDGET_EXCEEDED = 7,
  PLOCAL_STATUS_NOT_A_FUNCTOR = 8,
  PLOCAL_STATUS_INVALID = 9,
  PLOCAL_STATUS_INDEX_OUT_OF_RANGE = 10,
  PLOCAL_STATUS_PANIC = 11,
} PlocalStatus;

/**
 * Tri-state outcome of a check, plus "does not apply".
 */
typedef enum PlocalVerdict {
  PLOCAL_VERDICT_PASS = 0,
  PLOCAL_VERDICT_FAIL = 1,
  PLOCAL_VERDICT_NOT_CERTIFIED = 2,
  PLOCAL_VERDICT_NOT_APPLICABLE = 3,
} PlocalVerdict;

/**
 * A finite permutation group.
 */
typedef struct PlocalGroup PlocalGroup;

/**
 * The result of an analysis.
 */
typedef struct PlocalReport PlocalReport;

/**
 * Analysis settings; start from [`plocal_options_default`].
 */
typedef struct PlocalOptions {
  size_t max_degree;
  size_t max_limit_degree;
  size_t cohomology_index_max;
  size_t budget;
  bool skeletal;
  bool timings;
} PlocalOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next call on this thread.
 */
const char *plocal_last_error(void);

/**
 * # Safety
 * `text` must come from this library and not have been freed.
 */
void plocal_string_free(char *text);

struct PlocalOptions plocal_options_default(void);

/**
 * Builds a group from a description such as `"sym:4"` or
 * `"perm:4:(1 2 3 4);(1 3)"`.
 *
 * # Safety
 * `spec` must be a nul-terminated string and `out` writable.
 */
enum PlocalStatus plocal_group_new(const char *spec, struct PlocalGroup **out);

/**
 * # Safety
 * `group` must come from [`plocal_group_new`] and not have been freed.
 */
void plocal_group_free(struct PlocalGroup *group);

/**
 * # Safety
 * `group` must be a live handle and `out` writable.
 */
enum PlocalStatus plocal_group_order(const struct PlocalGroup *group, size_t *out);

/**
 * # Safety
 * `group` must be a live handle and `out` writable.
 */
enum PlocalStatus plocal_group_degree(const struct PlocalGroup *group, size_t *out);

/**
 * Order of a Sylow `prime`-subgroup.
 *
 * # Safety
 * `group` must be a live handle and `out` writable.
 */
enum PlocalStatus plocal_group_sylow_order(const struct PlocalGroup *group,
                                           uint32_t prime,
                                           size_t *out);

/**
 * Normalizes a product of cycles, e.g. `"(1 2)(2 3)"` to `"(1 3 2)"`.
 *
 * # Safety
 * `cycles` must be a nul-terminated string and `out` writable. The result
 * is released with [`plocal_string_free`].
 */
enum PlocalStatus plocal_parse_cycles(const char *cycles, char **out);

/**
 * Runs the full analysis. `options` may be null for the defaults and
 * `checks` null for every check, or a comma-separated list of names.
 * A budget failure inside the run still yields a report, with
 * [`plocal_report_exit_code`] equal to 2.
 *
 * # Safety
 * `group` must be a live handle, `options` null or valid, `checks` null or
 * a nul-terminated string, and `out` writable.
 */
enum PlocalStatus plocal_analyze(const struct PlocalGroup *group,
                                 uint32_t prime,
                                 const struct PlocalOptions *options,
                                 const char *checks,
                                 struct PlocalReport **out);

/**
 * # Safety
 * `report` must come from [`plocal_analyze`] and not have been freed.
 */
void plocal_report_free(struct PlocalReport *report);

/**
 * # Safety
 * `report` must be a live handle and `out` writable.
 */
enum PlocalStatus plocal_report_overall(const struct PlocalReport *report, enum PlocalVerdict *out);

/**
 * 0 for pass or not certified, 1 on a failed check, 2 if the run aborted.
 *
 * # Safety
 * `report` must be a live handle and `out` writable.
 */
enum PlocalStatus plocal_report_exit_code(const struct PlocalReport *report, int32_t *out);

/**
 * # Safety
 * `report` must be a live handle and `out` writable.
 */
enum PlocalStatus plocal_report_verdict_count(const struct PlocalReport *report, size_t *out);

/**
 * Name and outcome of the `index`-th verdict. `name` receives a string to
 * release with [`plocal_string_free`]; it may be null if not wanted.
 *
 * # Safety
 * `report` must be a live handle, `status` writable and `name` null or
 * writable.
 */
enum PlocalStatus plocal_report_verdict(const struct PlocalReport *report,
                                        size_t index,
                                        enum PlocalVerdict *status,
                                        char **name);

/**
 * The report rendered as JSON or text, released with
 * [`plocal_string_free`].
 *
 * # Safety
 * `report` must be a live handle and `out` writable.
 */
enum PlocalStatus plocal_report_render(const struct PlocalReport *report,
                                       enum PlocalFormat format,
                                       char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PLOCAL_H */
