#ifndef SHALIKA_H
#define SHALIKA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ShalikaStatus {
  SHALIKA_STATUS_OK = 0,
  SHALIKA_STATUS_NULL_POINTER = 1,
  SHALIKA_STATUS_INVALID_ARGUMENT = 2,
  SHALIKA_STATUS_UNKNOWN_SUITE = 3,
  SHALIKA_STATUS_INVALID_PRIME = 4,
  SHALIKA_STATUS_COMPUTATION = 5,
  SHALIKA_STATUS_PANIC = 6,
} ShalikaStatus;

typedef enum ShalikaZetaKind {
  SHALIKA_ZETA_KIND_IWAHORI = 0,
  SHALIKA_ZETA_KIND_PARAHORIC = 1,
} ShalikaZetaKind;

/**
 * Opaque run configuration.
 */
typedef struct ShalikaConfig ShalikaConfig;

/**
 * Opaque report of a run.
 */
typedef struct ShalikaReport ShalikaReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Last error message on this thread, or NULL. Valid until the next call on the thread.
 */
const char *shalika_last_error(void);

/**
 * # Safety
 * `s` must come from this library or be NULL.
 */
void shalika_string_free(char *s);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum ShalikaStatus shalika_config_default(struct ShalikaConfig **out);

/**
 * Applies a flat TOML layer (same keys as the CLI config file) and validates.
 *
 * # Safety
 * `cfg` must be a live config handle and `toml` a NUL-terminated string.
 */
enum ShalikaStatus shalika_config_apply_toml(struct ShalikaConfig *cfg, const char *toml);

/**
 * # Safety
 * `cfg` must come from `shalika_config_default` or be NULL.
 */
void shalika_config_free(struct ShalikaConfig *cfg);

/**
 * Runs the configured suites. A report with failed cases still returns `Ok`.
 *
 * # Safety
 * `cfg` must be a live config handle and `out` a valid pointer.
 */
enum ShalikaStatus shalika_run(const struct ShalikaConfig *cfg, struct ShalikaReport **out);

/**
 * # Safety
 * `r` must be a live report handle; `passed` and `failed` valid pointers.
 */
enum ShalikaStatus shalika_report_counts(const struct ShalikaReport *r,
                                         size_t *passed,
                                         size_t *failed);

/**
 * The report as JSON; free with `shalika_string_free`.
 *
 * # Safety
 * `r` must be a live report handle and `out` a valid pointer.
 */
enum ShalikaStatus shalika_report_json(const struct ShalikaReport *r, char **out);

/**
 * # Safety
 * `r` must come from `shalika_run` or be NULL.
 */
void shalika_report_free(struct ShalikaReport *r);

/**
 * Counts refinements and spin refinements of a generic parameter of GL(2n).
 *
 * # Safety
 * `total` and `spin` must be valid pointers.
 */
enum ShalikaStatus shalika_census(size_t n, uint64_t p, size_t *total, size_t *spin);

/**
 * Compares the brute-force zeta integral with its closed form at n = 1.
 * `beta = 0` selects the trivial character (parahoric only). The closed form
 * is written to `closed` when it is non-NULL.
 *
 * # Safety
 * `agree` must be valid; `closed` may be NULL.
 */
enum ShalikaStatus shalika_zeta_check(enum ShalikaZetaKind kind,
                                      uint64_t p,
                                      uint32_t beta,
                                      size_t chi_index,
                                      uint32_t shells,
                                      bool *agree,
                                      char **closed);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SHALIKA_H */
