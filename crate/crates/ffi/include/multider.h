#ifndef MULTIDER_H
#define MULTIDER_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum MdStatus {
  MD_STATUS_OK = 0,
  MD_STATUS_INVALID_ARGUMENT = 1,
  MD_STATUS_UNKNOWN_SYSTEM = 2,
  MD_STATUS_LIMIT_EXCEEDED = 3,
  MD_STATUS_THEOREM_VIOLATION = 4,
  MD_STATUS_INTERNAL = 5,
  MD_STATUS_PANIC = 6,
} MdStatus;

/**
 * A computed basis `P_m`.
 */
typedef struct MdBasis MdBasis;

/**
 * A catalog system together with its computation cache.
 */
typedef struct MdSystem MdSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after success.
 * The pointer stays valid until the next call on this thread.
 */
const char *md_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *md_version(void);

/**
 * Looks up a catalog system such as "B3" or "I2(5)". Ranks above 5 and
 * `m` above 8 are refused with `LimitExceeded`.
 *
 * # Safety
 * `key` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum MdStatus md_system_new(const char *key, struct MdSystem **out);

/**
 * # Safety
 * `sys` must be null or a handle from `md_system_new` not yet freed.
 */
void md_system_free(struct MdSystem *sys);

/**
 * Rank and Coxeter number.
 *
 * # Safety
 * `sys` must be a live handle; `rank` and `h` valid pointers.
 */
enum MdStatus md_system_info(const struct MdSystem *sys, size_t *rank, uint32_t *h);

/**
 * Copies the exponents into `buf` (capacity `cap`); `len` receives the rank.
 *
 * # Safety
 * `sys` must be a live handle; `buf` must hold `cap` values; `len` valid.
 */
enum MdStatus md_system_exponents(const struct MdSystem *sys,
                                  uint32_t *buf,
                                  size_t cap,
                                  size_t *len);

/**
 * Computes `P_m`. Results for `D^k x` are cached in `sys`.
 *
 * # Safety
 * `sys` must be a live handle and `out` a valid pointer.
 */
enum MdStatus md_basis_new(const struct MdSystem *sys, size_t m, struct MdBasis **out);

/**
 * # Safety
 * `b` must be null or a handle from `md_basis_new` not yet freed.
 */
void md_basis_free(struct MdBasis *b);

/**
 * Degree of column `j` (0-based).
 *
 * # Safety
 * `b` must be a live handle and `out` a valid pointer.
 */
enum MdStatus md_basis_degree(const struct MdBasis *b, size_t j, uint32_t *out);

/**
 * Entry `(i, j)` (0-based) as text, e.g. "-1/3*x1^5 + 5/3*x1^3*x2^2".
 *
 * # Safety
 * `b` must be a live handle; `out` a valid pointer. Free the result with
 * `md_string_free`.
 */
enum MdStatus md_basis_entry(const struct MdBasis *b, size_t i, size_t j, char **out);

/**
 * The whole matrix as JSON: rows of lists of `{coefficient, exponents}`.
 *
 * # Safety
 * `b` must be a live handle; `out` a valid pointer. Free the result with
 * `md_string_free`.
 */
enum MdStatus md_basis_json(const struct MdBasis *b, char **out);

/**
 * Runs checks (comma-separated names, or "all") for `P_m`. `passed` is set
 * to whether every check passed; `report`, if non-null, receives the JSON
 * report. A failing check is not an error.
 *
 * # Safety
 * `sys` must be a live handle; `checks` a NUL-terminated string; `passed`
 * valid; `report` null or valid.
 */
enum MdStatus md_verify(const struct MdSystem *sys,
                        size_t m,
                        const char *checks,
                        bool *passed,
                        char **report);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void md_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MULTIDER_H */
