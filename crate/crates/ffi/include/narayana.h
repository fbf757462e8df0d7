#ifndef NARAYANA_H
#define NARAYANA_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NarayanaStatus {
  NARAYANA_STATUS_OK = 0,
  NARAYANA_STATUS_INVALID_ARGUMENT = 1,
  NARAYANA_STATUS_PRECONDITION = 2,
  NARAYANA_STATUS_FALSIFIED_STEP = 3,
  NARAYANA_STATUS_NULL_POINTER = 4,
  NARAYANA_STATUS_OUT_OF_RANGE = 5,
  NARAYANA_STATUS_PANIC = 6,
} NarayanaStatus;

typedef enum NarayanaRule {
  NARAYANA_RULE_CATALAN_RAMANUJAN = 0,
  NARAYANA_RULE_PROP_A_PRIME = 1,
  NARAYANA_RULE_PROP_A_PRIME_SQUARE = 2,
  NARAYANA_RULE_THM1 = 3,
  NARAYANA_RULE_THM2 = 4,
  NARAYANA_RULE_EXPONENT_GCD = 5,
} NarayanaRule;

typedef struct NarayanaCertificates NarayanaCertificates;

typedef struct NarayanaPellSolutions NarayanaPellSolutions;

typedef struct NarayanaSquareHits NarayanaSquareHits;

/**
 * A certificate; `b` is 0 for Catalan certificates, where `a` holds `n`.
 */
typedef struct NarayanaCertificate {
  enum NarayanaRule rule;
  uint64_t a;
  uint64_t b;
  uint64_t p;
  uint64_t valuation;
  uint32_t k_bound;
} NarayanaCertificate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copy of the last error message on this thread, or null if there is none.
 * Release it with [`narayana_string_free`].
 */
char *narayana_last_error_message(void);

/**
 * # Safety
 *
 * `s` must be null or a string returned by this library, not yet freed.
 */
void narayana_string_free(char *s);

/**
 * `N(a, b)` in decimal.
 *
 * # Safety
 *
 * `out` must be valid for writes.
 */
enum NarayanaStatus narayana_value_decimal(uint64_t a, uint64_t b, char **out);

/**
 * Whether `N(a, b)` is a perfect square, for `a >= b >= 1`.
 *
 * # Safety
 *
 * `out` must be valid for writes.
 */
enum NarayanaStatus narayana_is_square_pair(uint64_t a, uint64_t b, bool *out);

/**
 * Whether `C_n` is not a perfect power, for `n >= 1`.
 *
 * # Safety
 *
 * `out` must be valid for writes.
 */
enum NarayanaStatus narayana_catalan_not_power(uint64_t n, bool *out);

/**
 * All `a <= a_limit` with `N(a, b)` a square.
 *
 * # Safety
 *
 * `out` must be valid for writes.
 */
enum NarayanaStatus narayana_squares_for_b(uint64_t b,
                                           uint64_t a_limit,
                                           struct NarayanaSquareHits **out);

/**
 * # Safety
 *
 * `hits` must be a live handle.
 */
size_t narayana_square_hits_len(const struct NarayanaSquareHits *hits);

/**
 * The `index`-th hit: its `a` and the decimal square root of `N(a, b)`.
 *
 * # Safety
 *
 * `hits` must be a live handle and the out pointers valid for writes.
 */
enum NarayanaStatus narayana_square_hits_get(const struct NarayanaSquareHits *hits,
                                             size_t index,
                                             uint64_t *out_a,
                                             char **out_root);

/**
 * # Safety
 *
 * `hits` must be null or a live handle; it is invalid afterwards.
 */
void narayana_square_hits_free(struct NarayanaSquareHits *hits);

/**
 * Solutions of `n² − d·m² = z²` with `m > 0` even and `n <= n_limit`.
 *
 * # Safety
 *
 * `out` must be valid for writes.
 */
enum NarayanaStatus narayana_pell_solve(uint64_t d,
                                        uint64_t z,
                                        uint64_t n_limit,
                                        struct NarayanaPellSolutions **out);

/**
 * # Safety
 *
 * `sols` must be a live handle.
 */
size_t narayana_pell_solutions_len(const struct NarayanaPellSolutions *sols);

/**
 * The `index`-th solution as decimal strings.
 *
 * # Safety
 *
 * `sols` must be a live handle and the out pointers valid for writes.
 */
enum NarayanaStatus narayana_pell_solutions_get(const struct NarayanaPellSolutions *sols,
                                                size_t index,
                                                char **out_n,
                                                char **out_m);

/**
 * # Safety
 *
 * `sols` must be null or a live handle; it is invalid afterwards.
 */
void narayana_pell_solutions_free(struct NarayanaPellSolutions *sols);

/**
 * Every certificate bounding `k` in `N(a, b) = m^k`, for `a > b > 1`. An
 * empty handle means no rule applies.
 *
 * # Safety
 *
 * `out` must be valid for writes.
 */
enum NarayanaStatus narayana_certify(uint64_t a, uint64_t b, struct NarayanaCertificates **out);

/**
 * # Safety
 *
 * `certs` must be a live handle.
 */
size_t narayana_certificates_len(const struct NarayanaCertificates *certs);

/**
 * # Safety
 *
 * `certs` must be a live handle and `out` valid for writes.
 */
enum NarayanaStatus narayana_certificates_get(const struct NarayanaCertificates *certs,
                                              size_t index,
                                              struct NarayanaCertificate *out);

/**
 * # Safety
 *
 * `certs` must be null or a live handle; it is invalid afterwards.
 */
void narayana_certificates_free(struct NarayanaCertificates *certs);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NARAYANA_H */
