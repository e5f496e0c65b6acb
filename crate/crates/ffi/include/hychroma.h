#ifndef HYCHROMA_H
#define HYCHROMA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HcMode {
  HC_MODE_AT_MOST = 0,
  HC_MODE_EXACT = 1,
} HcMode;

typedef enum HcStatus {
  HC_STATUS_OK = 0,
  /**
   * Verification ran and found a violation.
   */
  HC_STATUS_VIOLATION = 1,
  HC_STATUS_INVALID_ARGUMENT = 2,
  HC_STATUS_PARSE_ERROR = 3,
  HC_STATUS_GUARD_EXCEEDED = 4,
  HC_STATUS_CONSTRUCTION_ERROR = 5,
  HC_STATUS_NULL_POINTER = 6,
  HC_STATUS_INTERNAL = 7,
} HcStatus;

typedef enum HcStrategy {
  HC_STRATEGY_AUTO = 0,
  HC_STRATEGY_NEIGHBOR = 1,
  HC_STRATEGY_PAIRWISE = 2,
} HcStrategy;

typedef enum HcViolationKind {
  HC_VIOLATION_KIND_NONE = 0,
  /**
   * `u` and `v` share a color at an illegal `distance`.
   */
  HC_VIOLATION_KIND_PAIR = 1,
  /**
   * `u` has color `v`, at or above the declared count.
   */
  HC_VIOLATION_KIND_COLOR_OUT_OF_RANGE = 2,
  /**
   * Color `u` is declared but unused.
   */
  HC_VIOLATION_KIND_UNUSED_COLOR = 3,
} HcViolationKind;

/**
 * Opaque coloring certificate.
 */
typedef struct HcCertificate HcCertificate;

/**
 * First violation found by [`hc_verify`].
 */
typedef struct HcCounterexample {
  enum HcViolationKind kind;
  uint64_t u;
  uint64_t v;
  uint32_t distance;
} HcCounterexample;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread. Valid until the next
 * call into this library on the same thread; never null.
 */
const char *hc_last_error(void);

/**
 * Preparata coloring for odd `r >= 3`: the coset construction on
 * `V_(2^(r+1))`, or the punctured one on `V_(2^(r+1) - 1)`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage.
 */
enum HcStatus hc_construct_preparata(uint32_t r, bool punctured, struct HcCertificate **out);

/**
 * Two-color parity certificate for odd `d <= n`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage.
 */
enum HcStatus hc_construct_parity(uint32_t n, uint32_t d, struct HcCertificate **out);

/**
 * Exactly-`d` certificate from the cosets of the greedy forbidden-weight
 * code.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage.
 */
enum HcStatus hc_construct_forbidden_greedy(uint32_t n, uint32_t d, struct HcCertificate **out);

/**
 * Parses the certificate text format from a NUL-terminated UTF-8 string.
 *
 * # Safety
 * `text` must be a valid C string and `out` valid writable storage.
 */
enum HcStatus hc_certificate_parse(const char *text, struct HcCertificate **out);

/**
 * Serializes to the text format. Free the result with [`hc_string_free`].
 *
 * # Safety
 * `cert` must come from this library; `out` must be writable.
 */
enum HcStatus hc_certificate_to_string(const struct HcCertificate *cert, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void hc_string_free(char *s);

/**
 * # Safety
 * `cert` must be null or a handle from this library, freed once.
 */
void hc_certificate_free(struct HcCertificate *cert);

/**
 * # Safety
 * `cert` must be a live handle.
 */
uint32_t hc_certificate_n(const struct HcCertificate *cert);

/**
 * # Safety
 * `cert` must be a live handle.
 */
uint32_t hc_certificate_d(const struct HcCertificate *cert);

/**
 * # Safety
 * `cert` must be a live handle.
 */
uint32_t hc_certificate_colors(const struct HcCertificate *cert);

/**
 * # Safety
 * `cert` must be a live handle.
 */
enum HcMode hc_certificate_mode(const struct HcCertificate *cert);

/**
 * # Safety
 * `cert` must be a live handle and `out` writable.
 */
enum HcStatus hc_certificate_get_color(const struct HcCertificate *cert,
                                       uint64_t vertex,
                                       uint32_t *out);

/**
 * Recolors one vertex. Any color id is accepted; [`hc_verify`] reports
 * ids beyond the declared count.
 *
 * # Safety
 * `cert` must be a live handle.
 */
enum HcStatus hc_certificate_set_color(struct HcCertificate *cert, uint64_t vertex, uint32_t color);

/**
 * Exhaustively verifies the certificate. Returns `Ok` on pass and
 * `Violation` on failure, filling `counterexample` when it is non-null.
 *
 * # Safety
 * `cert` must be a live handle; `counterexample` null or writable.
 */
enum HcStatus hc_verify(const struct HcCertificate *cert,
                        enum HcStrategy strategy,
                        bool force,
                        struct HcCounterexample *counterexample);

/**
 * Exponent `e` of the greedy forbidden-weight bound `chi_d(n) <= 2^e`
 * (even `d`).
 *
 * # Safety
 * `out` must be writable.
 */
enum HcStatus hc_greedy_upper_log2(uint32_t n, uint32_t d, uint32_t *out);

/**
 * Exponent of the direct-sum bound using the builtin `k(n, d)` entries;
 * `InvalidArgument` with a message naming the entry when it is missing.
 *
 * # Safety
 * `out` must be writable.
 */
enum HcStatus hc_direct_sum_upper_log2(uint32_t n, uint32_t d, uint32_t *out);

/**
 * Kim-Du-Pardalos bound as a decimal string (it overflows 64 bits
 * quickly). Free with [`hc_string_free`].
 *
 * # Safety
 * `out` must be writable.
 */
enum HcStatus hc_kdp_upper(uint32_t n, uint32_t d, char **out);

/**
 * Gray image of a Z4 vector (entries 0..=3, at most 32); bit `2i` and
 * `2i+1` of `out` hold the image of entry `i`.
 *
 * # Safety
 * `entries` must point to `len` readable bytes; `out` writable.
 */
enum HcStatus hc_gray_map(const uint8_t *entries, size_t len, uint64_t *out);

/**
 * # Safety
 * `entries` must point to `len` readable bytes; `out` writable.
 */
enum HcStatus hc_lee_weight(const uint8_t *entries, size_t len, uint32_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYCHROMA_H */
