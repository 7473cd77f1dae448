#ifndef SIGFORGE_H
#define SIGFORGE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status codes returned by every fallible function.
 */
typedef enum SfStatus {
  SF_STATUS_OK = 0,
  SF_STATUS_NULL_POINTER = 1,
  SF_STATUS_INVALID_ARGUMENT = 2,
  SF_STATUS_PARITY_VIOLATION = 3,
  SF_STATUS_VERIFICATION_FAILED = 4,
  SF_STATUS_OUT_OF_DOMAIN = 5,
  SF_STATUS_BUFFER_TOO_SMALL = 6,
  SF_STATUS_OVERFLOW = 7,
  SF_STATUS_PANIC = 8,
} SfStatus;

typedef enum SfParity {
  SF_PARITY_CLASSICAL = 0,
  SF_PARITY_HIGH_DIM = 1,
} SfParity;

/*
 Opaque validated Seifert matrix.
 */
typedef struct SfSeifert SfSeifert;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Validates an `n×n` row-major matrix and returns a new handle in `*out`.

 # Safety
 `entries` must point to `n*n` readable values and `out` must be writable.
 */
enum SfStatus sf_seifert_new(const int64_t *entries,
                             size_t n,
                             enum SfParity parity,
                             struct SfSeifert **out);

/*
 Releases a handle. Null is ignored.

 # Safety
 `m` must come from this library and not be used afterwards.
 */
void sf_seifert_free(struct SfSeifert *m);

/*
 Dimension of the matrix, or 0 for a null handle.

 # Safety
 `m` must be null or a live handle.
 */
size_t sf_seifert_dim(const struct SfSeifert *m);

/*
 Copies the entries row-major into `buf` (capacity `cap`).

 # Safety
 `buf` must hold `cap` writable values.
 */
enum SfStatus sf_seifert_entries(const struct SfSeifert *m, int64_t *buf, size_t cap);

/*
 Exact signature at `ω` with real part `num/den ∈ (−1, 1)`.

 # Safety
 `m` must be a live handle and `out` writable.
 */
enum SfStatus sf_signature_at_rational(const struct SfSeifert *m,
                                       int64_t num,
                                       int64_t den,
                                       int64_t *out);

/*
 Normalized Alexander polynomial, constant coefficient first. `*len` is
 set to the number of coefficients even when the buffer is too small.

 # Safety
 `coeffs` must hold `cap` writable values; `len` must be writable.
 */
enum SfStatus sf_alexander(const struct SfSeifert *m, int64_t *coeffs, size_t cap, size_t *len);

/*
 Metabolic matrix whose signature function is 2 at the `root_index`-th
 unit root of `Δ` (1-based) and 0 elsewhere. Postconditions are verified.

 # Safety
 `coeffs` must hold `len` values; `out` must be writable.
 */
enum SfStatus sf_metabolic_peak(const int64_t *coeffs,
                                size_t len,
                                size_t root_index,
                                enum SfParity parity,
                                struct SfSeifert **out);

/*
 Quartic `bt⁴ − (2a+2b)t³ + (4a+2b−1)t² − (2a+2b)t + b` with a single
 unit-root pair whose real part is within `eps` of `re`. Writes the five
 coefficients, constant first.

 # Safety
 `coeffs` must hold 5 writable values.
 */
enum SfStatus sf_jump_polynomial(int64_t re_num,
                                 int64_t re_den,
                                 int64_t eps_num,
                                 int64_t eps_den,
                                 int64_t *coeffs);

/*
 Step function as a JSON string in `*out`; release with [`sf_string_free`].

 # Safety
 `m` must be a live handle and `out` writable.
 */
enum SfStatus sf_step_function_json(const struct SfSeifert *m, char **out);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not be used afterwards.
 */
void sf_string_free(char *s);

/*
 Message for the most recent failure on this thread, or null. The pointer
 stays valid until the next failing call on the same thread.
 */
const char *sf_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SIGFORGE_H */
