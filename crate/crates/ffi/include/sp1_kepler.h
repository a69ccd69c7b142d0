#ifndef SP1_KEPLER_H
#define SP1_KEPLER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum Sp1Status {
  SP1_STATUS_OK = 0,
  SP1_STATUS_NULL_POINTER = 1,
  SP1_STATUS_INVALID_ARGUMENT = 2,
  SP1_STATUS_NON_POSITIVE_COORDINATE = 3,
  SP1_STATUS_INSUFFICIENT_GRID = 4,
  SP1_STATUS_T_MAX_TOO_SMALL = 5,
  SP1_STATUS_BUFFER_TOO_SMALL = 6,
  SP1_STATUS_OVERFLOW = 7,
  SP1_STATUS_INTERNAL = 8,
} Sp1Status;

// Opaque model handle.
typedef struct Sp1Model Sp1Model;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static description of a status code.
const char *sp1_status_string(enum Sp1Status status);

// Copies the last error message of this thread, NUL-terminated and
// truncated to `len − 1` bytes, into `buf`. Returns the full message
// length excluding the terminator; pass `buf = NULL` to query it.
//
// # Safety
// `buf` must be NULL or valid for `len` bytes.
size_t sp1_last_error_message(char *buf, size_t len);

// # Safety
// `out` must be valid for one write.
enum Sp1Status sp1_model_new(uint32_t n, uint32_t sigma_bar, struct Sp1Model **out);

// Releases a handle from [`sp1_model_new`]; NULL is ignored.
//
// # Safety
// `m` must be NULL or a live handle, not used afterwards.
void sp1_model_free(struct Sp1Model *m);

// `E_I` as a double.
//
// # Safety
// `m` must be a live handle and `out` valid for one write.
enum Sp1Status sp1_energy(const struct Sp1Model *m, uint32_t level, double *out);

// `E_I = numerator / denominator` in lowest terms.
//
// # Safety
// `m` must be a live handle; `numerator` and `denominator` valid for one
// write each.
enum Sp1Status sp1_energy_exact(const struct Sp1Model *m,
                                uint32_t level,
                                int64_t *numerator,
                                uint64_t *denominator);

// Degeneracy of level `I`.
//
// # Safety
// `m` must be a live handle and `out` valid for one write.
enum Sp1Status sp1_degeneracy(const struct Sp1Model *m, uint32_t level, uint64_t *out);

// The `t`-form radial function of state `(k, l)` at `t`; `normalized`
// selects unit norm in `L²(t^{2n} dt)`.
//
// # Safety
// `m` must be a live handle and `out` valid for one write.
enum Sp1Status sp1_radial_t(const struct Sp1Model *m,
                            uint32_t k,
                            uint32_t l,
                            double t,
                            bool normalized,
                            double *out);

// Lowest `count` finite-difference eigenvalues of channel `l`, written to
// `out[0..count]`. A non-positive `t_max` selects a box from the requested
// states.
//
// # Safety
// `m` must be a live handle and `out` valid for `out_len` writes.
enum Sp1Status sp1_eigensolve(const struct Sp1Model *m,
                              uint32_t l,
                              size_t grid_size,
                              double t_max,
                              size_t count,
                              double *out,
                              size_t out_len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SP1_KEPLER_H */
