#ifndef K3CONE_H
#define K3CONE_H

/* This file is generated by cbindgen from crates/k3cone-ffi; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum K3cStatus {
  K3cStatus_Ok = 0,
  K3cStatus_NullPointer = 1,
  K3cStatus_InvalidUtf8 = 2,
  K3cStatus_InvalidArgument = 3,
  K3cStatus_ComputationError = 4,
} K3cStatus;

/**
 * Opaque lattice handle.
 */
typedef struct K3cLattice K3cLattice;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Detail message for the most recent failure on this thread. The pointer is
 * valid until the next failing call on the same thread; do not free it.
 */
const char *k3c_last_error_message(void);

/**
 * Library version as a static string; do not free.
 */
const char *k3c_version(void);

/**
 * Parses a lattice definition document (JSON with `label` plus one of
 * `blocks`/`gram`) into a new handle.
 *
 * # Safety
 * `definition_json` must be a NUL-terminated string; `out` must be a valid
 * pointer to receive the handle.
 */
enum K3cStatus k3c_lattice_parse(const char *definition_json, struct K3cLattice **out);

/**
 * Builds a lattice from whitespace-separated block tokens, e.g.
 * `"DIAG(-4) U E8MINUS E8MINUS"`.
 *
 * # Safety
 * `blocks` must be a NUL-terminated string; `out` must be valid.
 */
enum K3cStatus k3c_lattice_from_blocks(const char *blocks, struct K3cLattice **out);

/**
 * Releases a lattice handle. Passing NULL is a no-op.
 *
 * # Safety
 * `lattice` must be a handle from this library that has not been freed.
 */
void k3c_lattice_free(struct K3cLattice *lattice);

/**
 * Rank of the lattice; 0 for a NULL handle.
 *
 * # Safety
 * `lattice` must be a live handle or NULL.
 */
size_t k3c_lattice_rank(const struct K3cLattice *lattice);

/**
 * Signature (positive, negative inertia counts).
 *
 * # Safety
 * All pointers must be valid; `lattice` must be a live handle.
 */
enum K3cStatus k3c_lattice_signature(const struct K3cLattice *lattice,
                                     size_t *positive,
                                     size_t *negative);

/**
 * Determinant as a decimal string (arbitrary precision).
 *
 * # Safety
 * `lattice` must be a live handle; `out` must be valid. Free the result
 * with [`k3c_string_free`].
 */
enum K3cStatus k3c_lattice_determinant(const struct K3cLattice *lattice, char **out);

/**
 * Inner product of two vectors given as comma-separated integers, returned
 * as a decimal string.
 *
 * # Safety
 * `lattice` must be a live handle; strings NUL-terminated; `out` valid.
 */
enum K3cStatus k3c_lattice_inner(const struct K3cLattice *lattice,
                                 const char *x_csv,
                                 const char *y_csv,
                                 char **out);

/**
 * All roots with the given pairing against `v0`, as a JSON array of integer
 * vectors (sorted lexicographically).
 *
 * # Safety
 * `lattice` must be a live handle; `v0_csv` NUL-terminated; `out` valid.
 */
enum K3cStatus k3c_roots_at_level(const struct K3cLattice *lattice,
                                  const char *v0_csv,
                                  uint64_t level,
                                  char **out);

/**
 * Runs the 2-reflectivity decision. `v0_csv` may be NULL to use the default
 * controlling-vector search; zero budget fields select the defaults
 * (64 walls, level 20, 10^6 candidates). The result is the same JSON
 * document the CLI emits for `vinberg run --json`.
 *
 * # Safety
 * `lattice` must be a live handle; `out` valid; `v0_csv` NULL or
 * NUL-terminated.
 */
enum K3cStatus k3c_vinberg_run(const struct K3cLattice *lattice,
                               const char *v0_csv,
                               size_t max_walls,
                               uint64_t max_level,
                               uint64_t max_candidates,
                               char **out);

/**
 * Releases a string returned by this library. Passing NULL is a no-op.
 *
 * # Safety
 * `s` must originate from this library and not have been freed already.
 */
void k3c_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* K3CONE_H */
