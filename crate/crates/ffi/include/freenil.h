#ifndef FREENIL_H
#define FREENIL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every call. Codes after `NM_STATUS_MALFORMED_INPUT` mirror
 * the library's error variants one to one.
 */
typedef enum {
  NM_STATUS_OK = 0,
  NM_STATUS_NULL_POINTER = 1,
  NM_STATUS_INVALID_UTF8 = 2,
  NM_STATUS_MALFORMED_INPUT = 3,
  NM_STATUS_PANIC = 4,
  NM_STATUS_INVALID_CONTEXT = 10,
  NM_STATUS_INDEX_OUT_OF_RANGE = 11,
  NM_STATUS_MALFORMED_WORD = 12,
  NM_STATUS_CONTEXT_MISMATCH = 13,
  NM_STATUS_BAD_CLASS = 14,
  NM_STATUS_NOT_CENTRAL = 15,
  NM_STATUS_NOT_LIE_ELEMENT = 16,
  NM_STATUS_NOT_AUTOMORPHISM = 17,
  NM_STATUS_NOT_A_BIJECTION = 18,
  NM_STATUS_PARTITION_INVALID = 19,
  NM_STATUS_BLOCK_CONSTRAINT_VIOLATED = 20,
  NM_STATUS_NOT_IN_GAMMA2 = 21,
  NM_STATUS_CERTIFICATE_INVALID = 22,
  NM_STATUS_NOT_UNIMODULAR = 23,
  NM_STATUS_DOES_NOT_FIX_D = 24,
  NM_STATUS_RANK_TOO_SMALL = 25,
  NM_STATUS_NOT_CENTRAL_IA = 26,
} NmStatus;

/**
 * A certified factorization of an automorphism.
 */
typedef struct NmDecomposition NmDecomposition;

/**
 * An endomorphism of a free nilpotent group, given by generator images.
 */
typedef struct NmMap NmMap;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *nm_last_error_message(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must be NULL or a string obtained from this library, freed once.
 */
void nm_string_free(char *s);

/**
 * Parses a map from `{"rank": n, "class": c, "images": [...]}`.
 *
 * # Safety
 * `json` must be NULL or NUL-terminated; `out` must be writable.
 */
NmStatus nm_map_from_json(const char *json, NmMap **out);

/**
 * Serializes a map to its JSON wire form.
 *
 * # Safety
 * `map` must be a live handle or NULL; `out` must be writable.
 */
NmStatus nm_map_to_json(const NmMap *map, char **out);

/**
 * Releases a map handle. NULL is ignored.
 *
 * # Safety
 * `map` must be NULL or a handle from this library, freed once.
 */
void nm_map_free(NmMap *map);

/**
 * `left ∘ right`, applying `right` first.
 *
 * # Safety
 * Both handles must be live or NULL; `out` must be writable.
 */
NmStatus nm_map_compose(const NmMap *left, const NmMap *right, NmMap **out);

/**
 * Two-sided inverse of an automorphism.
 *
 * # Safety
 * `map` must be live or NULL; `out` must be writable.
 */
NmStatus nm_map_invert(const NmMap *map, NmMap **out);

/**
 * Whether the map is an automorphism (abelianization determinant ±1).
 *
 * # Safety
 * `map` must be live or NULL; `out` must be writable.
 */
NmStatus nm_map_is_automorphism(const NmMap *map, bool *out);

/**
 * Seeded random automorphism fixing the `fix_len` generators at `fix`.
 * Output matches `freenil random-aut` for the same arguments.
 *
 * # Safety
 * `fix` must point to `fix_len` readable values (may be NULL when
 * `fix_len` is 0); `out` must be writable.
 */
NmStatus nm_random_automorphism(size_t rank,
                                size_t class_,
                                uint64_t seed,
                                size_t length,
                                const size_t *fix,
                                size_t fix_len,
                                NmMap **out);

/**
 * Factors an automorphism fixing the `fix_len` generators at `fix`.
 *
 * # Safety
 * As for [`nm_random_automorphism`]; `map` must be live or NULL.
 */
NmStatus nm_decompose(const NmMap *map, const size_t *fix, size_t fix_len, NmDecomposition **out);

/**
 * Parses a decomposition from `{"input", "fixed", "factors"}`.
 *
 * # Safety
 * `json` must be NULL or NUL-terminated; `out` must be writable.
 */
NmStatus nm_decomposition_from_json(const char *json, NmDecomposition **out);

/**
 * Serializes a decomposition.
 *
 * # Safety
 * `dec` must be live or NULL; `out` must be writable.
 */
NmStatus nm_decomposition_to_json(const NmDecomposition *dec, char **out);

/**
 * Number of factors.
 *
 * # Safety
 * `dec` must be live or NULL; `out` must be writable.
 */
NmStatus nm_decomposition_factor_count(const NmDecomposition *dec, size_t *out);

/**
 * The factor at `index` as a new map handle.
 *
 * # Safety
 * `dec` must be live or NULL; `out` must be writable.
 */
NmStatus nm_decomposition_factor(const NmDecomposition *dec, size_t index, NmMap **out);

/**
 * Re-checks a decomposition. `ok` receives the verdict; `report`, when not
 * NULL, receives the full JSON report. A failed check is still `NM_STATUS_OK`.
 *
 * # Safety
 * `dec` must be live or NULL; `ok` must be writable; `report` may be NULL.
 */
NmStatus nm_decomposition_verify(const NmDecomposition *dec, bool *ok, char **report);

/**
 * Releases a decomposition handle. NULL is ignored.
 *
 * # Safety
 * `dec` must be NULL or a handle from this library, freed once.
 */
void nm_decomposition_free(NmDecomposition *dec);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FREENIL_H */
