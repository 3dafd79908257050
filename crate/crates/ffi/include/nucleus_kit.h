#ifndef NUCLEUS_KIT_H
#define NUCLEUS_KIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NkStatus {
  NK_STATUS_OK = 0,
  /**
   * A verification ran and some claim failed.
   */
  NK_STATUS_VERIFICATION_FAILED = 1,
  NK_STATUS_INVALID_INPUT = 2,
  NK_STATUS_CAP_EXCEEDED = 3,
  NK_STATUS_NULL_POINTER = 4,
  NK_STATUS_INVALID_UTF8 = 5,
  NK_STATUS_INTERNAL = 6,
} NkStatus;

/**
 * A formal context.
 */
typedef struct NkContext NkContext;

/**
 * A finite poset.
 */
typedef struct NkPoset NkPoset;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread; do not free.
 */
const char *nk_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void nk_string_free(char *s);

/**
 * Library version as a static string.
 */
const char *nk_version(void);

/**
 * Parses a context in Burmeister `.cxt` format.
 *
 * # Safety
 * `text` is a nul-terminated string; `out` is writable.
 */
enum NkStatus nk_context_from_cxt(const char *text, struct NkContext **out);

/**
 * Parses a context from JSON.
 *
 * # Safety
 * As for [`nk_context_from_cxt`].
 */
enum NkStatus nk_context_from_json(const char *text, struct NkContext **out);

/**
 * # Safety
 * `c` is null or a handle from this library, freed at most once.
 */
void nk_context_free(struct NkContext *c);

/**
 * Number of formal concepts.
 *
 * # Safety
 * `c` is a live handle; `out` is writable.
 */
enum NkStatus nk_context_concept_count(const struct NkContext *c, size_t *out);

/**
 * The concept lattice as JSON.
 *
 * # Safety
 * `c` is a live handle; `out` is writable.
 */
enum NkStatus nk_context_nucleus_json(const struct NkContext *c, char **out);

/**
 * Parses a poset from JSON.
 *
 * # Safety
 * `text` is a nul-terminated string; `out` is writable.
 */
enum NkStatus nk_poset_from_json(const char *text, struct NkPoset **out);

/**
 * # Safety
 * `p` is null or a handle from this library, freed at most once.
 */
void nk_poset_free(struct NkPoset *p);

/**
 * Number of cuts in the Dedekind-MacNeille completion.
 *
 * # Safety
 * `p` is a live handle; `out` is writable.
 */
enum NkStatus nk_poset_cut_count(const struct NkPoset *p, size_t *out);

/**
 * The completion as JSON.
 *
 * # Safety
 * `p` is a live handle; `out` is writable.
 */
enum NkStatus nk_poset_dm_json(const struct NkPoset *p, char **out);

/**
 * Number of equivariant maps between two Z/p-sets, each given by its
 * number of fixed points and of free orbits, as a decimal string.
 *
 * # Safety
 * `out` is writable.
 */
enum NkStatus nk_zp_hom_count(size_t p,
                              size_t x_fixed,
                              size_t x_free,
                              size_t y_fixed,
                              size_t y_free,
                              char **out);

/**
 * Runs a verification suite. The JSON report is written to `out` in every
 * case where the suite ran; the status is `VerificationFailed` when some
 * claim failed.
 *
 * # Safety
 * `suite` is a nul-terminated string; `out` is writable.
 */
enum NkStatus nk_verify(const char *suite, size_t max_size, uint64_t budget, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NUCLEUS_KIT_H */
