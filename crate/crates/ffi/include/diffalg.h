#ifndef DIFFALG_H
#define DIFFALG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible entry point.
 */
typedef enum DiffalgStatus {
  DIFFALG_STATUS_OK = 0,
  DIFFALG_STATUS_NULL_POINTER = 1,
  DIFFALG_STATUS_INVALID_UTF8 = 2,
  DIFFALG_STATUS_PARSE = 3,
  DIFFALG_STATUS_INDEX_OUT_OF_RANGE = 4,
  DIFFALG_STATUS_NOT_PBW = 5,
  DIFFALG_STATUS_DOMAIN = 6,
  DIFFALG_STATUS_PANIC = 7,
} DiffalgStatus;

/**
 * Opaque presentation handle.
 */
typedef struct DiffalgPresentation DiffalgPresentation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a presentation in the text format and stores a new handle in
 * `*out`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum DiffalgStatus diffalg_presentation_parse(const char *text, struct DiffalgPresentation **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `p` must come from this library and not be freed twice.
 */
void diffalg_presentation_free(struct DiffalgPresentation *p);

/**
 * Number of generators, or 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t diffalg_presentation_generators(const struct DiffalgPresentation *p);

/**
 * Canonical text of a presentation.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum DiffalgStatus diffalg_presentation_to_text(const struct DiffalgPresentation *p, char **out);

/**
 * Runs the diamond check. `*passed` receives the verdict and, when
 * non-null, `*failing_triples` the number of failing triples.
 *
 * # Safety
 * `p` must be a live handle; `passed` must be writable.
 */
enum DiffalgStatus diffalg_is_pbw(const struct DiffalgPresentation *p,
                                  bool *passed,
                                  size_t *failing_triples);

/**
 * Normal form of the word `letters[0..len]` (1-based generator indices),
 * written as text.
 *
 * # Safety
 * `p` must be a live handle; `letters` must point to `len` values (it may
 * be null when `len` is 0); `out` must be writable.
 */
enum DiffalgStatus diffalg_normalize(const struct DiffalgPresentation *p,
                                     const size_t *letters,
                                     size_t len,
                                     char **out);

/**
 * Classification report; `structured` selects the `key: value` layout.
 * Returns `DIFFALG_STATUS_NOT_PBW` for presentations without the PBW
 * property.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum DiffalgStatus diffalg_classify(const struct DiffalgPresentation *p,
                                    bool structured,
                                    char **out);

/**
 * Mirror image of a presentation as a new handle.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum DiffalgStatus diffalg_mirror(const struct DiffalgPresentation *p,
                                  struct DiffalgPresentation **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void diffalg_string_free(char *s);

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next call into the library on the same thread.
 */
const char *diffalg_last_error(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* DIFFALG_H */
