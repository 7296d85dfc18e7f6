#ifndef QMUT_H
#define QMUT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every `qmut_*` call.
 */
typedef enum QmutStatus {
  QMUT_STATUS_OK = 0,
  QMUT_STATUS_NULL_POINTER = 1,
  QMUT_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed JSON or sequence text.
   */
  QMUT_STATUS_PARSE = 3,
  /**
   * Well-formed input describing an invalid quiver.
   */
  QMUT_STATUS_INVALID_QUIVER = 4,
  QMUT_STATUS_UNKNOWN_VERTEX = 5,
  QMUT_STATUS_FROZEN_VERTEX = 6,
  QMUT_STATUS_OVERFLOW = 7,
  /**
   * A search finished without a result.
   */
  QMUT_STATUS_NOT_FOUND = 8,
  /**
   * Bad family name, parameters or level.
   */
  QMUT_STATUS_INVALID_ARGUMENT = 9,
  /**
   * A panic was caught at the boundary.
   */
  QMUT_STATUS_PANIC = 10,
} QmutStatus;

typedef enum QmutMode {
  QMUT_MODE_REDDENING = 0,
  QMUT_MODE_MAXIMAL_GREEN = 1,
} QmutMode;

/**
 * Opaque quiver handle.
 */
typedef struct QmutQuiver QmutQuiver;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a quiver document into a new handle.
 *
 * # Safety
 * `json` must be a valid nul-terminated string; `out` must be writable.
 */
enum QmutStatus qmut_quiver_from_json(const char *json, struct QmutQuiver **out);

/**
 * Serializes a quiver to a newly allocated JSON string.
 *
 * # Safety
 * `q` must be a live handle; `out` must be writable.
 */
enum QmutStatus qmut_quiver_to_json(const struct QmutQuiver *q, char **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `q` must come from this library and not be used afterwards.
 */
void qmut_quiver_free(struct QmutQuiver *q);

/**
 * Mutates the quiver in place at `vertex`. On error the quiver is unchanged.
 *
 * # Safety
 * `q` must be a live handle; `vertex` a valid nul-terminated string.
 */
enum QmutStatus qmut_quiver_mutate(struct QmutQuiver *q, const char *vertex);

/**
 * Checks a comma-separated sequence against the framed quiver.
 *
 * `accepted` receives whether the verdict satisfies `mode`; if
 * `verdict_json` is non-null it receives the verdict document.
 *
 * # Safety
 * Pointers must be valid as described; `verdict_json` may be null.
 */
enum QmutStatus qmut_check_sequence(const struct QmutQuiver *q,
                                    const char *sequence,
                                    enum QmutMode mode,
                                    bool *accepted,
                                    char **verdict_json);

/**
 * Shortest reddening (or maximal green) sequence up to `max_len`,
 * written comma-separated to `out`. Returns `QMUT_STATUS_NOT_FOUND`
 * when there is none within the bound.
 *
 * # Safety
 * `q` must be a live handle; `out` must be writable.
 */
enum QmutStatus qmut_find_reddening(const struct QmutQuiver *q,
                                    size_t max_len,
                                    enum QmutMode mode,
                                    char **out);

/**
 * Level `level` of a built-in family. `params_json` is an object of
 * integer parameters such as `{"p": 3}`, or null for the defaults.
 *
 * # Safety
 * `name` must be a valid string, `params_json` valid or null, `out` writable.
 */
enum QmutStatus qmut_family_level(const char *name,
                                  const char *params_json,
                                  size_t level,
                                  struct QmutQuiver **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void qmut_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null after a
 * successful one. Owned by the library.
 */
const char *qmut_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QMUT_H */
