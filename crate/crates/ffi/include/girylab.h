#ifndef GIRYLAB_H
#define GIRYLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Outcome of a call.
 */
typedef enum GirylabStatus {
  /*
   Success; for checks, every law held.
   */
  GIRYLAB_STATUS_OK = 0,
  /*
   A check ran and at least one law failed.
   */
  GIRYLAB_STATUS_CHECK_FAILED = 1,
  /*
   Malformed model, unknown name or unusable argument.
   */
  GIRYLAB_STATUS_INPUT = 2,
  /*
   A required pointer was null.
   */
  GIRYLAB_STATUS_NULL_POINTER = 3,
  /*
   A string argument was not valid UTF-8.
   */
  GIRYLAB_STATUS_UTF8 = 4,
  /*
   An enumeration would exceed the configured cap.
   */
  GIRYLAB_STATUS_ENUMERATION_CAP = 5,
  /*
   A law-checked constructor rejected its input.
   */
  GIRYLAB_STATUS_CONSISTENCY = 6,
  /*
   The library panicked; this is a bug.
   */
  GIRYLAB_STATUS_INTERNAL = 7,
} GirylabStatus;

/*
 A parsed and validated model file.
 */
typedef struct GirylabModel GirylabModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Parse a model from JSON text. On success `*out` holds a handle to release
 with [`girylab_model_free`].

 # Safety
 `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum GirylabStatus girylab_model_from_json(const char *json, struct GirylabModel **out);

/*
 Load a model from a file.

 # Safety
 `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum GirylabStatus girylab_model_load(const char *path, struct GirylabModel **out);

/*
 Release a model handle. Null is ignored.

 # Safety
 `model` must come from this library and not be used afterwards.
 */
void girylab_model_free(struct GirylabModel *model);

/*
 Run a suite (or `"all"`) and write the JSON report to `*out`. Returns
 `CheckFailed` when the report contains a failing law; the report is written
 either way.

 # Safety
 Pointers must be valid; `suite` NUL-terminated.
 */
enum GirylabStatus girylab_check(const struct GirylabModel *model,
                                 const char *suite,
                                 uint64_t seed,
                                 bool timings,
                                 char **out);

/*
 Compose two named kernels, first `k1` then `k2`.

 # Safety
 Pointers must be valid; strings NUL-terminated.
 */
enum GirylabStatus girylab_compose(const struct GirylabModel *model,
                                   const char *k1,
                                   const char *k2,
                                   char **out);

/*
 Barycenter of a named measure on a named convex space.

 # Safety
 Pointers must be valid; strings NUL-terminated.
 */
enum GirylabStatus girylab_barycenter(const struct GirylabModel *model,
                                      const char *convex,
                                      const char *measure,
                                      char **out);

/*
 Separation quotient of a named space.

 # Safety
 Pointers must be valid; `space` NUL-terminated.
 */
enum GirylabStatus girylab_separate(const struct GirylabModel *model,
                                    const char *space,
                                    char **out);

/*
 The available suites as JSON.

 # Safety
 `out` must be a valid pointer.
 */
enum GirylabStatus girylab_list_suites(char **out);

/*
 Set the cap on candidates visited by exhaustive enumerations (process-wide).
 */
void girylab_set_max_enum(uint64_t cap);

/*
 The current enumeration cap.
 */
uint64_t girylab_max_enum(void);

/*
 Message for the last failure on this thread; empty after a success. The
 pointer stays valid until the next call on the same thread.
 */
const char *girylab_last_error(void);

/*
 Release a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not be used afterwards.
 */
void girylab_string_free(char *s);

/*
 Library version, a static string.
 */
const char *girylab_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GIRYLAB_H */
