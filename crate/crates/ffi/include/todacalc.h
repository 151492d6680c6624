#ifndef TODACALC_H
#define TODACALC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. The first three mirror the report status and the exit codes
// of the command-line tool.
typedef enum TodacalcStatus {
  TODACALC_STATUS_OK = 0,
  TODACALC_STATUS_INVALID = 1,
  TODACALC_STATUS_OBSTRUCTION = 2,
  TODACALC_STATUS_NULL_POINTER = 3,
  TODACALC_STATUS_INVALID_UTF8 = 4,
  TODACALC_STATUS_BAD_COMMAND = 5,
  TODACALC_STATUS_PANIC = 6,
} TodacalcStatus;

// A parsed presentation file.
typedef struct TodacalcPresentation TodacalcPresentation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
//
// # Safety
// The returned pointer is owned by the library and must not be freed.
const char *todacalc_version(void);

// Parse presentation text. On success `*out` receives a new handle; on a
// parse failure `*error_json` (when non-null) receives a report describing
// the located error and the result is `Invalid`.
//
// # Safety
// `text` must be a valid NUL-terminated string. `out` must be a valid
// pointer to writable storage. `error_json` may be null; otherwise it must
// be writable, and any string written there must be released with
// `todacalc_string_free`.
enum TodacalcStatus todacalc_presentation_parse(const char *text,
                                                struct TodacalcPresentation **out,
                                                char **error_json);

// Number of blocks in a presentation, or 0 for a null handle.
//
// # Safety
// `p` must be null or a handle returned by `todacalc_presentation_parse`
// that has not been freed.
uintptr_t todacalc_presentation_item_count(const struct TodacalcPresentation *p);

// Canonical text of a presentation.
//
// # Safety
// `p` must be a live handle. `out` must be writable; the string written
// there must be released with `todacalc_string_free`.
enum TodacalcStatus todacalc_presentation_print(const struct TodacalcPresentation *p, char **out);

// Release a presentation handle. Null is ignored.
//
// # Safety
// `p` must be null or a live handle; it must not be used afterwards.
void todacalc_presentation_free(struct TodacalcPresentation *p);

// Run a command given as JSON, e.g. `{"toda":{"maps":["f","g","h"]}}` or
// `"check"`, against an optional presentation. `*out_json` receives the
// report; the result mirrors its status, or `BadCommand` when the command
// JSON does not describe a command.
//
// # Safety
// `p` must be null or a live handle. `command_json` must be a valid
// NUL-terminated string. `out_json` must be writable; the string written
// there must be released with `todacalc_string_free`.
enum TodacalcStatus todacalc_run(const struct TodacalcPresentation *p,
                                 const char *command_json,
                                 char **out_json);

// Homology report of the folding polytope of dimension `n` (the modified
// one when `modified` is true), as JSON.
//
// # Safety
// `out_json` must be writable; the string written there must be released
// with `todacalc_string_free`.
enum TodacalcStatus todacalc_polytope_report(uintptr_t n, bool modified, char **out_json);

// Release a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string produced by this library that has not
// already been freed.
void todacalc_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* TODACALC_H */
