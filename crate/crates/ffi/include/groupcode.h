#ifndef GROUPCODE_H
#define GROUPCODE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result of every fallible call.
 */
typedef enum GcStatus {
  GC_STATUS_OK = 0,
  /*
   A required pointer argument was null.
   */
  GC_STATUS_NULL_POINTER = 1,
  GC_STATUS_INVALID_INPUT = 2,
  /*
   A table or code failed a group axiom or closure.
   */
  GC_STATUS_NOT_A_GROUP = 3,
  /*
   A search cap was hit before an answer was found.
   */
  GC_STATUS_RESOURCE_LIMIT = 4,
  /*
   Malformed JSON; the message carries line and column.
   */
  GC_STATUS_PARSE = 5,
  /*
   Internal failure, including a caught panic.
   */
  GC_STATUS_INTERNAL = 6,
} GcStatus;

/*
 A code, either plain or a group code.
 */
typedef struct GcCode GcCode;

/*
 A finite group given by its Cayley table.
 */
typedef struct GcGroup GcGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread; empty after a
 successful call. Valid until the next `gc_*` call on the same thread.
 */
const char *gc_last_error_message(void);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed already.
 */
void gc_string_free(char *s);

/*
 The cyclic group `Z/order`.

 # Safety
 `out` must be valid for writes.
 */
enum GcStatus gc_group_cyclic(size_t order, struct GcGroup **out);

/*
 A group from a row-major `order × order` multiplication table over
 `0..order`. Identity and inverses are inferred; all axioms are checked.

 # Safety
 `table` must point to `order * order` readable values and `out` must be
 valid for writes.
 */
enum GcStatus gc_group_from_table(const uint32_t *table, size_t order, struct GcGroup **out);

/*
 # Safety
 `group` must be a live handle and `out` valid for writes.
 */
enum GcStatus gc_group_order(const struct GcGroup *group, size_t *out);

/*
 Releases a group. Codes built from it stay valid. Null is ignored.

 # Safety
 `group` must come from this library and not have been freed already.
 */
void gc_group_free(struct GcGroup *group);

/*
 Parses a code file (the JSON format read by the command-line tool).

 # Safety
 `json` must be a NUL-terminated string and `out` valid for writes.
 */
enum GcStatus gc_code_from_json(const char *json, struct GcCode **out);

/*
 The group code of length `length` generated by `count` words, stored
 row-major in `generators`.

 # Safety
 `group` must be a live handle, `generators` must point to
 `count * length` readable values (it may be null when `count` is 0) and
 `out` must be valid for writes.
 */
enum GcStatus gc_code_generate(const struct GcGroup *group,
                               size_t length,
                               const uint32_t *generators,
                               size_t count,
                               struct GcCode **out);

/*
 Releases a code. Null is ignored.

 # Safety
 `code` must come from this library and not have been freed already.
 */
void gc_code_free(struct GcCode *code);

/*
 The code as a code-file JSON string.

 # Safety
 `code` must be a live handle and `out` valid for writes.
 */
enum GcStatus gc_code_to_json(const struct GcCode *code, char **out);

/*
 # Safety
 `code` must be a live handle and `out` valid for writes.
 */
enum GcStatus gc_code_length(const struct GcCode *code, size_t *out);

/*
 Number of codewords.

 # Safety
 `code` must be a live handle and `out` valid for writes.
 */
enum GcStatus gc_code_cardinality(const struct GcCode *code, size_t *out);

/*
 Minimum distance; `length + 1` for a single-word code.

 # Safety
 `code` must be a live handle and `out` valid for writes.
 */
enum GcStatus gc_code_min_distance(const struct GcCode *code, size_t *out);

/*
 Whether the handle holds a group code.

 # Safety
 `code` must be a live handle and `out` valid for writes.
 */
enum GcStatus gc_code_is_group(const struct GcCode *code, bool *out);

/*
 Invariance under the cyclic shift.

 # Safety
 `code` must be a live handle and `out` valid for writes.
 */
enum GcStatus gc_code_is_cyclic(const struct GcCode *code, bool *out);

/*
 Whether the code is a nontrivial product. `max_partition_bits` caps the
 exhaustive split search; 0 selects the default.

 # Safety
 `code` must be a live handle and `out` valid for writes.
 */
enum GcStatus gc_code_is_decomposable(const struct GcCode *code,
                                      size_t max_partition_bits,
                                      bool *out);

/*
 The finest decomposition as JSON: 1-based blocks, components, isotypes
 and the witness isometry.

 # Safety
 `code` must be a live handle and `out` valid for writes.
 */
enum GcStatus gc_code_decompose_json(const struct GcCode *code,
                                     size_t max_partition_bits,
                                     char **out);

/*
 The full analysis report as JSON, identical to `groupcode analyze`.
 A report cut short by a cap is still returned, with status
 `GC_STATUS_RESOURCE_LIMIT` and an `incomplete` field.

 # Safety
 `code` must be a live handle and `out` valid for writes.
 */
enum GcStatus gc_code_analyze_json(const struct GcCode *code, char **out);

/*
 Isomorphism test. Two group codes are compared as group codes (local
 maps are group isomorphisms); otherwise as plain codes. `max_nodes`
 caps the search; 0 selects the default.

 # Safety
 `a` and `b` must be live handles and `out` valid for writes.
 */
enum GcStatus gc_codes_isomorphic(const struct GcCode *a,
                                  const struct GcCode *b,
                                  uint64_t max_nodes,
                                  bool *out);

/*
 Order of the automorphism group as a decimal string.

 # Safety
 `code` must be a live handle and `out` valid for writes.
 */
enum GcStatus gc_code_aut_order(const struct GcCode *code, uint64_t max_nodes, char **out);

/*
 Interleaves `copies` copies of a cyclic group code.

 # Safety
 `code` must be a live handle and `out` valid for writes.
 */
enum GcStatus gc_code_interleave(const struct GcCode *code, size_t copies, struct GcCode **out);

/*
 Library version, a static string.
 */
const char *gc_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GROUPCODE_H */
