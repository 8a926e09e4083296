#ifndef FINMOD_H
#define FINMOD_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FinmodStatus {
  FINMOD_STATUS_OK = 0,
  FINMOD_STATUS_NULL_ARGUMENT = 1,
  FINMOD_STATUS_INVALID_UTF8 = 2,
  FINMOD_STATUS_PARSE = 3,
  FINMOD_STATUS_AXIOM_VIOLATION = 4,
  FINMOD_STATUS_BOUND_EXCEEDED = 5,
  FINMOD_STATUS_UNKNOWN_MODULE = 6,
  FINMOD_STATUS_PRECONDITION = 7,
  FINMOD_STATUS_INTERNAL = 8,
  FINMOD_STATUS_IO = 9,
  FINMOD_STATUS_PANIC = 10,
} FinmodStatus;

/**
 * One module of an instance with its submodule lattice.
 */
typedef struct FinmodAnalysis FinmodAnalysis;

/**
 * A validated instance: one ring and its modules.
 */
typedef struct FinmodInstance FinmodInstance;

typedef struct FinmodClassification {
  bool local;
  bool delta_local;
  bool semilocal;
  bool semisimple;
  bool singular;
} FinmodClassification;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread, or null. Borrowed;
 * valid until the next failing call.
 */
const char *finmod_last_error(void);

/**
 * Parses and validates an instance file given as JSON text.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum FinmodStatus finmod_instance_load(const char *json, struct FinmodInstance **out);

/**
 * Instance number `index` of the built-in corpus.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum FinmodStatus finmod_instance_builtin(size_t index, struct FinmodInstance **out);

/**
 * # Safety
 * `inst` must come from a `finmod_instance_*` constructor or be null.
 */
void finmod_instance_free(struct FinmodInstance *inst);

/**
 * Number of modules in the instance; 0 for null.
 *
 * # Safety
 * `inst` must be a live handle or null.
 */
size_t finmod_instance_module_count(const struct FinmodInstance *inst);

/**
 * The instance re-serialized as JSON.
 *
 * # Safety
 * `inst` must be a live handle and `out` a valid pointer.
 */
enum FinmodStatus finmod_instance_to_json(const struct FinmodInstance *inst, char **out);

/**
 * Builds the submodule lattice of the named module.
 *
 * # Safety
 * `inst` must be a live handle, `module` a nul-terminated string and `out`
 * a valid pointer.
 */
enum FinmodStatus finmod_analysis_new(const struct FinmodInstance *inst,
                                      const char *module,
                                      struct FinmodAnalysis **out);

/**
 * # Safety
 * `a` must come from [`finmod_analysis_new`] or be null.
 */
void finmod_analysis_free(struct FinmodAnalysis *a);

/**
 * Number of submodules; 0 for null.
 *
 * # Safety
 * `a` must be a live handle or null.
 */
size_t finmod_analysis_lattice_size(const struct FinmodAnalysis *a);

/**
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum FinmodStatus finmod_analysis_classify(const struct FinmodAnalysis *a,
                                           struct FinmodClassification *out);

/**
 * Full analysis document (fundamental submodules, classification,
 * predicate matrix, decomposition) as JSON.
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum FinmodStatus finmod_analysis_report_json(const struct FinmodAnalysis *a, char **out);

/**
 * Runs the theorem suite on the built-in corpus; writes the JSON report
 * and the number of failed instances.
 *
 * # Safety
 * `out` must be a valid pointer; `failures` may be null.
 */
enum FinmodStatus finmod_suite_builtin_json(char **out, size_t *failures);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from this library or be null.
 */
void finmod_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FINMOD_H */
