/* C interface for the nestquad nested quadrature library. */

#ifndef NESTQUAD_H
#define NESTQUAD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by the fallible `nq_*` calls.
 */
typedef enum NqStatus {
  NQ_OK = 0,
  /**
   * Bad arguments: unparsable spec, malformed JSON, null pointer.
   */
  NQ_INVALID_ARGUMENT = 1,
  /**
   * The extension chain stopped early or the step failed.
   */
  NQ_EXTENSION_FAILED = 2,
  /**
   * A verification check failed.
   */
  NQ_VERIFICATION_FAILED = 3,
  /**
   * Unexpected internal failure.
   */
  NQ_INTERNAL_ERROR = 4,
} NqStatus;

/**
 * Opaque handle to a generated rule document.
 */
typedef struct NqRule NqRule;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread.
 *
 * The pointer stays valid until the next failing `nq_*` call on the
 * same thread. Never free it.
 */
const char *nq_last_error(void);

/**
 * Library version as a static string; never free it.
 */
const char *nq_version(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be a pointer previously returned by an `nq_*` call that
 * documents `nq_string_free` ownership, or null.
 */
void nq_string_free(char *s);

/**
 * Generates a nested rule for a built-in distribution.
 *
 * `dist` is `uniform:a,b`, `beta:alpha,beta` or `gauss`; `schedule` is
 * either comma-separated p values (`1,2,4,6,12`, chain starts from the
 * empty formula) or `gkp:N` (N rounds of p = n+1 from the domain
 * midpoint). Returns null on failure; see `nq_last_error`.
 *
 * # Safety
 * `dist` and `schedule` must be valid NUL-terminated strings.
 */
struct NqRule *nq_generate(const char *dist, const char *schedule, uint32_t precision);

/**
 * Generates a nested rule from a moments file (JSON text).
 *
 * # Safety
 * `moments_json` and `schedule` must be valid NUL-terminated strings.
 */
struct NqRule *nq_generate_from_moments(const char *moments_json,
                                        const char *schedule,
                                        uint32_t precision);

/**
 * Parses a rule document from JSON text.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string.
 */
struct NqRule *nq_rule_from_json(const char *json);

/**
 * Releases a rule handle.
 *
 * # Safety
 * `rule` must be a pointer returned by this library, or null. It must
 * not be used afterwards.
 */
void nq_rule_free(struct NqRule *rule);

/**
 * Number of levels in the rule; -1 on a null handle.
 *
 * # Safety
 * `rule` must be a live handle from this library, or null.
 */
int nq_rule_level_count(const struct NqRule *rule);

/**
 * Number of nodes at a 0-based level index; -1 when out of range.
 *
 * # Safety
 * `rule` must be a live handle from this library, or null.
 */
int nq_rule_node_count(const struct NqRule *rule, int level);

/**
 * Measured degree of exactness at a 0-based level index; -2 on error.
 *
 * # Safety
 * `rule` must be a live handle from this library, or null.
 */
int64_t nq_rule_verified_degree(const struct NqRule *rule, int level);

/**
 * Serializes the rule as JSON. Free with `nq_string_free`.
 *
 * # Safety
 * `rule` must be a live handle from this library, or null.
 */
char *nq_rule_to_json(const struct NqRule *rule);

/**
 * Serializes the top level as `node,weight,first_level` CSV. Free with
 * `nq_string_free`.
 *
 * # Safety
 * `rule` must be a live handle from this library, or null.
 */
char *nq_rule_to_csv(const struct NqRule *rule);

/**
 * Applies one extension step (first working p from `p_candidates`,
 * comma-separated) to the rule in place.
 *
 * # Safety
 * `rule` must be a live mutable handle; `p_candidates` a valid string;
 * `moments_json` a valid string or null for built-in distributions.
 */
enum NqStatus nq_rule_extend(struct NqRule *rule,
                             const char *p_candidates,
                             const char *moments_json);

/**
 * Re-derives every invariant of the rule from scratch.
 *
 * # Safety
 * `rule` must be a live handle; `moments_json` a valid string or null
 * for built-in distributions.
 */
enum NqStatus nq_rule_verify(const struct NqRule *rule, const char *moments_json);

/**
 * Writes moments 0..=count of a built-in distribution as moments-file
 * JSON. Free with `nq_string_free`; null on failure.
 *
 * # Safety
 * `dist` must be a valid NUL-terminated string.
 */
char *nq_moments_json(const char *dist, uint32_t count);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* NESTQUAD_H */
