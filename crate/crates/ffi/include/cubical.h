#ifndef CUBICAL_H
#define CUBICAL_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CtsStatus {
  CTS_STATUS_OK = 0,
  CTS_STATUS_NULL_POINTER = 1,
  CTS_STATUS_INVALID_UTF8 = 2,
  CTS_STATUS_PARSE_ERROR = 3,
  CTS_STATUS_NOT_CUBICAL = 4,
  CTS_STATUS_INVALID_ARGUMENT = 5,
  CTS_STATUS_BUFFER_TOO_SMALL = 6,
  CTS_STATUS_PANIC = 7,
} CtsStatus;

typedef enum CtsKind {
  CTS_KIND_MEDIUM = 0,
  CTS_KIND_CUBICAL_NOT_MEDIUM = 1,
  CTS_KIND_NOT_CUBICAL = 2,
} CtsKind;

typedef enum CtsAxiom {
  CTS_AXIOM_C1 = 0,
  CTS_AXIOM_C2 = 1,
  CTS_AXIOM_C3 = 2,
  CTS_AXIOM_C4 = 3,
  CTS_AXIOM_MA = 4,
  CTS_AXIOM_MB = 5,
} CtsAxiom;

/**
 * A validated Markov chain on a cubical system.
 */
typedef struct CtsChain CtsChain;

/**
 * A parsed token system with its optional distributions.
 */
typedef struct CtsSystem CtsSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty if none. The
 * pointer stays valid until the next failing call on this thread.
 */
const char *cts_last_error(void);

/**
 * Library version, statically allocated.
 */
const char *cts_version(void);

/**
 * # Safety
 * `s` is null or a string returned by this library, not yet freed.
 */
void cts_string_free(char *s);

/**
 * Parses `.tks` text into a new system handle.
 *
 * # Safety
 * `text` is a NUL-terminated string; `out` is writable.
 */
enum CtsStatus cts_system_parse(const char *text, struct CtsSystem **out);

/**
 * Parses `.fam` text and builds the G-system of the family.
 *
 * # Safety
 * `text` is a NUL-terminated string; `out` is writable.
 */
enum CtsStatus cts_family_parse(const char *text, struct CtsSystem **out);

/**
 * # Safety
 * `system` is null or a handle from this library, not yet freed.
 */
void cts_system_free(struct CtsSystem *system);

/**
 * # Safety
 * `system` is a live handle; `out` is writable.
 */
enum CtsStatus cts_system_state_count(const struct CtsSystem *system, size_t *out);

/**
 * # Safety
 * `system` is a live handle; `out` is writable.
 */
enum CtsStatus cts_system_token_count(const struct CtsSystem *system, size_t *out);

/**
 * Name of state `index` as a new string.
 *
 * # Safety
 * `system` is a live handle; `out` is writable.
 */
enum CtsStatus cts_system_state_name(const struct CtsSystem *system, size_t index, char **out);

/**
 * # Safety
 * `system` is a live handle; `out` is writable.
 */
enum CtsStatus cts_system_classify(const struct CtsSystem *system, enum CtsKind *out);

/**
 * Checks one axiom. When `witness` is non-null it receives a description
 * of the verdict, including the counterexample if the axiom fails.
 *
 * # Safety
 * `system` is a live handle; `holds` is writable; `witness` is null or
 * writable.
 */
enum CtsStatus cts_system_check_axiom(const struct CtsSystem *system,
                                      enum CtsAxiom axiom,
                                      bool *holds,
                                      char **witness);

/**
 * Content of state `index`, rendered as `{ tau~, mu }`.
 *
 * # Safety
 * `system` is a live handle; `out` is writable.
 */
enum CtsStatus cts_system_state_content(const struct CtsSystem *system, size_t index, char **out);

/**
 * The cube embedding from the first state: one line per state,
 * `name<TAB>{labels}`.
 *
 * # Safety
 * `system` is a live handle; `out` is writable.
 */
enum CtsStatus cts_system_embed(const struct CtsSystem *system, char **out);

/**
 * Builds a chain from token probabilities `theta` (token order). A null
 * `theta` uses the document's theta line; a null `xi` uses the document's
 * xi line, or the uniform distribution.
 *
 * # Safety
 * `system` is a live handle; non-null arrays hold the stated number of
 * values; `out` is writable.
 */
enum CtsStatus cts_chain_new(const struct CtsSystem *system,
                             const double *theta,
                             size_t theta_len,
                             const double *xi,
                             size_t xi_len,
                             struct CtsChain **out);

/**
 * # Safety
 * `chain` is null or a handle from this library, not yet freed.
 */
void cts_chain_free(struct CtsChain *chain);

/**
 * Closed-form stationary distribution, in state order.
 *
 * # Safety
 * `chain` is a live handle; `out` holds at least `len` values.
 */
enum CtsStatus cts_chain_stationary(const struct CtsChain *chain, double *out, size_t len);

/**
 * Stationary distribution by linear solve, in state order.
 *
 * # Safety
 * `chain` is a live handle; `out` holds at least `len` values.
 */
enum CtsStatus cts_chain_stationary_solved(const struct CtsChain *chain, double *out, size_t len);

/**
 * Simulates `steps` steps from a seeded generator and writes visit
 * counts per state, including the initial state.
 *
 * # Safety
 * `chain` is a live handle; `counts` holds at least `len` values.
 */
enum CtsStatus cts_chain_simulate(const struct CtsChain *chain,
                                  uint64_t seed,
                                  size_t steps,
                                  uint64_t *counts,
                                  size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CUBICAL_H */
