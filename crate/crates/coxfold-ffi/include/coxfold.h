/* C interface of the coxfold engine. Opaque handles own their
 * memory; every returned string is freed with cox_string_free. */

#ifndef COXFOLD_H
#define COXFOLD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes of every C entry point.
 */
typedef enum CoxStatus {
  CoxStatus_Ok = 0,
  CoxStatus_NullArgument = 1,
  CoxStatus_InvalidUtf8 = 2,
  CoxStatus_ParseError = 3,
  CoxStatus_UnknownToken = 4,
  CoxStatus_Unsupported = 5,
  CoxStatus_BudgetExhausted = 6,
  CoxStatus_Internal = 7,
} CoxStatus;

/**
 * Verdict kinds as plain C values.
 */
typedef enum CoxVerdictKind {
  CoxVerdictKind_Holds = 0,
  CoxVerdictKind_Fails = 1,
  CoxVerdictKind_VerifiedToDepth = 2,
  CoxVerdictKind_CertifiedAffine = 3,
} CoxVerdictKind;

/**
 * Opaque pair handle: a Coxeter graph with a symmetry group.
 */
typedef struct CoxPair CoxPair;

/**
 * Verdict summary: kind, the verified depth when applicable, and whether
 * the graph is a truncation of an infinite family.
 */
typedef struct CoxVerdict {
  enum CoxVerdictKind kind;
  uint32_t depth;
  bool truncation_capped;
} CoxVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Build a pair from a catalog token such as `E6:g` or `tD4:rot4`.
 *
 * # Safety
 * `token` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CoxStatus cox_pair_from_token(const char *token, struct CoxPair **out);

/**
 * Build a pair from a graph-spec document (the same format the CLI
 * accepts from files).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CoxStatus cox_pair_from_spec(const char *text, struct CoxPair **out);

/**
 * Release a pair handle.
 *
 * # Safety
 * `pair` must come from a cox_pair_* constructor and not be used after.
 */
void cox_pair_free(struct CoxPair *pair);

/**
 * Decide the basis property; writes the verdict summary.
 *
 * # Safety
 * `pair` must be a live handle and `out` a valid pointer.
 */
enum CoxStatus cox_check(const struct CoxPair *pair,
                         uint32_t depth,
                         uint32_t orbit_depth,
                         struct CoxVerdict *out);

/**
 * Decide the basis property and return the full verdict report as JSON.
 *
 * # Safety
 * `pair` must be a live handle and `out` a valid pointer; the returned
 * string is freed with `cox_string_free`.
 */
enum CoxStatus cox_check_json(const struct CoxPair *pair,
                              uint32_t depth,
                              uint32_t orbit_depth,
                              char **out);

/**
 * Fold the pair and return the folded-system report as JSON.
 *
 * # Safety
 * `pair` must be a live handle and `out` a valid pointer; the returned
 * string is freed with `cox_string_free`.
 */
enum CoxStatus cox_fold_json(const struct CoxPair *pair, char **out);

/**
 * Enumerate positive roots to the given depth; JSON report.
 *
 * # Safety
 * `pair` must be a live handle and `out` a valid pointer; the returned
 * string is freed with `cox_string_free`.
 */
enum CoxStatus cox_roots_json(const struct CoxPair *pair, uint32_t depth, char **out);

/**
 * Classify the pair against the catalog patterns; JSON report.
 *
 * # Safety
 * `pair` must be a live handle and `out` a valid pointer; the returned
 * string is freed with `cox_string_free`.
 */
enum CoxStatus cox_classify_json(const struct CoxPair *pair, char **out);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must come from a cox_*_json call and not be used after.
 */
void cox_string_free(char *s);

/**
 * Copy the calling thread's last error message into `buf` (including a
 * trailing NUL when it fits). Returns the full message length.
 *
 * # Safety
 * `buf` must point to `len` writable bytes, or be null to query the length.
 */
uintptr_t cox_last_error(char *buf, uintptr_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COXFOLD_H */
