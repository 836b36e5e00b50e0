/* Generated by cbindgen from crates/ffi/src/lib.rs. */

#ifndef FGLAB_H
#define FGLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Index value reported for subgroups of infinite index.
 */
#define FGLAB_INFINITE_INDEX UINT64_MAX

/**
 * Weight value reported for the identity word.
 */
#define FGLAB_WEIGHT_IDENTITY UINT64_MAX

/**
 * Result code of every fallible call.
 */
typedef enum FglabStatus {
  FGLAB_STATUS_OK = 0,
  FGLAB_STATUS_NULL_POINTER = 1,
  FGLAB_STATUS_INVALID_UTF8 = 2,
  FGLAB_STATUS_PARSE = 3,
  FGLAB_STATUS_INVALID_ARGUMENT = 4,
  FGLAB_STATUS_ALPHABET_MISMATCH = 5,
  FGLAB_STATUS_NOT_IN_SUBGROUP = 6,
  FGLAB_STATUS_INFINITE_INDEX = 7,
  FGLAB_STATUS_VERIFICATION = 8,
  FGLAB_STATUS_IO = 9,
  FGLAB_STATUS_PANIC = 10,
} FglabStatus;

typedef struct FglabAlphabet FglabAlphabet;

typedef struct FglabSubgroup FglabSubgroup;

typedef struct FglabWord FglabWord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into the library on this thread; do not free.
 */
const char *fglab_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void fglab_string_free(char *s);

/**
 * Library version string (static; do not free).
 */
const char *fglab_version(void);

/**
 * Builds an alphabet from a comma-separated list such as `"x,y"`.
 *
 * # Safety
 * `names` must be a nul-terminated string; `out` must be writable.
 */
enum FglabStatus fglab_alphabet_new(const char *names, struct FglabAlphabet **out);

/**
 * Number of generators.
 *
 * # Safety
 * `alphabet` must be a live handle or null (returns 0).
 */
size_t fglab_alphabet_len(const struct FglabAlphabet *alphabet);

/**
 * # Safety
 * `alphabet` must come from [`fglab_alphabet_new`] or be null.
 */
void fglab_alphabet_free(struct FglabAlphabet *alphabet);

/**
 * Parses and freely reduces `text` over `alphabet`.
 *
 * # Safety
 * Pointers must be valid; `out` must be writable.
 */
enum FglabStatus fglab_word_parse(const struct FglabAlphabet *alphabet,
                                  const char *text,
                                  struct FglabWord **out);

/**
 * The left-normed commutator `[x, y, x, …, x]` with `n` trailing `x`,
 * over the alphabet `x, y`.
 *
 * # Safety
 * `out` must be writable.
 */
enum FglabStatus fglab_word_omega(size_t n, struct FglabWord **out);

/**
 * Canonical text of `word`; free with [`fglab_string_free`].
 *
 * # Safety
 * `word` must be live; `out` must be writable.
 */
enum FglabStatus fglab_word_to_string(const struct FglabWord *word, char **out);

/**
 * Reduced length, or 0 for null.
 *
 * # Safety
 * `word` must be live or null.
 */
size_t fglab_word_len(const struct FglabWord *word);

/**
 * Reduced product `a b`.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum FglabStatus fglab_word_multiply(const struct FglabWord *a,
                                     const struct FglabWord *b,
                                     struct FglabWord **out);

/**
 * # Safety
 * `word` must be live; `out` must be writable.
 */
enum FglabStatus fglab_word_inverse(const struct FglabWord *word, struct FglabWord **out);

/**
 * `a b a⁻¹ b⁻¹`.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum FglabStatus fglab_word_commutator(const struct FglabWord *a,
                                       const struct FglabWord *b,
                                       struct FglabWord **out);

/**
 * # Safety
 * `word` must come from this library or be null.
 */
void fglab_word_free(struct FglabWord *word);

/**
 * Lower central series weight of `word` with the expansion truncated at
 * `cap`. Writes the exact weight and `exact = true`, or `cap + 1` and
 * `exact = false` when the expansion vanished through `cap`; the identity
 * gives [`FGLAB_WEIGHT_IDENTITY`].
 *
 * # Safety
 * `word` must be live; outputs must be writable.
 */
enum FglabStatus fglab_lcs_weight(const struct FglabWord *word,
                                  size_t cap,
                                  uint64_t *weight,
                                  bool *exact);

/**
 * Loads a subgroup from its JSON description (`generators` or `kernel`).
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum FglabStatus fglab_subgroup_from_json(const char *json, struct FglabSubgroup **out);

/**
 * Index in the ambient free group, or [`FGLAB_INFINITE_INDEX`].
 *
 * # Safety
 * `subgroup` must be live; `out` must be writable.
 */
enum FglabStatus fglab_subgroup_index(const struct FglabSubgroup *subgroup, uint64_t *out);

/**
 * Normality test; finite index only.
 *
 * # Safety
 * `subgroup` must be live; `out` must be writable.
 */
enum FglabStatus fglab_subgroup_is_normal(const struct FglabSubgroup *subgroup, bool *out);

/**
 * Parses `word` over the subgroup's alphabet and tests membership.
 *
 * # Safety
 * Pointers must be valid; `out` must be writable.
 */
enum FglabStatus fglab_subgroup_contains(const struct FglabSubgroup *subgroup,
                                         const char *word,
                                         bool *out);

/**
 * Rewrites a member in the Schreier basis; the text is written to `out` and
 * must be freed with [`fglab_string_free`].
 *
 * # Safety
 * Pointers must be valid; `out` must be writable.
 */
enum FglabStatus fglab_subgroup_rewrite(const struct FglabSubgroup *subgroup,
                                        const char *word,
                                        char **out);

/**
 * Whether a member lies in the commutator subgroup of the subgroup.
 *
 * # Safety
 * Pointers must be valid; `out` must be writable.
 */
enum FglabStatus fglab_subgroup_in_derived(const struct FglabSubgroup *subgroup,
                                           const char *word,
                                           bool *out);

/**
 * # Safety
 * `subgroup` must come from this library or be null.
 */
void fglab_subgroup_free(struct FglabSubgroup *subgroup);

/**
 * Issues and self-verifies the witness certificate for the index-`d`
 * kernel and depth `m`, written to `out` as JSON. `cap = 0` selects the
 * default truncation `m`.
 *
 * # Safety
 * `out` must be writable; free the result with [`fglab_string_free`].
 */
enum FglabStatus fglab_witness_json(uint64_t d, size_t m, size_t cap, char **out);

/**
 * Re-checks a certificate produced by [`fglab_witness_json`] (or any
 * other source). `Ok` means every claim was re-derived.
 *
 * # Safety
 * `json` must be a nul-terminated string.
 */
enum FglabStatus fglab_certificate_verify(const char *json);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* FGLAB_H */
