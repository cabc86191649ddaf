#ifndef HAIRPIN_H
#define HAIRPIN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HpStatus {
  HP_STATUS_OK = 0,
  HP_STATUS_NULL_POINTER = 1,
  HP_STATUS_INVALID_UTF8 = 2,
  HP_STATUS_ALPHABET = 3,
  HP_STATUS_PARSE = 4,
  HP_STATUS_BOUND_TOO_SMALL = 5,
  HP_STATUS_PRECONDITION = 6,
  HP_STATUS_VERIFICATION_FAILED = 7,
  HP_STATUS_PANIC = 8,
} HpStatus;

typedef enum HpOutcome {
  HP_OUTCOME_REGULAR = 0,
  HP_OUTCOME_NON_REGULAR = 2,
  HP_OUTCOME_UNKNOWN = 3,
} HpOutcome;

typedef enum HpSides {
  HP_SIDES_LEFT = 0,
  HP_SIDES_RIGHT = 1,
  HP_SIDES_BOTH = 2,
} HpSides;

// Opaque involution alphabet.
typedef struct HpAlphabet HpAlphabet;

// Opaque regularity verdict.
typedef struct HpVerdict HpVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. Owned by the
// library and valid until the next failing call on the same thread.
const char *hp_last_error(void);

// The DNA alphabet A<->T, C<->G.
struct HpAlphabet *hp_alphabet_dna(void);

// Letters a..z paired with their macron forms.
struct HpAlphabet *hp_alphabet_latin(void);

// Parses an alphabet file (`letter<TAB>complement` per line).
enum HpStatus hp_alphabet_parse(const char *text, struct HpAlphabet **out);

void hp_alphabet_free(struct HpAlphabet *alphabet);

// Decides regularity of the iterated completion of `word`. A regular
// verdict is checked against the closure up to `verify_bound`, or up to
// |word| + 6k + 16 when `verify_bound` is 0.
enum HpStatus hp_decide(const struct HpAlphabet *alphabet,
                        const char *word,
                        const char *primer,
                        uintptr_t verify_bound,
                        struct HpVerdict **out);

// Outcome of a verdict; `HP_OUTCOME_UNKNOWN` for a NULL handle.
enum HpOutcome hp_verdict_outcome(const struct HpVerdict *verdict);

// Writes the (m, n) class of the decided word.
enum HpStatus hp_verdict_class(const struct HpVerdict *verdict, uintptr_t *m, uintptr_t *n);

// The verdict as JSON, including the automaton or witness. Free with
// `hp_string_free`. NULL for a NULL handle.
char *hp_verdict_json(const struct HpVerdict *verdict);

void hp_verdict_free(struct HpVerdict *verdict);

// α-prefixes, ᾱ-suffixes and class of `word` as JSON.
enum HpStatus hp_analyze_json(const struct HpAlphabet *alphabet,
                              const char *word,
                              const char *primer,
                              char **out);

// The closure members up to `bound`, sorted, as a JSON array of strings.
// `count` (may be NULL) receives the number of members.
enum HpStatus hp_closure_json(const struct HpAlphabet *alphabet,
                              const char *word,
                              const char *primer,
                              uintptr_t bound,
                              enum HpSides sides,
                              char **out,
                              uintptr_t *count);

// Releases a string returned by this library.
void hp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HAIRPIN_H */
