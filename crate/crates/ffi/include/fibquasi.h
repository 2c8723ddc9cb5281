#ifndef FIBQUASI_H
#define FIBQUASI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/*
 Values accepted wherever a `category` argument is taken.
 */
typedef enum FqCategory {
  FQ_CATEGORY_BORDERS = 0,
  FQ_CATEGORY_COVERS = 1,
  FQ_CATEGORY_LEFT_SEEDS = 2,
  FQ_CATEGORY_RIGHT_SEEDS = 3,
  FQ_CATEGORY_SEEDS = 4,
  FQ_CATEGORY_CIRCULAR_COVERS = 5,
} FqCategory;

typedef enum FqStatus {
  FQ_STATUS_OK = 0,
  FQ_STATUS_NULL_POINTER = 1,
  FQ_STATUS_INVALID_UTF8 = 2,
  FQ_STATUS_INVALID_LETTER = 3,
  FQ_STATUS_EMPTY_INPUT = 4,
  FQ_STATUS_DOMAIN = 5,
  FQ_STATUS_MATERIALIZATION_GUARD = 6,
  FQ_STATUS_SIZE_REFUSED = 7,
  FQ_STATUS_CAP_EXCEEDED = 8,
  FQ_STATUS_BUDGET = 9,
  FQ_STATUS_INDEX_OUT_OF_RANGE = 10,
  FQ_STATUS_INTERNAL = 11,
  FQ_STATUS_PANIC = 12,
} FqStatus;

/*
 A word over `{a, b}`.
 */
typedef struct FqWord FqWord;

/*
 A set of words in canonical (length, then lexicographic) order.
 */
typedef struct FqWordSet FqWordSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread; empty after a success.
 The pointer stays valid until the next `fq_` call on this thread.
 */
const char *fq_last_error_message(void);

/*
 Library version as a static NUL-terminated string.
 */
const char *fq_version(void);

/*
 Frees a string returned by this library. Accepts null.

 # Safety
 `s` must come from this library and must not be used afterwards.
 */
void fq_string_free(char *s);

/*
 Parses a NUL-terminated string over `{a, b}`. The empty string gives the
 empty word.

 # Safety
 `text` must be a valid C string and `out` a valid pointer.
 */
enum FqStatus fq_word_parse(const char *text, struct FqWord **out);

/*
 `F_n`, subject to the materialization limit (`FIBQUASI_NMAX`, default 30).

 # Safety
 `out` must be a valid pointer.
 */
enum FqStatus fq_fib_word(uint32_t n, struct FqWord **out);

/*
 `|F_n|` for `n <= 90`, without building the word.

 # Safety
 `out` must be a valid pointer.
 */
enum FqStatus fq_fib_len(uint32_t n, uint64_t *out);

/*
 # Safety
 `w` must be null or a handle from this library, not used afterwards.
 */
void fq_word_free(struct FqWord *w);

/*
 Length of `w`; 0 for null.

 # Safety
 `w` must be null or a live handle.
 */
uintptr_t fq_word_len(const struct FqWord *w);

/*
 The word as a newly allocated C string, or null if `w` is null.

 # Safety
 `w` must be null or a live handle.
 */
char *fq_word_to_string(const struct FqWord *w);

/*
 Smallest period of `y`.

 # Safety
 `y` must be a live handle and `out` a valid pointer.
 */
enum FqStatus fq_period(const struct FqWord *y, uintptr_t *out);

/*
 Whether `u` covers `y`.

 # Safety
 `u`, `y` must be live handles and `out` a valid pointer.
 */
enum FqStatus fq_is_cover(const struct FqWord *u, const struct FqWord *y, bool *out);

/*
 Whether the factor `u` of `y` is a seed of `y`.

 # Safety
 `u`, `y` must be live handles and `out` a valid pointer.
 */
enum FqStatus fq_is_seed(const struct FqWord *u, const struct FqWord *y, bool *out);

/*
 The set of `category` (an [`FqCategory`] value) computed directly on `y`.
 Seeds and circular covers refuse words over 2000 letters unless `force`.

 # Safety
 `y` must be a live handle and `out` a valid pointer.
 */
enum FqStatus fq_analyze(const struct FqWord *y,
                         uint32_t category,
                         bool force,
                         struct FqWordSet **out);

/*
 The closed-form set of `category` for `F_n`.

 # Safety
 `out` must be a valid pointer.
 */
enum FqStatus fq_enumerate(uint32_t n, uint32_t category, struct FqWordSet **out);

/*
 # Safety
 `s` must be null or a handle from this library, not used afterwards.
 */
void fq_wordset_free(struct FqWordSet *s);

/*
 Number of words in `s`; 0 for null.

 # Safety
 `s` must be null or a live handle.
 */
uintptr_t fq_wordset_len(const struct FqWordSet *s);

/*
 A copy of the `index`-th word of `s` in canonical order.

 # Safety
 `s` must be a live handle and `out` a valid pointer.
 */
enum FqStatus fq_wordset_get(const struct FqWordSet *s, uintptr_t index, struct FqWord **out);

/*
 The set as a JSON array of strings, or null if `s` is null.

 # Safety
 `s` must be null or a live handle.
 */
char *fq_wordset_to_json(const struct FqWordSet *s);

/*
 Start positions (1-based) of `F_m` in `F_n`. Writes at most `capacity`
 positions to `buf` and the total number to `count`; call with
 `capacity = 0` to size the buffer.

 # Safety
 `buf` must hold `capacity` elements (it may be null when `capacity` is 0)
 and `count` must be a valid pointer.
 */
enum FqStatus fq_fib_occurrences(uint32_t n,
                                 uint32_t m,
                                 uintptr_t *buf,
                                 uintptr_t capacity,
                                 uintptr_t *count);

/*
 Compares the closed form with the oracle at `(n, category)` and returns
 the report as a JSON string in `out_json`; `passed` receives the verdict.

 # Safety
 `out_json` and `passed` must be valid pointers.
 */
enum FqStatus fq_check_category(uint32_t n, uint32_t category, bool *passed, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FIBQUASI_H */
