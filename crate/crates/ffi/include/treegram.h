#ifndef TREEGRAM_H
#define TREEGRAM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TgStatus {
  TG_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  TG_STATUS_NULL_ARGUMENT = 1,
  /**
   * Input text was not UTF-8.
   */
  TG_STATUS_INVALID_UTF8 = 2,
  /**
   * Grammar text is malformed.
   */
  TG_STATUS_PARSE_ERROR = 3,
  /**
   * Grammar text is well formed but violates a grammar constraint.
   */
  TG_STATUS_INVALID_GRAMMAR = 4,
  /**
   * The grammar lies outside the class a conversion accepts.
   */
  TG_STATUS_CONVERSION_FAILED = 5,
  /**
   * A bound argument was zero where a positive value is needed.
   */
  TG_STATUS_INVALID_BOUND = 6,
  /**
   * The library panicked; this is a bug.
   */
  TG_STATUS_INTERNAL = 7,
} TgStatus;

typedef enum TgKind {
  TG_KIND_CFG = 0,
  TG_KIND_CFTG = 1,
  TG_KIND_RTG = 2,
  TG_KIND_TAG = 3,
} TgKind;

/**
 * Opaque grammar handle.
 */
typedef struct TgGrammar TgGrammar;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses and validates grammar text. On success `*out` owns a new handle.
 *
 * # Safety
 * `src` must be a nul-terminated string and `out` a valid pointer.
 */
enum TgStatus tg_grammar_parse(const char *src, struct TgGrammar **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `g` must come from this library and not be used afterwards.
 */
void tg_grammar_free(struct TgGrammar *g);

/**
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum TgStatus tg_grammar_kind(const struct TgGrammar *g, enum TgKind *out);

/**
 * Checks the grammar constraints again. Parsed grammars always pass.
 *
 * # Safety
 * `g` must be a live handle.
 */
enum TgStatus tg_grammar_validate(const struct TgGrammar *g);

/**
 * Converts `g` into the formalism `to`, chaining translations as needed.
 * On success `*out` owns a new handle.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum TgStatus tg_grammar_convert(const struct TgGrammar *g, enum TgKind to, struct TgGrammar **out);

/**
 * Grammar text in the file format. Free the result with [`tg_string_free`].
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum TgStatus tg_grammar_to_string(const struct TgGrammar *g, char **out);

/**
 * Strings of length at most `max_len`, one per line in canonical order, the
 * empty string shown as `<eps>`. `*complete` tells whether no bound cut the
 * enumeration short. Free the result with [`tg_string_free`].
 *
 * # Safety
 * `g` must be a live handle; `out` and `complete` valid pointers.
 */
enum TgStatus tg_enumerate_strings(const struct TgGrammar *g,
                                   size_t max_len,
                                   char **out,
                                   bool *complete);

/**
 * Compares the string languages of two grammars up to `max_len`. Both
 * flags are written on success; `*complete` is false when either side was
 * cut short by a bound.
 *
 * # Safety
 * `left` and `right` must be live handles; `equal` and `complete` valid
 * pointers.
 */
enum TgStatus tg_check_weak_equiv(const struct TgGrammar *left,
                                  const struct TgGrammar *right,
                                  size_t max_len,
                                  bool *equal,
                                  bool *complete);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void tg_string_free(char *s);

/**
 * Message for the last failed call on this thread, empty after a success.
 * Valid until the next call into the library on the same thread.
 */
const char *tg_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TREEGRAM_H */
