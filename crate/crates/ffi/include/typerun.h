#ifndef TYPERUN_H
#define TYPERUN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TrlStatus {
  TRL_OK = 0,
  /**
   * A required pointer argument was null.
   */
  TRL_NULL_POINTER = 1,
  /**
   * An argument was outside its valid domain.
   */
  TRL_INVALID_ARGUMENT = 2,
  /**
   * Bad magic, version or trailing bits.
   */
  TRL_FORMAT = 3,
  /**
   * The stream ended early.
   */
  TRL_TRUNCATED = 4,
  /**
   * Decoded fields are inconsistent.
   */
  TRL_CORRUPT = 5,
  /**
   * Internal failure; the call had no effect.
   */
  TRL_INTERNAL = 6,
} TrlStatus;

/**
 * Encoded bytes plus the number of meaningful bits.
 */
typedef struct TrlBuffer TrlBuffer;

/**
 * A decoded symbol sequence.
 */
typedef struct TrlSymbols TrlSymbols;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Encodes `len` symbols, each below `alphabet_size`, into a bare container.
 *
 * # Safety
 *
 * `symbols` must point to `len` readable `uint32_t` values (it may be null
 * when `len` is 0). `out` must be a valid pointer; it receives a handle to
 * free with [`trl_buffer_free`], or null on failure.
 */
enum TrlStatus trl_encode(const uint32_t *symbols,
                          size_t len,
                          uint32_t alphabet_size,
                          struct TrlBuffer **out);

/**
 * Like [`trl_encode`], but prefixes the `TRLC` file header.
 *
 * # Safety
 *
 * Same contract as [`trl_encode`].
 */
enum TrlStatus trl_encode_file(const uint32_t *symbols,
                               size_t len,
                               uint32_t alphabet_size,
                               struct TrlBuffer **out);

/**
 * Decodes a bare container produced by [`trl_encode`].
 *
 * # Safety
 *
 * `bytes` must point to `len` readable bytes (null allowed when `len` is 0).
 * `out` must be a valid pointer; it receives a handle to free with
 * [`trl_symbols_free`], or null on failure.
 */
enum TrlStatus trl_decode(const uint8_t *bytes, size_t len, struct TrlSymbols **out);

/**
 * Decodes a `TRLC` file produced by [`trl_encode_file`].
 *
 * # Safety
 *
 * Same contract as [`trl_decode`].
 */
enum TrlStatus trl_decode_file(const uint8_t *bytes, size_t len, struct TrlSymbols **out);

/**
 * # Safety
 *
 * `buf` must be null or a live handle from [`trl_encode`] or [`trl_encode_file`].
 */
const uint8_t *trl_buffer_data(const struct TrlBuffer *buf);

/**
 * Length in bytes, including padding.
 *
 * # Safety
 *
 * `buf` must be null or a live buffer handle.
 */
size_t trl_buffer_len(const struct TrlBuffer *buf);

/**
 * Length in bits, excluding padding.
 *
 * # Safety
 *
 * `buf` must be null or a live buffer handle.
 */
size_t trl_buffer_bit_len(const struct TrlBuffer *buf);

/**
 * # Safety
 *
 * `buf` must be null or a live buffer handle, which is invalid afterwards.
 */
void trl_buffer_free(struct TrlBuffer *buf);

/**
 * # Safety
 *
 * `syms` must be null or a live handle from [`trl_decode`] or [`trl_decode_file`].
 */
const uint32_t *trl_symbols_data(const struct TrlSymbols *syms);

/**
 * # Safety
 *
 * `syms` must be null or a live symbols handle.
 */
size_t trl_symbols_len(const struct TrlSymbols *syms);

/**
 * # Safety
 *
 * `syms` must be null or a live symbols handle.
 */
uint32_t trl_symbols_alphabet_size(const struct TrlSymbols *syms);

/**
 * # Safety
 *
 * `syms` must be null or a live symbols handle, which is invalid afterwards.
 */
void trl_symbols_free(struct TrlSymbols *syms);

/**
 * Shannon entropy in bits of a probability vector summing to 1.
 *
 * # Safety
 *
 * `probs` must point to `len` readable doubles and `out` must be writable.
 */
enum TrlStatus trl_entropy(const double *probs, size_t len, double *out);

/**
 * Asymptotic bits-per-symbol bound of the codec for a source distribution.
 *
 * # Safety
 *
 * `probs` must point to `len` readable doubles and `out` must be writable.
 */
enum TrlStatus trl_total_bound(const double *probs, size_t len, double *out);

/**
 * Message for the most recent failure on this thread, or null if none.
 * The string stays valid until the next failing call on the same thread.
 */
const char *trl_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TYPERUN_H */
