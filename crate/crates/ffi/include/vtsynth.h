#ifndef VTSYNTH_H
#define VTSYNTH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum VtsStatus {
  VTS_STATUS_OK = 0,
  VTS_STATUS_NULL_POINTER = 1,
  VTS_STATUS_PARAMETER = 2,
  VTS_STATUS_INFEASIBLE = 3,
  VTS_STATUS_MALFORMED = 4,
  VTS_STATUS_DECODE_FAILURE = 5,
  VTS_STATUS_RANK_OUT_OF_RANGE = 6,
  VTS_STATUS_NOT_MEMBER = 7,
  VTS_STATUS_BUFFER_TOO_SMALL = 8,
  VTS_STATUS_PANIC = 9,
} VtsStatus;

// Opaque codec handle.
typedef struct VtsCodec VtsCodec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Systematic single-indel code of length `n` (no synthesis constraint).
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum VtsStatus vts_codec_systematic_new(size_t n, struct VtsCodec **out);

// Block encoder; `ell == 0` picks the block count carrying the most bits.
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum VtsStatus vts_codec_block_new(size_t n, int64_t t, size_t ell, struct VtsCodec **out);

// Linear-time encoder with synthesis time at most `2.5 n`.
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum VtsStatus vts_codec_special_new(size_t n, struct VtsCodec **out);

// Direct encoder over one VT slice. With `pin_residues` false the largest
// slice is chosen and `a`, `b` are ignored.
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum VtsStatus vts_codec_direct_new(size_t n,
                                    int64_t t,
                                    bool pin_residues,
                                    size_t a,
                                    uint8_t b,
                                    struct VtsCodec **out);

// # Safety
// `codec` must be null or a handle from this library not yet freed.
void vts_codec_free(struct VtsCodec *codec);

// Codeword length, or 0 for a null handle.
//
// # Safety
// `codec` must be null or a live handle.
size_t vts_codec_length(const struct VtsCodec *codec);

// Message length in bits, or 0 for a null handle.
//
// # Safety
// `codec` must be null or a live handle.
size_t vts_codec_message_bits(const struct VtsCodec *codec);

// Guaranteed upper bound on the synthesis time of every codeword.
//
// # Safety
// `codec` must be null or a live handle.
uint64_t vts_codec_synthesis_bound(const struct VtsCodec *codec);

// Encodes `bits_len` bits into `out_symbols`. `*out_len` receives the
// codeword length, also when the buffer is too small.
//
// # Safety
// Pointers must be valid for the stated lengths; `out_len` must be writable.
enum VtsStatus vts_encode(const struct VtsCodec *codec,
                          const uint8_t *bits,
                          size_t bits_len,
                          uint8_t *out_symbols,
                          size_t out_cap,
                          size_t *out_len);

// Decodes a received word of length `n - 1`, `n` or `n + 1`.
//
// # Safety
// Pointers must be valid for the stated lengths; `out_len` must be writable.
enum VtsStatus vts_decode(const struct VtsCodec *codec,
                          const uint8_t *symbols,
                          size_t len,
                          uint8_t *out_bits,
                          size_t out_cap,
                          size_t *out_len);

// Synthesis time of a word.
//
// # Safety
// `symbols` must be valid for `len` bytes and `out` writable.
enum VtsStatus vts_synthesis_time(const uint8_t *symbols, size_t len, uint64_t *out);

// `A(n, T)` as a NUL-terminated decimal string. `*out_len` receives the
// length without the terminator.
//
// # Safety
// `buf` must be valid for `cap` bytes; `out_len` must be writable.
enum VtsStatus vts_count_words(size_t n, int64_t t, char *buf, size_t cap, size_t *out_len);

// `|VT_n(a, b)|` restricted to synthesis time at most `T`, as a decimal
// string.
//
// # Safety
// `buf` must be valid for `cap` bytes; `out_len` must be writable.
enum VtsStatus vts_count_vt(size_t n,
                            int64_t t,
                            size_t a,
                            uint8_t b,
                            char *buf,
                            size_t cap,
                            size_t *out_len);

// Static description of a status code; unknown codes get a generic text.
const char *vts_status_message(int32_t status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VTSYNTH_H */
