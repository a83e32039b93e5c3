#pragma once

#include <cstdint>

namespace bcod::detail {

inline constexpr uint64_t word_count(uint64_t bits) { return (bits + 63) >> 6; }

// Mask whose top n bits are set, n in [0, 64].
inline constexpr uint64_t high_mask(uint64_t n) {
    return n == 0 ? 0 : ~uint64_t{0} << (64 - n);
}

// ORs the first nbits of src into dst starting at bit offset `at`.
// dst words fully inside the destination range are plain-stored and must be
// zero beforehand; the two edge words are merged with atomic OR so adjacent
// bit ranges may be blitted concurrently.
void or_blit(uint64_t* dst, uint64_t at, const uint64_t* src, uint64_t nbits);

} // namespace bcod::detail
