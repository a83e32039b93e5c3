#pragma once

#include <cstdint>
#include <vector>

#include "bcod/bitvec.hpp"

namespace bcod {

// Greedy run parse of a bit stream: every maximal run of r ones followed by
// a zero is the token of class k = r + 1 (bit pattern 1^(k-1) 0), ones left
// hanging at the end are the residue. Sum of all k plus the residue equals
// the source length, and detokenize(tokenize(v)) == v for every v.
struct TokenStream {
    std::vector<uint64_t> tokens; // class k per token, in stream order
    uint64_t residue = 0;         // trailing 1-bits with no terminating zero

    bool operator==(const TokenStream&) const = default;
};

// Canonical bit pattern of class k: (k-1) ones then one zero.
BitVec token_bits(uint64_t k);

TokenStream tokenize(const BitVec& v);
BitVec detokenize(const TokenStream& s);

namespace serial {
// Bit-at-a-time reference implementations.
TokenStream tokenize(const BitVec& v);
BitVec detokenize(const TokenStream& s);
} // namespace serial

namespace kernels {
// Word-level implementations, OpenMP-parallel across chunks. The grain
// parameters exist so tests can force multi-chunk execution on small inputs.
TokenStream tokenize(const BitVec& v, uint64_t chunk_words);
BitVec detokenize(const TokenStream& s, uint64_t chunk_tokens);
} // namespace kernels

} // namespace bcod
