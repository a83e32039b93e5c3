#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "bcod/bitvec.hpp"
#include "bcod/model.hpp"

namespace bcod {

enum class CodeKind : uint8_t { huffman, shannon, symmetric, identity };

const char* code_kind_name(CodeKind k);

// Bijective map from token class to codeword. The prefix-free / suffix-free
// flags are computed from the actual entries at construction, not asserted.
class CodeBook {
public:
    CodeBook(CodeKind kind, std::map<uint64_t, BitVec> entries);

    CodeKind kind() const { return kind_; }
    const std::map<uint64_t, BitVec>& entries() const { return entries_; }
    uint64_t size() const { return entries_.size(); }

    const BitVec& codeword(uint64_t k) const; // throws incomplete_codebook
    const BitVec* find(uint64_t k) const;     // nullptr when absent

    bool prefix_free() const { return prefix_free_; }
    bool suffix_free() const { return suffix_free_; }

private:
    CodeKind kind_;
    std::map<uint64_t, BitVec> entries_;
    bool prefix_free_ = false;
    bool suffix_free_ = false;
};

// The n-th palindromic codeword of the family {0, 11, 101, 1001, 10001, ...}.
// Length equals rank and every member is its own reversal; the family is
// prefix-free and suffix-free.
BitVec palindrome(uint64_t rank);

// Minimum-redundancy prefix code over the table. Only the length profile
// comes from the merge tree; codewords are assigned canonically, sorted by
// (length, class), so the book is deterministic and rebuildable from lengths
// alone. Equal-weight merges keep smaller classes shallower. A single-class
// alphabet gets the 1-bit codeword "0".
CodeBook build_huffman(const FreqTable& t);

// Classes sorted by descending probability (ties toward smaller class);
// codeword i is the first ceil(-log2 p_i) bits of the binary expansion of
// the cumulative probability before it. All arithmetic is exact over the
// integer counts, so codewords are bit-reproducible from the counts.
CodeBook build_shannon(const FreqTable& t);

// Classes ranked by descending count (ties toward smaller class); rank r
// receives palindrome(r). Both prefix-free and suffix-free.
CodeBook build_symmetric(const FreqTable& t);

// Each class mapped to its own token pattern; the do-nothing baseline.
CodeBook build_identity(const FreqTable& t);

// In-order concatenation of the codewords for s.tokens. The residue is not
// encoded here; the container carries it.
BitVec encode(const TokenStream& s, const CodeBook& b);

// Greedy prefix matching, left to right, consuming the payload exactly.
// Requires b.prefix_free(). Leftover bits mid-codeword throw
// truncated_payload; a position matching no codeword throws invalid_payload.
std::vector<uint64_t> decode(const BitVec& payload, const CodeBook& b);

// Greedy suffix matching from the last bit toward the first; classes are
// reported in the order encountered, i.e. reversed relative to decode().
// Requires b.suffix_free().
std::vector<uint64_t> decode_reverse(const BitVec& payload, const CodeBook& b);

double kraft_sum(const CodeBook& b);

// Canonical codeword assignment from a length profile: (class, length) pairs
// sorted by (length, class) receive numerically increasing codes. Throws
// domain_error when the lengths violate the Kraft inequality.
std::map<uint64_t, BitVec> canonical_codes(std::vector<std::pair<uint64_t, uint64_t>> class_to_len);

// Sum of n_k * len(codeword(k)): payload cost of the book on this table.
uint64_t payload_cost(const FreqTable& t, const CodeBook& b);

namespace serial {
BitVec encode(const TokenStream& s, const CodeBook& b);
}

namespace kernels {
BitVec encode(std::span<const uint64_t> tokens, const CodeBook& b, uint64_t chunk_tokens);
}

} // namespace bcod
