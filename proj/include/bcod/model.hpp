#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "bcod/tokenizer.hpp"

namespace bcod {

// Token class histogram. Integer counts are the ground truth; probabilities
// are derived views. Classes with zero count are never stored.
class FreqTable {
public:
    FreqTable() = default;

    static FreqTable from_counts(std::map<uint64_t, uint64_t> counts);

    void add(uint64_t k, uint64_t n = 1);

    const std::map<uint64_t, uint64_t>& counts() const { return counts_; }
    uint64_t total() const { return total_; }
    bool empty() const { return counts_.empty(); }
    uint64_t alphabet_size() const { return counts_.size(); }

    uint64_t count_of(uint64_t k) const;
    double probability(uint64_t k) const;

    bool operator==(const FreqTable&) const = default;

private:
    std::map<uint64_t, uint64_t> counts_;
    uint64_t total_ = 0;
};

FreqTable count(const TokenStream& s);

// Base-2 Shannon entropy of the class distribution, bits per token.
double entropy_bits_per_token(const FreqTable& t);

// Bit cost of leaving every token as its own pattern: sum of n_k * k.
uint64_t identity_payload_bits(const FreqTable& t);

// Classes sorted by descending count, ties broken toward the smaller class.
std::vector<std::pair<uint64_t, uint64_t>> ranked_classes(const FreqTable& t);

namespace serial {
FreqTable count(const TokenStream& s);
}

namespace kernels {
FreqTable count(std::span<const uint64_t> tokens, uint64_t chunk_tokens);
}

} // namespace bcod
