#pragma once

// Shared test utilities and independent oracles. Everything here must stay
// independent of the library code paths it checks: the profile enumerator
// and the expansion oracle are the reference answers, not wrappers.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bcod/bitvec.hpp"
#include "bcod/model.hpp"
#include "bcod/tokenizer.hpp"

namespace testutil {

inline bcod::BitVec random_bits(std::mt19937_64& rng, uint64_t len, double ones_density = 0.5) {
    bcod::BitVec v;
    std::bernoulli_distribution coin(ones_density);
    for (uint64_t i = 0; i < len; ++i) v.push_back(coin(rng));
    return v;
}

inline bcod::FreqTable random_table(std::mt19937_64& rng, uint64_t max_classes = 6,
                                    uint64_t max_count = 50) {
    std::uniform_int_distribution<uint64_t> nclasses(1, max_classes);
    std::uniform_int_distribution<uint64_t> klass(1, 12);
    std::uniform_int_distribution<uint64_t> cnt(1, max_count);
    bcod::FreqTable t;
    const uint64_t m = nclasses(rng);
    while (t.alphabet_size() < m) t.add(klass(rng), cnt(rng));
    return t;
}

inline bcod::TokenStream stream_with_counts(const std::vector<std::pair<uint64_t, uint64_t>>& counts,
                                            uint64_t residue = 0) {
    bcod::TokenStream s;
    s.residue = residue;
    // round-robin interleave so the stream is not sorted by class
    auto remaining = counts;
    bool more = true;
    while (more) {
        more = false;
        for (auto& [k, n] : remaining) {
            if (n > 0) {
                s.tokens.push_back(k);
                --n;
                more = true;
            }
        }
    }
    return s;
}

// Minimum payload cost over every Kraft-feasible prefix-code length profile,
// by exhaustive enumeration. Counts are paired optimally with the profile
// (largest count with shortest length). Independent of the Huffman builder.
inline uint64_t min_prefix_cost(std::vector<uint64_t> counts) {
    const size_t m = counts.size();
    if (m == 0) return 0;
    std::sort(counts.begin(), counts.end(), std::greater<>());
    const uint64_t max_len = m == 1 ? 1 : m; // optimal profiles never exceed m-1
    uint64_t best = ~uint64_t{0};
    std::vector<uint64_t> profile(m);
    // budget = Kraft sum scaled by 2^max_len
    auto rec = [&](auto&& self, size_t i, uint64_t min_len, uint64_t budget, uint64_t cost) -> void {
        if (budget > (uint64_t{1} << max_len)) return;
        if (cost >= best) return;
        if (i == m) {
            best = cost;
            return;
        }
        for (uint64_t l = min_len; l <= max_len; ++l)
            self(self, i + 1, l, budget + (uint64_t{1} << (max_len - l)), cost + counts[i] * l);
    };
    rec(rec, 0, 1, 0, 0);
    return best;
}

// The first `len` bits of the binary expansion of cum/total, computed by one
// big-integer multiply+shift — a different route than repeated doubling.
inline std::string shannon_code_oracle(uint64_t cum, uint64_t total, uint64_t len) {
    const unsigned __int128 scaled = ((unsigned __int128)cum << len) / total;
    std::string s(len, '0');
    for (uint64_t i = 0; i < len; ++i)
        if ((scaled >> (len - 1 - i)) & 1) s[i] = '1';
    return s;
}

} // namespace testutil
