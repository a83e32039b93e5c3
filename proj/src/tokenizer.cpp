#include "bcod/tokenizer.hpp"

#include <algorithm>
#include <bit>

#include "bcod/detail/bits.hpp"

namespace bcod {

namespace {
constexpr uint64_t kChunkWordsDefault = uint64_t{1} << 15;  // 2 Mbit per chunk
constexpr uint64_t kChunkTokensDefault = uint64_t{1} << 16;
} // namespace

BitVec token_bits(uint64_t k) {
    if (k == 0) throw domain_error("token class must be positive");
    BitVec v;
    v.append_ones(k - 1);
    v.append_zeros(1);
    return v;
}

TokenStream tokenize(const BitVec& v) { return kernels::tokenize(v, kChunkWordsDefault); }

BitVec detokenize(const TokenStream& s) { return kernels::detokenize(s, kChunkTokensDefault); }

namespace serial {

TokenStream tokenize(const BitVec& v) {
    TokenStream s;
    uint64_t run = 0;
    for (uint64_t i = 0; i < v.size(); ++i) {
        if (v.bit(i)) {
            ++run;
        } else {
            s.tokens.push_back(run + 1);
            run = 0;
        }
    }
    s.residue = run;
    return s;
}

BitVec detokenize(const TokenStream& s) {
    BitVec v;
    for (uint64_t k : s.tokens) {
        if (k == 0) throw domain_error("token class must be positive");
        for (uint64_t j = 0; j + 1 < k; ++j) v.push_back(true);
        v.push_back(false);
    }
    for (uint64_t j = 0; j < s.residue; ++j) v.push_back(true);
    return v;
}

} // namespace serial

namespace kernels {

// Token boundaries are exactly the positions of 0-bits: the j-th token class
// equals the distance between consecutive zeros. Pass 1 counts zeros per
// chunk, a short serial scan provides each chunk's output offset and the
// last zero before it, pass 2 writes the distances.
TokenStream tokenize(const BitVec& v, uint64_t chunk_words) {
    TokenStream s;
    const uint64_t len = v.size();
    if (len == 0) return s;
    if (chunk_words == 0) chunk_words = 1;

    const auto words = v.words();
    const uint64_t nw = words.size();
    const uint64_t nc = (nw + chunk_words - 1) / chunk_words;

    auto zeros_of = [&](uint64_t wi) -> uint64_t {
        const uint64_t valid = std::min<uint64_t>(64, len - 64 * wi);
        return ~words[wi] & detail::high_mask(valid);
    };

    std::vector<uint64_t> zero_count(nc, 0);
    std::vector<int64_t> last_zero(nc, -1);

#pragma omp parallel for schedule(static) if (nc > 1)
    for (int64_t c = 0; c < int64_t(nc); ++c) {
        const uint64_t w0 = uint64_t(c) * chunk_words;
        const uint64_t w1 = std::min(nw, w0 + chunk_words);
        uint64_t zc = 0;
        int64_t last = -1;
        for (uint64_t wi = w0; wi < w1; ++wi) {
            const uint64_t x = zeros_of(wi);
            zc += uint64_t(std::popcount(x));
            if (x) last = int64_t(wi * 64 + (63 - std::countr_zero(x)));
        }
        zero_count[c] = zc;
        last_zero[c] = last;
    }

    std::vector<uint64_t> out_base(nc, 0);
    std::vector<int64_t> prev_zero(nc, -1);
    uint64_t total = 0;
    int64_t prev = -1;
    for (uint64_t c = 0; c < nc; ++c) {
        out_base[c] = total;
        prev_zero[c] = prev;
        total += zero_count[c];
        if (last_zero[c] >= 0) prev = last_zero[c];
    }

    s.tokens.resize(total);
    s.residue = prev >= 0 ? len - 1 - uint64_t(prev) : len;

#pragma omp parallel for schedule(static) if (nc > 1)
    for (int64_t c = 0; c < int64_t(nc); ++c) {
        const uint64_t w0 = uint64_t(c) * chunk_words;
        const uint64_t w1 = std::min(nw, w0 + chunk_words);
        uint64_t idx = out_base[c];
        int64_t before = prev_zero[c];
        for (uint64_t wi = w0; wi < w1; ++wi) {
            uint64_t x = zeros_of(wi);
            while (x) {
                const int off = std::countl_zero(x);
                const int64_t pos = int64_t(wi * 64) + off;
                s.tokens[idx++] = uint64_t(pos - before);
                before = pos;
                x &= ~(uint64_t{1} << (63 - off));
            }
        }
    }
    return s;
}

BitVec detokenize(const TokenStream& s, uint64_t chunk_tokens) {
    const uint64_t n = s.tokens.size();
    if (chunk_tokens == 0) chunk_tokens = 1;
    const uint64_t nc = n == 0 ? 0 : (n + chunk_tokens - 1) / chunk_tokens;

    std::vector<uint64_t> chunk_bits(nc, 0);
    int bad_class = 0;

#pragma omp parallel for schedule(static) reduction(| : bad_class) if (nc > 1)
    for (int64_t c = 0; c < int64_t(nc); ++c) {
        const uint64_t t0 = uint64_t(c) * chunk_tokens;
        const uint64_t t1 = std::min(n, t0 + chunk_tokens);
        uint64_t sum = 0;
        for (uint64_t i = t0; i < t1; ++i) {
            bad_class |= int(s.tokens[i] == 0);
            sum += s.tokens[i];
        }
        chunk_bits[c] = sum;
    }
    if (bad_class) throw domain_error("token class must be positive");

    std::vector<uint64_t> chunk_off(nc, 0);
    uint64_t total = 0;
    for (uint64_t c = 0; c < nc; ++c) {
        chunk_off[c] = total;
        total += chunk_bits[c];
    }

    BitVec out = BitVec::of_size(total);
    uint64_t* dst = out.words().data();

#pragma omp parallel for schedule(static) if (nc > 1)
    for (int64_t c = 0; c < int64_t(nc); ++c) {
        const uint64_t t0 = uint64_t(c) * chunk_tokens;
        const uint64_t t1 = std::min(n, t0 + chunk_tokens);
        BitVec local;
        for (uint64_t i = t0; i < t1; ++i) {
            local.append_ones(s.tokens[i] - 1);
            local.append_zeros(1);
        }
        detail::or_blit(dst, chunk_off[c], local.words().data(), local.size());
    }

    out.append_ones(s.residue);
    return out;
}

} // namespace kernels

} // namespace bcod
