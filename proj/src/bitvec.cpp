#include "bcod/bitvec.hpp"

#include <algorithm>

#include "bcod/detail/bits.hpp"

namespace bcod {

using detail::high_mask;
using detail::word_count;

BitVec BitVec::from_string(std::string_view bits) {
    BitVec v;
    for (char c : bits) {
        if (c != '0' && c != '1') throw domain_error("bit string: expected only '0'/'1'");
        v.push_back(c == '1');
    }
    return v;
}

BitVec BitVec::zeros(uint64_t n) {
    BitVec v;
    v.append_zeros(n);
    return v;
}

BitVec BitVec::ones(uint64_t n) {
    BitVec v;
    v.append_ones(n);
    return v;
}

BitVec BitVec::from_bytes(std::span<const uint8_t> bytes, uint64_t bit_len) {
    if (bytes.empty()) {
        if (bit_len != 0) throw malformed_input("bit length exceeds byte count");
        return {};
    }
    if (bit_len > 8 * bytes.size()) throw malformed_input("bit length exceeds byte count");
    if (bit_len <= 8 * (bytes.size() - 1)) throw malformed_input("byte count exceeds bit length");
    BitVec v;
    v.words_.assign(word_count(bit_len), 0);
    for (uint64_t j = 0; j < bytes.size(); ++j)
        v.words_[j >> 3] |= uint64_t{bytes[j]} << (56 - 8 * (j & 7));
    v.len_ = bit_len;
    // pad bits of the final byte are never surfaced
    if (bit_len & 63) v.words_.back() &= high_mask(bit_len & 63);
    return v;
}

bool BitVec::bit(uint64_t i) const {
    if (i >= len_) throw domain_error("bit read past end");
    return (words_[i >> 6] >> (63 - (i & 63))) & 1;
}

void BitVec::set_bit(uint64_t i, bool b) {
    if (i >= len_) throw domain_error("bit write past end");
    const uint64_t m = uint64_t{1} << (63 - (i & 63));
    if (b)
        words_[i >> 6] |= m;
    else
        words_[i >> 6] &= ~m;
}

void BitVec::flip_bit(uint64_t i) {
    if (i >= len_) throw domain_error("bit flip past end");
    words_[i >> 6] ^= uint64_t{1} << (63 - (i & 63));
}

void BitVec::push_back(bool b) {
    if ((len_ & 63) == 0) words_.push_back(0);
    if (b) words_[len_ >> 6] |= uint64_t{1} << (63 - (len_ & 63));
    ++len_;
}

void BitVec::append_ones(uint64_t n) {
    words_.resize(word_count(len_ + n), 0);
    uint64_t i = len_;
    len_ += n;
    while (n > 0) {
        const uint64_t r = i & 63;
        const uint64_t take = std::min<uint64_t>(n, 64 - r);
        words_[i >> 6] |= high_mask(take) >> r;
        i += take;
        n -= take;
    }
}

void BitVec::append_zeros(uint64_t n) {
    words_.resize(word_count(len_ + n), 0);
    len_ += n;
}

void BitVec::append(const BitVec& v) {
    if (v.len_ == 0) return;
    const uint64_t r = len_ & 63;
    const uint64_t base = len_ >> 6;
    words_.resize(word_count(len_ + v.len_), 0);
    const auto& src = v.words_;
    if (r == 0) {
        std::copy(src.begin(), src.end(), words_.begin() + base);
    } else {
        for (uint64_t j = 0; j < src.size(); ++j) {
            words_[base + j] |= src[j] >> r;
            if (base + j + 1 < words_.size()) words_[base + j + 1] |= src[j] << (64 - r);
        }
    }
    len_ += v.len_;
}

BitVec BitVec::reversed() const {
    BitVec out;
    out.words_.assign(words_.size(), 0);
    out.len_ = len_;
    for (uint64_t i = 0; i < len_; ++i) {
        if ((words_[(len_ - 1 - i) >> 6] >> (63 - ((len_ - 1 - i) & 63))) & 1)
            out.words_[i >> 6] |= uint64_t{1} << (63 - (i & 63));
    }
    return out;
}

std::vector<uint8_t> BitVec::to_bytes() const {
    std::vector<uint8_t> out((len_ + 7) / 8);
    for (uint64_t j = 0; j < out.size(); ++j)
        out[j] = uint8_t(words_[j >> 3] >> (56 - 8 * (j & 7)));
    return out;
}

std::string BitVec::to_string() const {
    std::string s;
    s.reserve(len_);
    for (uint64_t i = 0; i < len_; ++i) s.push_back(bit(i) ? '1' : '0');
    return s;
}

namespace detail {

void or_blit(uint64_t* dst, uint64_t at, const uint64_t* src, uint64_t nbits) {
    if (nbits == 0) return;
    const uint64_t base = at >> 6;
    const uint64_t r = at & 63;
    const uint64_t tw = word_count(r + nbits); // destination words touched
    const uint64_t sw = word_count(nbits);
    auto piece = [&](uint64_t j) -> uint64_t {
        if (r == 0) return j < sw ? src[j] : 0;
        uint64_t v = 0;
        if (j < sw) v = src[j] >> r;
        if (j > 0 && j - 1 < sw) v |= src[j - 1] << (64 - r);
        return v;
    };
    if (tw == 1) {
        const uint64_t v = piece(0);
#pragma omp atomic update
        dst[base] |= v;
        return;
    }
    const uint64_t first = piece(0);
    const uint64_t last = piece(tw - 1);
#pragma omp atomic update
    dst[base] |= first;
    for (uint64_t j = 1; j + 1 < tw; ++j) dst[base + j] = piece(j);
#pragma omp atomic update
    dst[base + tw - 1] |= last;
}

} // namespace detail

} // namespace bcod
