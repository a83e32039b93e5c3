#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bcod/errors.hpp"

namespace bcod {

// Bit vector with an exact length. Bit 0 is the first bit of the stream;
// within the backing words bit i sits at position (63 - i % 64) of
// words()[i / 64], so serializing the words big-endian gives the MSB-first
// byte layout used everywhere in this project. Bits past size() in the last
// word are kept zero, which lets operator== compare words directly.
class BitVec {
public:
    BitVec() = default;

    static BitVec from_string(std::string_view bits); // '0'/'1' only
    static BitVec zeros(uint64_t n);
    static BitVec ones(uint64_t n);
    static BitVec of_size(uint64_t n) { return zeros(n); }

    // Inverse of to_bytes(). bit_len must match the byte count exactly:
    // ceil(bit_len / 8) == bytes.size(). Pad bits in the last byte are
    // discarded, never surfaced.
    static BitVec from_bytes(std::span<const uint8_t> bytes, uint64_t bit_len);

    uint64_t size() const { return len_; }
    bool empty() const { return len_ == 0; }

    bool bit(uint64_t i) const;
    void set_bit(uint64_t i, bool b);
    void flip_bit(uint64_t i);

    void reserve(uint64_t nbits) { words_.reserve((nbits + 63) >> 6); }

    void push_back(bool b);
    void append_ones(uint64_t n);
    void append_zeros(uint64_t n);
    void append(const BitVec& v);

    BitVec reversed() const;

    // MSB-first packing, final partial byte zero-padded. The bit length is
    // carried separately by the caller.
    std::vector<uint8_t> to_bytes() const;
    std::string to_string() const;

    bool operator==(const BitVec&) const = default;

    std::span<const uint64_t> words() const { return words_; }
    std::span<uint64_t> words() { return words_; }
    uint64_t word(uint64_t wi) const { return wi < words_.size() ? words_[wi] : 0; }

private:
    std::vector<uint64_t> words_;
    uint64_t len_ = 0;
};

inline BitVec concat(const BitVec& a, const BitVec& b) {
    BitVec r = a;
    r.append(b);
    return r;
}

inline BitVec reverse(const BitVec& v) { return v.reversed(); }

// Read position over a BitVec. Reads past the end throw, they never wrap.
class BitCursor {
public:
    explicit BitCursor(const BitVec& v) : v_(&v) {}

    uint64_t position() const { return pos_; }
    bool at_end() const { return pos_ >= v_->size(); }

    bool next() {
        if (at_end()) throw domain_error("bit cursor: read past end");
        return v_->bit(pos_++);
    }

private:
    const BitVec* v_;
    uint64_t pos_ = 0;
};

} // namespace bcod
