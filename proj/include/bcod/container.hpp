#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "bcod/bitvec.hpp"
#include "bcod/coders.hpp"

namespace bcod {

enum class Mode : uint8_t { huffman = 0, symmetric = 1, shannon = 2, raw = 3 };

const char* mode_name(Mode m);
Mode mode_from_name(std::string_view name); // throws domain_error

// One serialized code-table row. aux is the canonical code length in huffman
// mode, the class count in shannon mode, and unused (0) in symmetric mode,
// where rank order alone rebuilds the book.
struct TableEntry {
    uint64_t k = 0;
    uint64_t aux = 0;

    bool operator==(const TableEntry&) const = default;
};

// Self-describing archive: everything decompression needs travels with the
// payload. In raw mode the table is empty and the payload is the original
// input verbatim.
struct Archive {
    Mode mode = Mode::raw;
    std::vector<TableEntry> table;
    uint64_t residue_len = 0;
    uint64_t payload_bits = 0;
    BitVec payload;

    bool operator==(const Archive&) const = default;
};

Archive compress(const BitVec& input, Mode mode);
BitVec decompress(const Archive& a);

// On-disk layout, all integers unsigned LEB128 varints, payload bits packed
// MSB-first and zero-padded to a byte boundary:
//
//   magic "BCOD" | version 0x01 | mode byte | entry count
//   entries (huffman: k, code length; shannon: k, count; symmetric: k)
//   residue_len | payload_bits | payload bytes
std::vector<uint8_t> pack(const Archive& a);
Archive unpack(std::span<const uint8_t> bytes);

// Rebuilds the codebook a table describes. Not meaningful for raw mode.
CodeBook rebuild_book(Mode mode, std::span<const TableEntry> table);

// Serialized size of the table section (entry count varint + entries).
uint64_t table_bytes(const Archive& a);

inline constexpr uint8_t kMagic[4] = {0x42, 0x43, 0x4F, 0x44}; // "BCOD"
inline constexpr uint8_t kVersion = 0x01;

} // namespace bcod
