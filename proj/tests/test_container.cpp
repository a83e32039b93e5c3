#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "bcod/container.hpp"
#include "bcod/generator.hpp"
#include "helpers.hpp"

using bcod::Archive;
using bcod::BitVec;
using bcod::Mode;

namespace {

constexpr Mode kAllModes[] = {Mode::huffman, Mode::symmetric, Mode::shannon, Mode::raw};

BitVec skewed49_bits() {
    return bcod::detokenize(testutil::stream_with_counts({{2, 25}, {1, 20}, {3, 3}, {4, 1}}));
}

} // namespace

TEST_CASE("compress pins the worked examples") {
    const Archive zeros = bcod::compress(BitVec::zeros(49), Mode::huffman);
    CHECK(zeros.payload_bits == 49); // single class, forced 1-bit code
    CHECK(zeros.residue_len == 0);
    CHECK(zeros.table.size() == 1);

    const BitVec v49 = skewed49_bits();
    CHECK(v49.size() == 83);
    const Archive sym = bcod::compress(v49, Mode::symmetric);
    CHECK(sym.payload_bits == 78);
    CHECK(bcod::decompress(sym) == v49);

    for (Mode m : kAllModes) {
        const Archive empty = bcod::compress(BitVec{}, m);
        CHECK(empty.payload_bits == 0);
        CHECK(empty.residue_len == 0);
        CHECK(bcod::decompress(empty).empty());
    }
}

TEST_CASE("all-ones input lands entirely in the residue") {
    const BitVec ones = BitVec::ones(13);
    const Archive a = bcod::compress(ones, Mode::huffman);
    CHECK(a.table.empty());
    CHECK(a.payload_bits == 0);
    CHECK(a.residue_len == 13);
    CHECK(bcod::decompress(a) == ones);
}

TEST_CASE("decompress inverts compress for every mode") {
    const BitVec v = BitVec::from_string("1011100");
    for (Mode m : kAllModes) {
        const Archive a = bcod::compress(v, m);
        CHECK(bcod::decompress(a) == v);
        CHECK(bcod::unpack(bcod::pack(a)) == a);
    }

    const Archive raw = bcod::compress(BitVec::from_string("111"), Mode::raw);
    CHECK(raw.table.empty());
    CHECK(bcod::decompress(raw).to_string() == "111");
}

TEST_CASE("archive invariants are enforced") {
    Archive a = bcod::compress(BitVec::from_string("1011100"), Mode::huffman);
    a.payload_bits += 1;
    CHECK_THROWS_AS((void)bcod::decompress(a), bcod::format_error);
    CHECK_THROWS_AS((void)bcod::pack(a), bcod::domain_error);

    Archive empty_table = bcod::compress(BitVec::ones(3), Mode::huffman);
    empty_table.payload = BitVec::from_string("0");
    empty_table.payload_bits = 1;
    CHECK_THROWS_AS((void)bcod::decompress(empty_table), bcod::format_error);

    Archive raw = bcod::compress(BitVec::from_string("10"), Mode::raw);
    raw.residue_len = 2;
    CHECK_THROWS_AS((void)bcod::decompress(raw), bcod::format_error);
}

TEST_CASE("pack layout of the empty raw archive") {
    const Archive a = bcod::compress(BitVec{}, Mode::raw);
    CHECK(bcod::pack(a) == std::vector<uint8_t>{0x42, 0x43, 0x4F, 0x44, 0x01, 0x03, 0x00, 0x00, 0x00});
}

TEST_CASE("unpack then decompress restores the input") {
    const BitVec v = BitVec::from_string("1011100");
    const auto bytes = bcod::pack(bcod::compress(v, Mode::huffman));
    CHECK(bcod::decompress(bcod::unpack(bytes)) == v);
}

TEST_CASE("format errors name the failing section") {
    auto packed = bcod::pack(bcod::compress(BitVec::from_string("1011100"), Mode::huffman));

    SUBCASE("bad magic") {
        auto bad = packed;
        bad[0] = 'X';
        CHECK_THROWS_WITH_AS((void)bcod::unpack(bad), "header: bad magic", bcod::format_error);
    }
    SUBCASE("unknown version") {
        auto bad = packed;
        bad[4] = 0x02;
        CHECK_THROWS_WITH_AS((void)bcod::unpack(bad), "header: unknown version", bcod::format_error);
    }
    SUBCASE("unknown mode") {
        auto bad = packed;
        bad[5] = 0x04;
        CHECK_THROWS_WITH_AS((void)bcod::unpack(bad), "header: unknown mode", bcod::format_error);
    }
    SUBCASE("truncated stream") {
        for (size_t keep = 0; keep < packed.size(); ++keep) {
            const std::vector<uint8_t> cut(packed.begin(), packed.begin() + keep);
            CHECK_THROWS_AS((void)bcod::unpack(cut), bcod::format_error);
        }
    }
    SUBCASE("trailing bytes") {
        auto bad = packed;
        bad.push_back(0x00);
        CHECK_THROWS_WITH_AS((void)bcod::unpack(bad), "payload: trailing bytes", bcod::format_error);
    }
    SUBCASE("varint overflow") {
        // header + empty table + residue, then an 11-byte varint for payload_bits
        std::vector<uint8_t> bad{0x42, 0x43, 0x4F, 0x44, 0x01, 0x03, 0x00, 0x00};
        for (int i = 0; i < 9; ++i) bad.push_back(0x80);
        bad.push_back(0x02);
        CHECK_THROWS_AS((void)bcod::unpack(bad), bcod::format_error);
    }
}

TEST_CASE("malformed tables are corruption errors") {
    const BitVec v = skewed49_bits();

    SUBCASE("duplicate class") {
        Archive a = bcod::compress(v, Mode::symmetric);
        a.table.push_back(a.table.front());
        CHECK_THROWS_AS((void)bcod::decompress(a), bcod::format_error);
    }
    SUBCASE("class zero") {
        Archive a = bcod::compress(v, Mode::symmetric);
        a.table.front().k = 0;
        CHECK_THROWS_AS((void)bcod::decompress(a), bcod::format_error);
    }
    SUBCASE("huffman zero length") {
        Archive a = bcod::compress(v, Mode::huffman);
        a.table.front().aux = 0;
        CHECK_THROWS_AS((void)bcod::decompress(a), bcod::format_error);
    }
    SUBCASE("huffman lengths break the Kraft bound") {
        Archive a = bcod::compress(v, Mode::huffman);
        for (auto& e : a.table) e.aux = 1;
        CHECK_THROWS_AS((void)bcod::decompress(a), bcod::format_error);
    }
    SUBCASE("shannon zero count") {
        Archive a = bcod::compress(v, Mode::shannon);
        a.table.front().aux = 0;
        CHECK_THROWS_AS((void)bcod::decompress(a), bcod::format_error);
    }
    SUBCASE("payload ends mid-codeword") {
        Archive a = bcod::compress(v, Mode::symmetric);
        // a trailing 1 is a live prefix of "11"/"101"/"1001" but completes nothing
        a.payload.push_back(true);
        a.payload_bits = a.payload.size();
        CHECK_THROWS_AS((void)bcod::decompress(a), bcod::truncated_payload);
    }
}

TEST_CASE("round trips, exhaustive up to 10 bits") {
    for (uint64_t len = 0; len <= 10; ++len) {
        for (uint64_t value = 0; value < (uint64_t{1} << len); ++value) {
            BitVec v;
            for (uint64_t i = 0; i < len; ++i) v.push_back((value >> (len - 1 - i)) & 1);
            for (Mode m : kAllModes) {
                const Archive a = bcod::compress(v, m);
                CHECK(bcod::decompress(a) == v);
                if (m == Mode::huffman || m == Mode::symmetric)
                    CHECK(a.payload_bits + a.residue_len <= v.size());
            }
        }
    }
}

TEST_CASE("round trips through bytes, randomized") {
    std::mt19937_64 rng(67);
    std::uniform_int_distribution<uint64_t> lens(0, 4096);
    for (int trial = 0; trial < 40; ++trial) {
        for (double density : {0.2, 0.5, 0.9}) {
            const BitVec v = testutil::random_bits(rng, lens(rng), density);
            for (Mode m : kAllModes) {
                const Archive a = bcod::compress(v, m);
                const Archive back = bcod::unpack(bcod::pack(a));
                CHECK(back == a);
                CHECK(bcod::decompress(back) == v);
                if (m == Mode::huffman || m == Mode::symmetric)
                    CHECK(a.payload_bits + a.residue_len <= v.size());
            }
        }
    }
}

TEST_CASE("container size decomposes into its sections") {
    const Archive a = bcod::compress(skewed49_bits(), Mode::huffman);
    const auto packed = bcod::pack(a);
    // magic(4) + version(1) + mode(1) + table + residue varint + bits varint + payload
    const uint64_t payload_bytes = (a.payload_bits + 7) / 8;
    CHECK(packed.size() == 6 + bcod::table_bytes(a) + 1 + 1 + payload_bytes);
}

TEST_CASE("mode names round trip") {
    for (Mode m : kAllModes) CHECK(bcod::mode_from_name(bcod::mode_name(m)) == m);
    CHECK_THROWS_AS((void)bcod::mode_from_name("lzw"), bcod::domain_error);
}
