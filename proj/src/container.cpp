#include "bcod/container.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace bcod {

namespace {

void put_varint(std::vector<uint8_t>& out, uint64_t v) {
    while (v >= 0x80) {
        out.push_back(uint8_t(v) | 0x80);
        v >>= 7;
    }
    out.push_back(uint8_t(v));
}

struct Reader {
    std::span<const uint8_t> data;
    size_t pos = 0;

    uint8_t byte(const char* what) {
        if (pos >= data.size()) throw format_error(std::string(what) + ": truncated");
        return data[pos++];
    }

    uint64_t varint(const char* what) {
        uint64_t v = 0;
        for (int i = 0; i < 10; ++i) {
            if (pos >= data.size()) throw format_error(std::string(what) + ": truncated varint");
            const uint8_t b = data[pos++];
            if (i == 9 && (b & 0xFE))
                throw format_error(std::string(what) + ": varint overflows 64 bits");
            v |= uint64_t(b & 0x7F) << (7 * i);
            if (!(b & 0x80)) return v;
        }
        throw format_error(std::string(what) + ": varint overflows 64 bits");
    }

    size_t remaining() const { return data.size() - pos; }
};

void append_table(std::vector<uint8_t>& out, const Archive& a) {
    put_varint(out, a.table.size());
    for (const TableEntry& e : a.table) {
        switch (a.mode) {
            case Mode::huffman:
            case Mode::shannon:
                put_varint(out, e.k);
                put_varint(out, e.aux);
                break;
            case Mode::symmetric:
                put_varint(out, e.k);
                break;
            case Mode::raw:
                break;
        }
    }
}

void require_distinct_classes(std::span<const TableEntry> table) {
    std::set<uint64_t> seen;
    for (const TableEntry& e : table) {
        if (e.k == 0) throw format_error("table: class 0");
        if (!seen.insert(e.k).second)
            throw format_error("table: duplicate class " + std::to_string(e.k));
    }
}

} // namespace

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::huffman: return "huffman";
        case Mode::symmetric: return "symmetric";
        case Mode::shannon: return "shannon";
        case Mode::raw: return "raw";
    }
    return "?";
}

Mode mode_from_name(std::string_view name) {
    if (name == "huffman") return Mode::huffman;
    if (name == "symmetric") return Mode::symmetric;
    if (name == "shannon") return Mode::shannon;
    if (name == "raw") return Mode::raw;
    throw domain_error("unknown mode: " + std::string(name));
}

Archive compress(const BitVec& input, Mode mode) {
    Archive a;
    a.mode = mode;
    if (mode == Mode::raw) {
        a.payload = input;
        a.payload_bits = input.size();
        return a;
    }

    const TokenStream s = tokenize(input);
    const FreqTable t = count(s);
    a.residue_len = s.residue;
    if (!t.empty()) {
        CodeBook book = [&] {
            switch (mode) {
                case Mode::huffman: return build_huffman(t);
                case Mode::symmetric: return build_symmetric(t);
                default: return build_shannon(t);
            }
        }();
        switch (mode) {
            case Mode::huffman: {
                // canonical order: (code length, class)
                for (const auto& [k, code] : book.entries()) a.table.push_back({k, code.size()});
                std::sort(a.table.begin(), a.table.end(), [](const TableEntry& x, const TableEntry& y) {
                    if (x.aux != y.aux) return x.aux < y.aux;
                    return x.k < y.k;
                });
                break;
            }
            case Mode::shannon:
                for (const auto& [k, cnt] : ranked_classes(t)) a.table.push_back({k, cnt});
                break;
            default: // symmetric: classes in rank order rebuild the book alone
                for (const auto& [k, cnt] : ranked_classes(t)) {
                    (void)cnt;
                    a.table.push_back({k, 0});
                }
                break;
        }
        a.payload = encode(s, book);
    }
    a.payload_bits = a.payload.size();
    return a;
}

CodeBook rebuild_book(Mode mode, std::span<const TableEntry> table) {
    require_distinct_classes(table);
    switch (mode) {
        case Mode::huffman: {
            std::vector<std::pair<uint64_t, uint64_t>> profile;
            for (const TableEntry& e : table) {
                if (e.aux == 0) throw format_error("table: zero code length");
                profile.emplace_back(e.k, e.aux);
            }
            try {
                return CodeBook(CodeKind::huffman, canonical_codes(std::move(profile)));
            } catch (const domain_error&) {
                throw format_error("table: code lengths violate the Kraft inequality");
            }
        }
        case Mode::shannon: {
            std::map<uint64_t, uint64_t> counts;
            for (const TableEntry& e : table) {
                if (e.aux == 0) throw format_error("table: zero count");
                counts.emplace(e.k, e.aux);
            }
            return build_shannon(FreqTable::from_counts(std::move(counts)));
        }
        case Mode::symmetric: {
            std::map<uint64_t, BitVec> entries;
            uint64_t rank = 0;
            for (const TableEntry& e : table) entries.emplace(e.k, palindrome(++rank));
            return CodeBook(CodeKind::symmetric, std::move(entries));
        }
        case Mode::raw: break;
    }
    throw domain_error("raw mode has no codebook");
}

BitVec decompress(const Archive& a) {
    if (a.payload_bits != a.payload.size())
        throw format_error("payload: bit count does not match stored bits");
    if (a.mode == Mode::raw) {
        if (!a.table.empty()) throw format_error("table: raw archive carries a code table");
        if (a.residue_len != 0) throw format_error("header: raw archive carries a residue");
        return a.payload;
    }
    if (a.table.empty()) {
        if (a.payload_bits != 0) throw format_error("table: empty table with nonempty payload");
        return BitVec::ones(a.residue_len);
    }
    const CodeBook book = rebuild_book(a.mode, a.table);
    TokenStream s;
    s.tokens = decode(a.payload, book);
    s.residue = a.residue_len;
    return detokenize(s);
}

std::vector<uint8_t> pack(const Archive& a) {
    if (a.payload_bits != a.payload.size())
        throw domain_error("archive: payload bit count does not match payload");
    if (a.mode == Mode::raw && !a.table.empty())
        throw domain_error("archive: raw mode with a code table");
    std::vector<uint8_t> out(std::begin(kMagic), std::end(kMagic));
    out.push_back(kVersion);
    out.push_back(uint8_t(a.mode));
    append_table(out, a);
    put_varint(out, a.residue_len);
    put_varint(out, a.payload_bits);
    const auto payload = a.payload.to_bytes();
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

Archive unpack(std::span<const uint8_t> bytes) {
    Reader r{bytes};
    for (uint8_t m : kMagic) {
        if (r.byte("header") != m) throw format_error("header: bad magic");
    }
    if (r.byte("header") != kVersion) throw format_error("header: unknown version");
    const uint8_t mode_byte = r.byte("header");
    if (mode_byte > uint8_t(Mode::raw)) throw format_error("header: unknown mode");

    Archive a;
    a.mode = Mode(mode_byte);
    const uint64_t entries = r.varint("table");
    if (entries > r.remaining()) throw format_error("table: truncated");
    if (a.mode == Mode::raw && entries != 0)
        throw format_error("table: raw archive carries a code table");
    a.table.reserve(entries);
    for (uint64_t i = 0; i < entries; ++i) {
        TableEntry e;
        e.k = r.varint("table");
        if (a.mode == Mode::huffman || a.mode == Mode::shannon) e.aux = r.varint("table");
        a.table.push_back(e);
    }

    a.residue_len = r.varint("header");
    a.payload_bits = r.varint("header");
    const uint64_t need = a.payload_bits / 8 + (a.payload_bits % 8 ? 1 : 0);
    if (r.remaining() < need) throw format_error("payload: truncated");
    if (r.remaining() > need) throw format_error("payload: trailing bytes");
    a.payload = BitVec::from_bytes(bytes.subspan(r.pos, size_t(need)), a.payload_bits);
    return a;
}

uint64_t table_bytes(const Archive& a) {
    std::vector<uint8_t> buf;
    append_table(buf, a);
    return buf.size();
}

} // namespace bcod
