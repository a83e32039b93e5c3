#include "bcod/coders.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "bcod/detail/bits.hpp"

namespace bcod {

namespace {

constexpr uint64_t kChunkTokensDefault = uint64_t{1} << 16;

// In a lexicographically sorted list a prefix relation always shows up
// between adjacent neighbours, so one pass over sorted codeword strings
// detects duplicates and prefix violations.
bool sorted_strings_prefix_free(std::vector<std::string>& v) {
    std::sort(v.begin(), v.end());
    for (size_t i = 0; i + 1 < v.size(); ++i) {
        if (v[i + 1].compare(0, v[i].size(), v[i]) == 0) return false;
    }
    return true;
}

// Binary +1 in place; false on carry out of the most significant bit.
bool increment(BitVec& c) {
    for (uint64_t j = c.size(); j > 0; --j) {
        if (!c.bit(j - 1)) {
            c.set_bit(j - 1, true);
            return true;
        }
        c.set_bit(j - 1, false);
    }
    return false;
}

struct Trie {
    struct Node {
        int32_t child[2] = {-1, -1};
        int64_t leaf = -1;
    };
    std::vector<Node> nodes{1};
    std::vector<uint64_t> leaf_class;

    void insert(const BitVec& code, uint64_t k, bool from_end) {
        int32_t cur = 0;
        for (uint64_t j = 0; j < code.size(); ++j) {
            const bool b = code.bit(from_end ? code.size() - 1 - j : j);
            int32_t next = nodes[cur].child[b];
            if (next < 0) {
                next = int32_t(nodes.size());
                nodes[cur].child[b] = next;
                nodes.push_back({});
            }
            cur = next;
        }
        nodes[cur].leaf = int64_t(leaf_class.size());
        leaf_class.push_back(k);
    }

    static Trie of(const CodeBook& b, bool from_end) {
        Trie t;
        for (const auto& [k, code] : b.entries()) t.insert(code, k, from_end);
        return t;
    }
};

} // namespace

const char* code_kind_name(CodeKind k) {
    switch (k) {
        case CodeKind::huffman: return "huffman";
        case CodeKind::shannon: return "shannon";
        case CodeKind::symmetric: return "symmetric";
        case CodeKind::identity: return "identity";
    }
    return "?";
}

CodeBook::CodeBook(CodeKind kind, std::map<uint64_t, BitVec> entries)
    : kind_(kind), entries_(std::move(entries)) {
    std::vector<std::string> fwd, rev;
    fwd.reserve(entries_.size());
    rev.reserve(entries_.size());
    for (const auto& [k, code] : entries_) {
        if (k == 0) throw domain_error("codebook: class 0");
        if (code.empty()) throw domain_error("codebook: empty codeword");
        fwd.push_back(code.to_string());
        rev.push_back(code.reversed().to_string());
    }
    {
        auto uniq = fwd;
        std::sort(uniq.begin(), uniq.end());
        if (std::adjacent_find(uniq.begin(), uniq.end()) != uniq.end())
            throw domain_error("codebook: duplicate codeword");
    }
    prefix_free_ = sorted_strings_prefix_free(fwd);
    suffix_free_ = sorted_strings_prefix_free(rev);
}

const BitVec& CodeBook::codeword(uint64_t k) const {
    auto it = entries_.find(k);
    if (it == entries_.end())
        throw incomplete_codebook("codebook: no entry for class " + std::to_string(k));
    return it->second;
}

const BitVec* CodeBook::find(uint64_t k) const {
    auto it = entries_.find(k);
    return it == entries_.end() ? nullptr : &it->second;
}

BitVec palindrome(uint64_t rank) {
    if (rank == 0) throw domain_error("palindrome: rank must be positive");
    if (rank == 1) return BitVec::from_string("0");
    BitVec v;
    v.push_back(true);
    v.append_zeros(rank - 2);
    v.push_back(true);
    return v;
}

std::map<uint64_t, BitVec> canonical_codes(std::vector<std::pair<uint64_t, uint64_t>> class_to_len) {
    std::sort(class_to_len.begin(), class_to_len.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return a.first < b.first;
    });
    std::map<uint64_t, BitVec> entries;
    BitVec code;
    uint64_t prev_len = 0;
    for (const auto& [k, len] : class_to_len) {
        if (len == 0) throw domain_error("canonical codes: zero length");
        if (prev_len == 0) {
            code = BitVec::zeros(len);
        } else {
            if (!increment(code)) throw domain_error("canonical codes: lengths violate the Kraft inequality");
            code.append_zeros(len - prev_len);
        }
        prev_len = len;
        entries.emplace(k, code);
    }
    return entries;
}

CodeBook build_huffman(const FreqTable& t) {
    if (t.empty()) throw empty_alphabet("huffman: empty frequency table");

    if (t.alphabet_size() == 1) {
        std::map<uint64_t, BitVec> entries;
        entries.emplace(t.counts().begin()->first, BitVec::from_string("0"));
        return CodeBook(CodeKind::huffman, std::move(entries));
    }

    struct Node {
        uint64_t weight;
        uint64_t min_k;
        int32_t left = -1;
        int32_t right = -1;
        uint64_t leaf_k = 0;
        bool is_leaf = false;
    };
    std::vector<Node> arena;
    arena.reserve(2 * t.alphabet_size());
    for (const auto& [k, n] : t.counts()) arena.push_back({n, k, -1, -1, k, true});

    // Pop order: smallest weight first; among equal weights the node whose
    // minimum contained class is larger merges first, keeping small classes
    // shallow. Live minima are distinct, so the order is total.
    auto after = [&arena](int32_t a, int32_t b) {
        if (arena[a].weight != arena[b].weight) return arena[a].weight > arena[b].weight;
        return arena[a].min_k < arena[b].min_k;
    };
    std::priority_queue<int32_t, std::vector<int32_t>, decltype(after)> pq(after);
    for (int32_t i = 0; i < int32_t(arena.size()); ++i) pq.push(i);

    while (pq.size() > 1) {
        const int32_t a = pq.top();
        pq.pop();
        const int32_t b = pq.top();
        pq.pop();
        arena.push_back({arena[a].weight + arena[b].weight,
                         std::min(arena[a].min_k, arena[b].min_k), a, b, 0, false});
        pq.push(int32_t(arena.size() - 1));
    }

    std::vector<std::pair<uint64_t, uint64_t>> profile; // (class, depth)
    std::vector<std::pair<int32_t, uint64_t>> stack{{pq.top(), 0}};
    while (!stack.empty()) {
        auto [idx, depth] = stack.back();
        stack.pop_back();
        const Node& nd = arena[idx];
        if (nd.is_leaf) {
            profile.emplace_back(nd.leaf_k, depth);
        } else {
            stack.emplace_back(nd.left, depth + 1);
            stack.emplace_back(nd.right, depth + 1);
        }
    }
    return CodeBook(CodeKind::huffman, canonical_codes(std::move(profile)));
}

CodeBook build_shannon(const FreqTable& t) {
    if (t.empty()) throw empty_alphabet("shannon: empty frequency table");
    const uint64_t n = t.total();
    std::map<uint64_t, BitVec> entries;
    uint64_t cum = 0;
    for (const auto& [k, cnt] : ranked_classes(t)) {
        // l = max(1, ceil(log2(n / cnt))), exact over integers
        uint64_t l = 0;
        unsigned __int128 acc = cnt;
        while (acc < n) {
            acc <<= 1;
            ++l;
        }
        if (l == 0) l = 1;
        // first l bits of the binary expansion of cum / n, by repeated doubling
        BitVec code;
        unsigned __int128 num = cum;
        for (uint64_t b = 0; b < l; ++b) {
            num <<= 1;
            if (num >= n) {
                code.push_back(true);
                num -= n;
            } else {
                code.push_back(false);
            }
        }
        entries.emplace(k, std::move(code));
        cum += cnt;
    }
    return CodeBook(CodeKind::shannon, std::move(entries));
}

CodeBook build_symmetric(const FreqTable& t) {
    if (t.empty()) throw empty_alphabet("symmetric: empty frequency table");
    std::map<uint64_t, BitVec> entries;
    uint64_t rank = 0;
    for (const auto& [k, cnt] : ranked_classes(t)) {
        (void)cnt;
        entries.emplace(k, palindrome(++rank));
    }
    return CodeBook(CodeKind::symmetric, std::move(entries));
}

CodeBook build_identity(const FreqTable& t) {
    std::map<uint64_t, BitVec> entries;
    for (const auto& [k, cnt] : t.counts()) {
        (void)cnt;
        entries.emplace(k, token_bits(k));
    }
    return CodeBook(CodeKind::identity, std::move(entries));
}

BitVec encode(const TokenStream& s, const CodeBook& b) {
    return kernels::encode(s.tokens, b, kChunkTokensDefault);
}

std::vector<uint64_t> decode(const BitVec& payload, const CodeBook& b) {
    if (!b.prefix_free()) throw domain_error("decode: codebook is not prefix-free");
    const Trie trie = Trie::of(b, false);
    std::vector<uint64_t> out;
    int32_t cur = 0;
    for (uint64_t i = 0; i < payload.size(); ++i) {
        cur = trie.nodes[cur].child[payload.bit(i)];
        if (cur < 0)
            throw invalid_payload("payload: no codeword matches at bit " + std::to_string(i));
        if (trie.nodes[cur].leaf >= 0) {
            out.push_back(trie.leaf_class[trie.nodes[cur].leaf]);
            cur = 0;
        }
    }
    if (cur != 0) throw truncated_payload("payload: ends mid-codeword");
    return out;
}

std::vector<uint64_t> decode_reverse(const BitVec& payload, const CodeBook& b) {
    if (!b.suffix_free()) throw domain_error("decode_reverse: codebook is not suffix-free");
    const Trie trie = Trie::of(b, true);
    std::vector<uint64_t> out;
    int32_t cur = 0;
    const uint64_t n = payload.size();
    for (uint64_t j = 0; j < n; ++j) {
        cur = trie.nodes[cur].child[payload.bit(n - 1 - j)];
        if (cur < 0)
            throw invalid_payload("payload: no codeword matches at bit " + std::to_string(n - 1 - j));
        if (trie.nodes[cur].leaf >= 0) {
            out.push_back(trie.leaf_class[trie.nodes[cur].leaf]);
            cur = 0;
        }
    }
    if (cur != 0) throw truncated_payload("payload: ends mid-codeword");
    return out;
}

double kraft_sum(const CodeBook& b) {
    double sum = 0.0;
    for (const auto& [k, code] : b.entries()) {
        (void)k;
        if (code.size() < 1100) sum += std::ldexp(1.0, -int(code.size()));
    }
    return sum;
}

uint64_t payload_cost(const FreqTable& t, const CodeBook& b) {
    uint64_t bits = 0;
    for (const auto& [k, n] : t.counts()) bits += n * b.codeword(k).size();
    return bits;
}

namespace serial {

BitVec encode(const TokenStream& s, const CodeBook& b) {
    BitVec out;
    for (uint64_t k : s.tokens) out.append(b.codeword(k));
    return out;
}

} // namespace serial

namespace kernels {

namespace {

// Flat class -> codeword view over a book, built once per encode call so the
// hot loops skip the map. Classes past the dense range fall back to the map.
struct BookIndex {
    std::vector<const BitVec*> dense;
    const std::map<uint64_t, BitVec>* entries;

    explicit BookIndex(const CodeBook& b) : entries(&b.entries()) {
        uint64_t cap = 0;
        for (const auto& [k, code] : *entries) {
            (void)code;
            if (k <= 4096) cap = std::max(cap, k + 1);
        }
        dense.assign(cap, nullptr);
        for (const auto& [k, code] : *entries)
            if (k < cap) dense[k] = &code;
    }

    const BitVec* find(uint64_t k) const {
        if (k < dense.size()) return dense[k];
        auto it = entries->find(k);
        return it == entries->end() ? nullptr : &it->second;
    }
};

} // namespace

BitVec encode(std::span<const uint64_t> tokens, const CodeBook& b, uint64_t chunk_tokens) {
    const uint64_t n = tokens.size();
    if (chunk_tokens == 0) chunk_tokens = 1;
    const uint64_t nc = n == 0 ? 0 : (n + chunk_tokens - 1) / chunk_tokens;

    const BookIndex index(b);
    std::vector<uint64_t> chunk_bits(nc, 0);
    int missing = 0;

#pragma omp parallel for schedule(static) reduction(| : missing) if (nc > 1)
    for (int64_t c = 0; c < int64_t(nc); ++c) {
        const uint64_t t0 = uint64_t(c) * chunk_tokens;
        const uint64_t t1 = std::min(n, t0 + chunk_tokens);
        uint64_t sum = 0;
        for (uint64_t i = t0; i < t1; ++i) {
            const BitVec* code = index.find(tokens[i]);
            if (code == nullptr)
                missing |= 1;
            else
                sum += code->size();
        }
        chunk_bits[c] = sum;
    }
    if (missing) {
        for (uint64_t k : tokens)
            if (index.find(k) == nullptr)
                throw incomplete_codebook("codebook: no entry for class " + std::to_string(k));
    }

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
        local.reserve(chunk_bits[c]);
        for (uint64_t i = t0; i < t1; ++i) local.append(*index.find(tokens[i]));
        detail::or_blit(dst, chunk_off[c], local.words().data(), local.size());
    }
    return out;
}

} // namespace kernels

} // namespace bcod
