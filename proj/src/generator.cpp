#include "bcod/generator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>
#include <set>
#include <vector>

#include "bcod/detail/bits.hpp"
#include "bcod/model.hpp"
#include "bcod/tokenizer.hpp"

namespace bcod {

namespace {

uint64_t block_seed(uint64_t seed, uint64_t block) {
    Splitmix64 sm{seed + block * 0x9E3779B97F4A7C15ull};
    const uint64_t v = sm.next();
    return v ? v : 0x9E3779B97F4A7C15ull; // xorshift64* state must be nonzero
}

BitVec read_file_bits(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("generator: cannot read " + path);
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw io_error("generator: read failed on " + path);
    return BitVec::from_bytes(bytes, 8 * uint64_t(bytes.size()));
}

BitVec generate_random(const GeneratorSpec& spec, bool parallel) {
    const uint64_t len = spec.length_bits;
    BitVec out = BitVec::of_size(len);
    if (len == 0) return out;
    uint64_t* w = out.words().data();
    const uint64_t blocks = (len + kGeneratorBlockBits - 1) / kGeneratorBlockBits;

    const bool bern = spec.kind == SourceKind::bernoulli;
    // p is a double < 1, so p * 2^64 <= 2^64 - 2^11 and the cast is exact
    const uint64_t threshold = bern ? uint64_t(std::ldexp((long double)spec.p, 64)) : 0;

#pragma omp parallel for schedule(static) if (parallel && blocks > 1)
    for (int64_t b = 0; b < int64_t(blocks); ++b) {
        Xorshift64Star rng{block_seed(spec.seed, uint64_t(b))};
        const uint64_t bit0 = uint64_t(b) * kGeneratorBlockBits; // word-aligned
        const uint64_t nbits = std::min(len - bit0, kGeneratorBlockBits);
        const uint64_t w0 = bit0 / 64;
        const uint64_t full = nbits / 64;
        const uint64_t rem = nbits % 64;
        if (bern) {
            for (uint64_t j = 0; j < full; ++j) {
                uint64_t v = 0;
                for (int i = 0; i < 64; ++i)
                    v |= uint64_t(rng.next() < threshold) << (63 - i);
                w[w0 + j] = v;
            }
            if (rem) {
                uint64_t v = 0;
                for (uint64_t i = 0; i < rem; ++i)
                    v |= uint64_t(rng.next() < threshold) << (63 - i);
                w[w0 + full] = v;
            }
        } else {
            for (uint64_t j = 0; j < full; ++j) w[w0 + j] = rng.next();
            if (rem) w[w0 + full] = rng.next() & detail::high_mask(rem);
        }
    }
    return out;
}

BitVec generate_impl(const GeneratorSpec& spec, bool parallel) {
    switch (spec.kind) {
        case SourceKind::zeros:
            return BitVec::zeros(spec.length_bits);
        case SourceKind::ones:
            return BitVec::ones(spec.length_bits);
        case SourceKind::file:
            return read_file_bits(spec.path);
        case SourceKind::bernoulli:
            if (!(spec.p >= 0.0 && spec.p <= 1.0))
                throw domain_error("generator: bernoulli p outside [0, 1]");
            if (spec.p <= 0.0) return BitVec::zeros(spec.length_bits);
            if (spec.p >= 1.0) return BitVec::ones(spec.length_bits);
            return generate_random(spec, parallel);
        case SourceKind::uniform:
            return generate_random(spec, parallel);
    }
    throw domain_error("generator: unknown source kind");
}

// Huffman over real-valued weights, used only by the analytic oracle. Same
// tie rule as the integer builder: equal weights merge the node with the
// larger minimum class first.
std::vector<uint64_t> huffman_lengths_real(const std::vector<long double>& q) {
    const size_t m = q.size();
    std::vector<uint64_t> lengths(m, 0);
    if (m == 0) return lengths;
    if (m == 1) {
        lengths[0] = 1;
        return lengths;
    }
    struct Node {
        long double w;
        uint64_t min_k;
        int32_t left = -1;
        int32_t right = -1;
    };
    std::vector<Node> arena;
    arena.reserve(2 * m);
    for (size_t i = 0; i < m; ++i) arena.push_back({q[i], uint64_t(i + 1), -1, -1});

    auto after = [&arena](int32_t a, int32_t b) {
        if (arena[a].w != arena[b].w) return arena[a].w > arena[b].w;
        return arena[a].min_k < arena[b].min_k;
    };
    std::priority_queue<int32_t, std::vector<int32_t>, decltype(after)> pq(after);
    for (int32_t i = 0; i < int32_t(m); ++i) pq.push(i);
    while (pq.size() > 1) {
        const int32_t a = pq.top();
        pq.pop();
        const int32_t b = pq.top();
        pq.pop();
        arena.push_back({arena[a].w + arena[b].w, std::min(arena[a].min_k, arena[b].min_k), a, b});
        pq.push(int32_t(arena.size() - 1));
    }
    std::vector<std::pair<int32_t, uint64_t>> stack{{pq.top(), 0}};
    while (!stack.empty()) {
        auto [idx, depth] = stack.back();
        stack.pop_back();
        const Node& nd = arena[idx];
        if (nd.left < 0) {
            lengths[idx] = depth;
        } else {
            stack.emplace_back(nd.left, depth + 1);
            stack.emplace_back(nd.right, depth + 1);
        }
    }
    return lengths;
}

struct ParsedToken {
    uint64_t cls = 0;
    uint64_t start = 0; // payload bit span [start, end), forward coordinates
    uint64_t end = 0;
};

// Greedy resynchronizing parse: a walk starting at reading offset s that
// hits a dead trie edge restarts at s + 1; a walk that runs off the end
// discards the partial token. Used only by the flip experiment — library
// decode stays strict.
std::vector<ParsedToken> resync_parse(const BitVec& p, const CodeBook& b, bool backward) {
    struct Node {
        int32_t child[2] = {-1, -1};
        int64_t leaf = -1;
    };
    std::vector<Node> nodes{1};
    std::vector<uint64_t> leaf_class;
    for (const auto& [k, code] : b.entries()) {
        int32_t cur = 0;
        for (uint64_t j = 0; j < code.size(); ++j) {
            const bool bit = code.bit(backward ? code.size() - 1 - j : j);
            int32_t next = nodes[cur].child[bit];
            if (next < 0) {
                next = int32_t(nodes.size());
                nodes[cur].child[bit] = next;
                nodes.push_back({});
            }
            cur = next;
        }
        nodes[cur].leaf = int64_t(leaf_class.size());
        leaf_class.push_back(k);
    }

    std::vector<ParsedToken> out;
    const uint64_t n = p.size();
    uint64_t s = 0;
    while (s < n) {
        int32_t cur = 0;
        uint64_t i = s;
        bool emitted = false;
        for (; i < n; ++i) {
            const bool bit = backward ? p.bit(n - 1 - i) : p.bit(i);
            cur = nodes[cur].child[bit];
            if (cur < 0) break;
            if (nodes[cur].leaf >= 0) {
                ParsedToken tok;
                tok.cls = leaf_class[nodes[cur].leaf];
                tok.start = backward ? n - (i + 1) : s;
                tok.end = backward ? n - s : i + 1;
                out.push_back(tok);
                emitted = true;
                break;
            }
        }
        if (emitted)
            s = i + 1;
        else if (i >= n)
            break;
        else
            s += 1;
    }
    return out;
}

} // namespace

BitVec generate(const GeneratorSpec& spec) { return generate_impl(spec, true); }

namespace serial {
BitVec generate(const GeneratorSpec& spec) { return generate_impl(spec, false); }
} // namespace serial

double expected_ratio_oracle(double p, Mode mode) {
    if (!(p > 0.0 && p < 1.0)) throw domain_error("oracle: p must lie in (0, 1)");
    if (mode == Mode::raw) return 1.0;

    const long double cutoff = std::ldexp(1.0L, -40);
    std::vector<long double> q;
    long double cur = 1.0L - (long double)p;
    while (q.empty() || cur >= cutoff) {
        q.push_back(cur);
        cur *= (long double)p;
        if (q.size() >= 2'000'000) throw domain_error("oracle: p too close to 1");
    }
    long double mass = 0.0L;
    for (long double v : q) mass += v;
    for (long double& v : q) v /= mass;

    std::vector<uint64_t> lengths(q.size(), 0);
    switch (mode) {
        case Mode::huffman:
            lengths = huffman_lengths_real(q);
            break;
        case Mode::shannon:
            for (size_t i = 0; i < q.size(); ++i)
                lengths[i] = std::max<uint64_t>(1, uint64_t(std::ceil(-std::log2((double)q[i]))));
            break;
        case Mode::symmetric:
            // geometric probabilities fall strictly with k, so rank == class
            for (size_t i = 0; i < q.size(); ++i) lengths[i] = i + 1;
            break;
        case Mode::raw:
            break;
    }

    long double coded = 0.0L, source = 0.0L;
    for (size_t i = 0; i < q.size(); ++i) {
        coded += q[i] * (long double)lengths[i];
        source += q[i] * (long double)(i + 1);
    }
    return double(coded / source);
}

FlipReport flip_experiment(const BitVec& v, std::span<const uint64_t> flip_positions) {
    const TokenStream truth = tokenize(v);
    const FreqTable t = count(truth);

    FlipReport rep;
    rep.total_tokens = truth.tokens.size();
    if (t.empty()) {
        if (!flip_positions.empty()) throw domain_error("flip: position outside payload");
        return rep;
    }

    const CodeBook book = build_symmetric(t);
    const BitVec payload = encode(truth, book);
    rep.payload_bits = payload.size();

    std::vector<uint64_t> starts(truth.tokens.size() + 1, 0);
    for (size_t i = 0; i < truth.tokens.size(); ++i)
        starts[i + 1] = starts[i] + book.codeword(truth.tokens[i]).size();

    BitVec corrupted = payload;
    const std::set<uint64_t> uniq(flip_positions.begin(), flip_positions.end());
    for (uint64_t pos : uniq) {
        if (pos >= payload.size()) throw domain_error("flip: position outside payload");
        corrupted.flip_bit(pos);
    }

    const auto fwd = resync_parse(corrupted, book, false);
    const auto bwd = resync_parse(corrupted, book, true);

    const uint64_t total = rep.total_tokens;
    uint64_t f = 0;
    while (f < total && f < fwd.size() && fwd[f].cls == truth.tokens[f] &&
           fwd[f].start == starts[f] && fwd[f].end == starts[f + 1])
        ++f;
    uint64_t b = 0;
    while (b < total && b < bwd.size() && bwd[b].cls == truth.tokens[total - 1 - b] &&
           bwd[b].start == starts[total - 1 - b] && bwd[b].end == starts[total - b])
        ++b;

    rep.forward_recovered = f;
    rep.backward_recovered = b;
    rep.bidirectional_recovered = std::min(total, f + b);
    rep.damage_window_bits = f + b >= total ? 0 : starts[total - b] - starts[f];
    return rep;
}

} // namespace bcod
