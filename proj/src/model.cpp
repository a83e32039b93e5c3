#include "bcod/model.hpp"

#include <algorithm>
#include <cmath>

namespace bcod {

namespace {
constexpr uint64_t kChunkTokensDefault = uint64_t{1} << 17;
constexpr uint64_t kSmallClassLimit = 128; // per-thread array fast path
} // namespace

FreqTable FreqTable::from_counts(std::map<uint64_t, uint64_t> counts) {
    FreqTable t;
    for (const auto& [k, n] : counts) {
        if (k == 0) throw domain_error("frequency table: class 0");
        if (n == 0) throw domain_error("frequency table: zero count entry");
        t.total_ += n;
    }
    t.counts_ = std::move(counts);
    return t;
}

void FreqTable::add(uint64_t k, uint64_t n) {
    if (k == 0) throw domain_error("frequency table: class 0");
    if (n == 0) return;
    counts_[k] += n;
    total_ += n;
}

uint64_t FreqTable::count_of(uint64_t k) const {
    auto it = counts_.find(k);
    return it == counts_.end() ? 0 : it->second;
}

double FreqTable::probability(uint64_t k) const {
    if (total_ == 0) throw undefined_statistic("frequency table: empty");
    return double(count_of(k)) / double(total_);
}

FreqTable count(const TokenStream& s) { return kernels::count(s.tokens, kChunkTokensDefault); }

double entropy_bits_per_token(const FreqTable& t) {
    if (t.empty()) throw undefined_statistic("entropy: empty frequency table");
    double h = 0.0;
    for (const auto& [k, n] : t.counts()) {
        const double p = double(n) / double(t.total());
        h -= p * std::log2(p);
    }
    return std::max(h, 0.0);
}

uint64_t identity_payload_bits(const FreqTable& t) {
    uint64_t bits = 0;
    for (const auto& [k, n] : t.counts()) bits += n * k;
    return bits;
}

std::vector<std::pair<uint64_t, uint64_t>> ranked_classes(const FreqTable& t) {
    std::vector<std::pair<uint64_t, uint64_t>> v(t.counts().begin(), t.counts().end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return v;
}

namespace serial {

FreqTable count(const TokenStream& s) {
    FreqTable t;
    for (uint64_t k : s.tokens) t.add(k);
    return t;
}

} // namespace serial

namespace kernels {

FreqTable count(std::span<const uint64_t> tokens, uint64_t chunk_tokens) {
    const uint64_t n = tokens.size();
    if (chunk_tokens == 0) chunk_tokens = 1;
    const uint64_t nc = n == 0 ? 0 : (n + chunk_tokens - 1) / chunk_tokens;

    struct Local {
        std::vector<uint64_t> small;
        std::map<uint64_t, uint64_t> large;
    };
    std::vector<Local> locals(nc);
    int bad_class = 0;

#pragma omp parallel for schedule(static) reduction(| : bad_class) if (nc > 1)
    for (int64_t c = 0; c < int64_t(nc); ++c) {
        const uint64_t t0 = uint64_t(c) * chunk_tokens;
        const uint64_t t1 = std::min(n, t0 + chunk_tokens);
        Local& loc = locals[c];
        loc.small.assign(kSmallClassLimit + 1, 0);
        for (uint64_t i = t0; i < t1; ++i) {
            const uint64_t k = tokens[i];
            if (k == 0) {
                bad_class |= 1;
            } else if (k <= kSmallClassLimit) {
                ++loc.small[k];
            } else {
                ++loc.large[k];
            }
        }
    }
    if (bad_class) throw domain_error("token class must be positive");

    FreqTable t;
    for (const Local& loc : locals) {
        for (uint64_t k = 1; k <= kSmallClassLimit && k < loc.small.size(); ++k)
            if (loc.small[k]) t.add(k, loc.small[k]);
        for (const auto& [k, cnt] : loc.large) t.add(k, cnt);
    }
    return t;
}

} // namespace kernels

} // namespace bcod
