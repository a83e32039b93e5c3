#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "bcod/tokenizer.hpp"
#include "helpers.hpp"

using bcod::BitVec;
using bcod::TokenStream;

TEST_CASE("greedy parse") {
    const TokenStream s = bcod::tokenize(BitVec::from_string("1011100"));
    CHECK(s.tokens == std::vector<uint64_t>{2, 4, 1});
    CHECK(s.residue == 0);

    const TokenStream zeros = bcod::tokenize(BitVec::from_string("0000"));
    CHECK(zeros.tokens == std::vector<uint64_t>{1, 1, 1, 1});
    CHECK(zeros.residue == 0);

    const TokenStream ones = bcod::tokenize(BitVec::from_string("111"));
    CHECK(ones.tokens.empty());
    CHECK(ones.residue == 3);

    const TokenStream empty = bcod::tokenize(BitVec{});
    CHECK(empty.tokens.empty());
    CHECK(empty.residue == 0);
}

TEST_CASE("detokenize") {
    CHECK(bcod::detokenize({{2, 4, 1}, 0}).to_string() == "1011100");
    CHECK(bcod::detokenize({{}, 5}).to_string() == "11111");
    CHECK(bcod::detokenize({{1}, 0}).to_string() == "0");
    CHECK_THROWS_AS((void)bcod::detokenize({{2, 0}, 0}), bcod::domain_error);
    CHECK_THROWS_AS((void)bcod::serial::detokenize({{0}, 0}), bcod::domain_error);
}

TEST_CASE("token_bits pattern") {
    CHECK(bcod::token_bits(1).to_string() == "0");
    CHECK(bcod::token_bits(2).to_string() == "10");
    CHECK(bcod::token_bits(5).to_string() == "11110");
    CHECK_THROWS_AS((void)bcod::token_bits(0), bcod::domain_error);
    for (uint64_t k = 1; k <= 40; ++k) {
        const BitVec b = bcod::token_bits(k);
        CHECK(b.size() == k);
        CHECK(b.bit(k - 1) == false);
        for (uint64_t i = 0; i + 1 < k; ++i) CHECK(b.bit(i) == true);
    }
}

TEST_CASE("round trip, exhaustive up to 14 bits") {
    for (uint64_t len = 0; len <= 14; ++len) {
        for (uint64_t value = 0; value < (uint64_t{1} << len); ++value) {
            BitVec v;
            for (uint64_t i = 0; i < len; ++i) v.push_back((value >> (len - 1 - i)) & 1);
            const TokenStream s = bcod::tokenize(v);
            CHECK(bcod::detokenize(s) == v);
            CHECK(s == bcod::serial::tokenize(v));

            uint64_t total = s.residue;
            for (uint64_t k : s.tokens) total += k;
            CHECK(total == len);
        }
    }
}

TEST_CASE("round trip, randomized") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<uint64_t> lens(0, 20000);
    for (double density : {0.05, 0.5, 0.95}) {
        for (int trial = 0; trial < 30; ++trial) {
            const BitVec v = testutil::random_bits(rng, lens(rng), density);
            const TokenStream s = bcod::tokenize(v);
            CHECK(s == bcod::serial::tokenize(v));
            CHECK(bcod::detokenize(s) == v);

            uint64_t total = s.residue;
            for (uint64_t k : s.tokens) total += k;
            CHECK(total == v.size());
        }
    }
}

TEST_CASE("distinct streams produce distinct bit vectors") {
    // Enumerate every token stream whose total bit length is at most 10 and
    // check detokenizations are pairwise distinct: the decomposition is a
    // bijection onto bit vectors, so each length L must contribute 2^L.
    std::vector<TokenStream> all;
    std::vector<TokenStream> frontier{{{}, 0}};
    const uint64_t max_bits = 10;
    // grow by appending token classes; residue is added at the end
    while (!frontier.empty()) {
        std::vector<TokenStream> next;
        for (const TokenStream& s : frontier) {
            uint64_t used = 0;
            for (uint64_t k : s.tokens) used += k;
            for (uint64_t res = 0; used + res <= max_bits; ++res) {
                TokenStream with = s;
                with.residue = res;
                all.push_back(with);
            }
            for (uint64_t k = 1; used + k <= max_bits; ++k) {
                TokenStream with = s;
                with.tokens.push_back(k);
                next.push_back(with);
            }
        }
        frontier = std::move(next);
    }

    std::set<std::string> images;
    std::vector<uint64_t> per_length(max_bits + 1, 0);
    for (const TokenStream& s : all) {
        const BitVec v = bcod::detokenize(s);
        CHECK(images.insert(v.to_string()).second);
        ++per_length[v.size()];
    }
    for (uint64_t len = 0; len <= max_bits; ++len) CHECK(per_length[len] == (uint64_t{1} << len));
}
