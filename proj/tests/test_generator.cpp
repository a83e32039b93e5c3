#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "bcod/generator.hpp"
#include "helpers.hpp"

using bcod::BitVec;
using bcod::FlipReport;
using bcod::GeneratorSpec;
using bcod::Mode;
using bcod::SourceKind;

namespace {

GeneratorSpec spec_of(SourceKind kind, uint64_t bits, uint64_t seed = 0, double p = 0.5) {
    GeneratorSpec s;
    s.kind = kind;
    s.length_bits = bits;
    s.seed = seed;
    s.p = p;
    return s;
}

double binary_entropy(double p) { return -(p * std::log2(p) + (1 - p) * std::log2(1 - p)); }

double measured_ratio(const BitVec& v, Mode mode) {
    const bcod::Archive a = bcod::compress(v, mode);
    return double(a.payload_bits + a.residue_len) / double(v.size());
}

} // namespace

TEST_CASE("fixed sources") {
    CHECK(bcod::generate(spec_of(SourceKind::zeros, 8)).to_string() == "00000000");
    CHECK(bcod::generate(spec_of(SourceKind::ones, 5)).to_string() == "11111");
    CHECK(bcod::generate(spec_of(SourceKind::bernoulli, 4, 1, 1.0)).to_string() == "1111");
    CHECK(bcod::generate(spec_of(SourceKind::bernoulli, 4, 1, 0.0)).to_string() == "0000");
    CHECK(bcod::generate(spec_of(SourceKind::uniform, 0, 9)).empty());
}

TEST_CASE("uniform bits are balanced") {
    const BitVec v = bcod::generate(spec_of(SourceKind::uniform, 1'000'000, 42));
    uint64_t ones = 0;
    for (uint64_t w : v.words()) ones += uint64_t(std::popcount(w));
    const double frac = double(ones) / double(v.size());
    CHECK(frac >= 0.497);
    CHECK(frac <= 0.503);
}

TEST_CASE("bernoulli densities track p") {
    for (double p : {0.1, 0.8}) {
        const BitVec v = bcod::generate(spec_of(SourceKind::bernoulli, 500'000, 7, p));
        uint64_t ones = 0;
        for (uint64_t w : v.words()) ones += uint64_t(std::popcount(w));
        CHECK(std::abs(double(ones) / double(v.size()) - p) < 0.005);
    }
}

TEST_CASE("generation is deterministic in (kind, length, seed)") {
    const auto spec = spec_of(SourceKind::bernoulli, 200'001, 99, 0.3);
    CHECK(bcod::generate(spec) == bcod::generate(spec));
    CHECK(bcod::generate(spec) == bcod::serial::generate(spec));

    auto other = spec;
    other.seed = 100;
    CHECK(bcod::generate(spec) != bcod::generate(other));
}

TEST_CASE("file source reads whole bytes") {
    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "bcod_gen_test.bin";
    {
        std::ofstream out(path, std::ios::binary);
        out.write("\xA0\xFF", 2);
    }
    GeneratorSpec s;
    s.kind = SourceKind::file;
    s.path = path.string();
    CHECK(bcod::generate(s).to_string() == "1010000011111111");
    fs::remove(path);

    s.path = (fs::temp_directory_path() / "bcod_gen_missing.bin").string();
    CHECK_THROWS_AS((void)bcod::generate(s), bcod::io_error);
}

TEST_CASE("oracle fixed points") {
    CHECK(bcod::expected_ratio_oracle(0.5, Mode::huffman) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(bcod::expected_ratio_oracle(0.5, Mode::symmetric) == doctest::Approx(1.0));
    CHECK(bcod::expected_ratio_oracle(0.5, Mode::shannon) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(bcod::expected_ratio_oracle(0.37, Mode::raw) == doctest::Approx(1.0));

    const double r = bcod::expected_ratio_oracle(0.8, Mode::huffman);
    CHECK(r > 0.72);
    CHECK(r < 1.0);

    CHECK_THROWS_AS((void)bcod::expected_ratio_oracle(0.0, Mode::huffman), bcod::domain_error);
    CHECK_THROWS_AS((void)bcod::expected_ratio_oracle(1.0, Mode::huffman), bcod::domain_error);
}

TEST_CASE("measured huffman ratios match the oracle and respect entropy") {
    for (double p : {0.6, 0.7, 0.8, 0.9}) {
        const BitVec v = bcod::generate(spec_of(SourceKind::bernoulli, 1'000'000, 5, p));
        const double measured = measured_ratio(v, Mode::huffman);
        const double expected = bcod::expected_ratio_oracle(p, Mode::huffman);
        CHECK(std::abs(measured - expected) <= 0.02);
        CHECK(measured >= binary_entropy(p));
    }
}

TEST_CASE("flip with no corruption recovers everything") {
    const BitVec v = bcod::generate(spec_of(SourceKind::bernoulli, 4096, 11, 0.7));
    const FlipReport rep = bcod::flip_experiment(v, {});
    CHECK(rep.total_tokens == bcod::tokenize(v).tokens.size());
    CHECK(rep.forward_recovered == rep.total_tokens);
    CHECK(rep.backward_recovered == rep.total_tokens);
    CHECK(rep.bidirectional_recovered == rep.total_tokens);
    CHECK(rep.damage_window_bits == 0);
}

TEST_CASE("flip in a run of 0-codewords damages one token") {
    // 64 zeros tokenize to 64 k=1 tokens, all coded "0"; flipping payload
    // bit 10 breaks exactly that token.
    const BitVec v = BitVec::zeros(64);
    const uint64_t positions[] = {10};
    const FlipReport rep = bcod::flip_experiment(v, positions);
    CHECK(rep.total_tokens == 64);
    CHECK(rep.payload_bits == 64);
    CHECK(rep.forward_recovered == 10);
    CHECK(rep.backward_recovered == 53);
    CHECK(rep.bidirectional_recovered == 63);
    CHECK(rep.damage_window_bits == 1);
}

TEST_CASE("flip positions must be inside the payload") {
    const BitVec v = BitVec::zeros(16);
    const uint64_t positions[] = {16};
    CHECK_THROWS_AS((void)bcod::flip_experiment(v, positions), bcod::domain_error);

    // all-ones input encodes to an empty payload
    const BitVec ones = BitVec::ones(9);
    const FlipReport rep = bcod::flip_experiment(ones, {});
    CHECK(rep.total_tokens == 0);
    CHECK(rep.payload_bits == 0);
    const uint64_t bad[] = {0};
    CHECK_THROWS_AS((void)bcod::flip_experiment(ones, bad), bcod::domain_error);
}

TEST_CASE("flip report invariants over 1000 random single flips") {
    const BitVec v = bcod::generate(spec_of(SourceKind::bernoulli, 2048, 13, 0.65));
    const uint64_t payload_bits = bcod::flip_experiment(v, {}).payload_bits;
    REQUIRE(payload_bits > 0);
    bcod::Xorshift64Star rng{0xBADC0FFEE0DDF00Dull};
    for (int trial = 0; trial < 1000; ++trial) {
        const uint64_t pos[] = {rng.next() % payload_bits};
        const FlipReport rep = bcod::flip_experiment(v, pos);
        CHECK(rep.forward_recovered <= rep.total_tokens);
        CHECK(rep.backward_recovered <= rep.total_tokens);
        CHECK(rep.bidirectional_recovered <= rep.total_tokens);
        CHECK(rep.bidirectional_recovered >=
              std::max(rep.forward_recovered, rep.backward_recovered));
        CHECK(rep.damage_window_bits <= rep.payload_bits);
    }
}
